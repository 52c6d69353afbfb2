#include "anysyn/resyn.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <unordered_set>

namespace anysyn
{

/* ------------------------------------------------------------------ */
/* forest                                                               */
/* ------------------------------------------------------------------ */

std::vector<uint32_t> SolutionForest::cone_gates( ForestRef ref ) const
{
  std::vector<uint32_t> cone;
  if ( !ref.is_gate() )
  {
    return cone;
  }
  std::vector<uint32_t> stack{ ref.index() };
  std::vector<bool> seen( gates.size(), false );
  seen[ref.index()] = true;
  while ( !stack.empty() )
  {
    uint32_t g = stack.back();
    stack.pop_back();
    cone.push_back( g );
    for ( auto const& r : { gates[g].a, gates[g].b } )
    {
      if ( r.is_gate() && !seen[r.index()] )
      {
        seen[r.index()] = true;
        stack.push_back( r.index() );
      }
    }
  }
  std::sort( cone.begin(), cone.end() );
  return cone;
}

namespace
{

void encode_ref( SolutionForest const& f, ForestRef r, std::string& out )
{
  if ( r.is_gate() )
  {
    auto const& g = f.gates[r.index()];
    out += g.kind == NodeKind::And ? "a(" : "x(";
    encode_ref( f, g.a, out );
    out += ',';
    encode_ref( f, g.b, out );
    out += ')';
  }
  else
  {
    out += 'd';
    out += std::to_string( r.index() );
  }
  if ( r.complemented() )
  {
    out += '!';
  }
}

} // namespace

std::string SolutionForest::encode_output( ForestRef ref ) const
{
  std::string s;
  encode_ref( *this, ref, s );
  return s;
}

std::string SolutionForest::encode() const
{
  std::string s;
  for ( auto const& g : gates )
  {
    s += g.kind == NodeKind::And ? "a " : "x ";
    s += std::to_string( g.a.raw );
    s += ' ';
    s += std::to_string( g.b.raw );
    s += '\n';
  }
  for ( auto const& o : outputs )
  {
    s += "o ";
    s += std::to_string( o.raw );
    s += '\n';
  }
  return s;
}

/* ------------------------------------------------------------------ */
/* divisor dedup and the XOR feasibility hash                           */
/* ------------------------------------------------------------------ */

std::vector<uint32_t> dedup_divisors( ResynProblem const& p )
{
  std::unordered_map<TruthTable, uint32_t, TruthTableHash> classes;
  std::vector<uint32_t> best;
  for ( uint32_t i = 0; i < p.divisor_tts.size(); ++i )
  {
    TruthTable canon = tt_canon( p.divisor_tts[i] );
    auto it = classes.find( canon );
    if ( it == classes.end() )
    {
      classes.emplace( std::move( canon ), uint32_t( best.size() ) );
      best.push_back( i );
    }
    else if ( p.prefer && p.prefer( i, best[it->second] ) )
    {
      best[it->second] = i;
    }
  }
  std::sort( best.begin(), best.end() );
  return best;
}

XorFeasible::XorFeasible( TruthTable const& f, std::vector<TruthTable> const& divisor_tts,
                          std::vector<uint32_t> const& kept )
    : f_( f )
{
  for ( uint32_t pos = 0; pos < kept.size(); ++pos )
  {
    map_[tt_canon( divisor_tts[kept[pos]] )].push_back( pos );
  }
}

/* ------------------------------------------------------------------ */
/* shared canonical forest construction                                 */
/* ------------------------------------------------------------------ */

ForestAccumulator::ForestAccumulator( TruthTable target )
    : target_( std::move( target ) ), not_target_( tt_not( target_ ) )
{
}

namespace
{

uint64_t cons_key( NodeKind kind, ForestRef a, ForestRef b )
{
  return ( uint64_t( a.raw ) << 33 ) | ( uint64_t( b.raw ) << 1 ) |
         uint64_t( kind == NodeKind::Xor );
}

} // namespace

std::optional<ForestRef> ForestAccumulator::add_gate( NodeKind kind, ForestRef a, ForestRef b,
                                                      TruthTable const& value )
{
  bool parity = false;
  if ( kind == NodeKind::Xor )
  {
    parity = a.complemented() ^ b.complemented();
    a = ForestRef{ a.raw & ~1u };
    b = ForestRef{ b.raw & ~1u };
  }
  if ( b.raw < a.raw )
  {
    std::swap( a, b );
  }
  if ( ( a.raw & ~1u ) == ( b.raw & ~1u ) )
  {
    return std::nullopt; /* collapses to a constant or an operand */
  }
  uint64_t key = cons_key( kind, a, b );
  if ( auto it = cons_.find( key ); it != cons_.end() )
  {
    return ForestRef::gate( it->second, parity );
  }
  if ( struct_hook && !a.is_gate() && !b.is_gate() )
  {
    HookResult hr = struct_hook( kind, a, b );
    if ( hr.action == StructHit::Prune )
    {
      return std::nullopt;
    }
    if ( hr.action == StructHit::Reuse )
    {
      return hr.reuse ^ parity;
    }
  }
  uint32_t idx = uint32_t( forest_.gates.size() );
  forest_.gates.push_back( ForestGate{ kind, a, b } );
  forest_.gate_tables.push_back( parity ? tt_not( value ) : value );
  cons_.emplace( key, idx );
  return ForestRef::gate( idx, parity );
}

void ForestAccumulator::emit( std::optional<ForestRef> ref, TruthTable const& value )
{
  if ( !ref )
  {
    return;
  }
  ForestRef out = *ref;
  if ( value == not_target_ )
  {
    out = !out;
  }
  else
  {
    assert( value == target_ );
  }
  if ( seen_outputs_.insert( out.raw ).second )
  {
    forest_.outputs.push_back( out );
  }
}

bool XorFeasible::feasible( TruthTable const& x ) const
{
  return map_.count( tt_canon( tt_xor( f_, x ) ) ) != 0;
}

std::vector<uint32_t> XorFeasible::partners( TruthTable const& need ) const
{
  auto it = map_.find( tt_canon( need ) );
  return it == map_.end() ? std::vector<uint32_t>{} : it->second;
}

/* ------------------------------------------------------------------ */
/* truth table helpers for the decompositions                          */
/* ------------------------------------------------------------------ */

namespace
{

constexpr uint64_t proj_masks[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

TruthTable cofactor( TruthTable const& t, uint32_t var, bool value )
{
  TruthTable r = t;
  if ( var < 6 )
  {
    uint32_t shift = 1u << var;
    for ( uint32_t w = 0; w < r.num_words(); ++w )
    {
      uint64_t x = t.words()[w];
      if ( value )
      {
        x &= proj_masks[var];
        x |= x >> shift;
      }
      else
      {
        x &= ~proj_masks[var];
        x |= x << shift;
      }
      r.words()[w] = x;
    }
    if ( t.num_vars() < 6 )
    {
      r = tt_and( r, tt_const( t.num_vars(), true ) );
    }
  }
  else
  {
    uint32_t period = 1u << ( var - 6 );
    for ( uint32_t w = 0; w < r.num_words(); ++w )
    {
      uint32_t src = value ? ( w | period ) : ( w & ~period );
      r.words()[w] = t.words()[src];
    }
  }
  return r;
}

bool depends_on( TruthTable const& t, uint32_t var )
{
  return cofactor( t, var, false ) != cofactor( t, var, true );
}

struct Cube
{
  uint32_t pos = 0, neg = 0;
  bool operator<( Cube const& o ) const
  {
    return std::pair{ pos, neg } < std::pair{ o.pos, o.neg };
  }
};

/* Minato-Morreale irredundant sum of products.  The specification is
 * complete, so the recursion starts with equal bounds.  Returns the
 * function covered by the cubes appended to `cover`. */
TruthTable isop_rec( TruthTable const& lower, TruthTable const& upper, uint32_t top_var,
                     std::vector<Cube>& cover )
{
  if ( lower.is_const0() )
  {
    return lower;
  }
  if ( upper.is_const1() )
  {
    cover.push_back( Cube{} );
    return upper;
  }
  uint32_t var = top_var;
  while ( var > 0 )
  {
    --var;
    if ( depends_on( lower, var ) || depends_on( upper, var ) )
    {
      break;
    }
  }

  TruthTable l0 = cofactor( lower, var, false ), l1 = cofactor( lower, var, true );
  TruthTable u0 = cofactor( upper, var, false ), u1 = cofactor( upper, var, true );

  size_t first0 = cover.size();
  TruthTable c0 = isop_rec( tt_and( l0, tt_not( u1 ) ), u0, var, cover );
  size_t first1 = cover.size();
  for ( size_t i = first0; i < first1; ++i )
  {
    cover[i].neg |= 1u << var;
  }
  TruthTable c1 = isop_rec( tt_and( l1, tt_not( u0 ) ), u1, var, cover );
  size_t first2 = cover.size();
  for ( size_t i = first1; i < first2; ++i )
  {
    cover[i].pos |= 1u << var;
  }

  TruthTable lnew0 = tt_and( l0, tt_not( c0 ) );
  TruthTable lnew1 = tt_and( l1, tt_not( c1 ) );
  TruthTable lnew = tt_not( tt_and( tt_not( lnew0 ), tt_not( lnew1 ) ) ); /* or */
  TruthTable c2 = isop_rec( lnew, tt_and( u0, u1 ), var, cover );

  TruthTable x = tt_var( lower.num_vars(), var );
  TruthTable covered = tt_not( tt_and( tt_not( tt_and( c0, tt_not( x ) ) ),
                                       tt_not( tt_and( c1, x ) ) ) );
  return tt_not( tt_and( tt_not( covered ), tt_not( c2 ) ) );
}

std::vector<Cube> isop( TruthTable const& f )
{
  std::vector<Cube> cover;
  TruthTable covered = isop_rec( f, f, f.num_vars(), cover );
  assert( covered == f );
  (void)covered;
  return cover;
}

/* positive-polarity Reed-Muller monomials (algebraic normal form) */
std::vector<uint32_t> pprm_terms( TruthTable const& f )
{
  uint64_t n = f.num_bits();
  std::vector<uint8_t> coef( n );
  for ( uint64_t i = 0; i < n; ++i )
  {
    coef[i] = f.get_bit( i );
  }
  for ( uint32_t v = 0; v < f.num_vars(); ++v )
  {
    uint64_t step = uint64_t( 1 ) << v;
    for ( uint64_t i = 0; i < n; ++i )
    {
      if ( i & step )
      {
        coef[i] ^= coef[i ^ step];
      }
    }
  }
  std::vector<uint32_t> terms;
  for ( uint64_t i = 0; i < n; ++i )
  {
    if ( coef[i] )
    {
      terms.push_back( uint32_t( i ) );
    }
  }
  return terms;
}

} // namespace

/* ------------------------------------------------------------------ */
/* the enumeration engine                                               */
/* ------------------------------------------------------------------ */

namespace
{

struct Literal
{
  uint32_t divisor; /* original divisor index */
  bool compl_;
  TruthTable tt;
};

class ForestBuilder
{
public:
  explicit ForestBuilder( ResynProblem const& p )
      : p_( p ), kept_( dedup_divisors( p ) ), not_target_( tt_not( p.target ) ),
        acc_( p.target )
  {
    if ( p_.struct_lookup )
    {
      acc_.struct_hook = [this]( NodeKind kind, ForestRef a, ForestRef b ) {
        Signal sa = p_.divisor_sigs[a.index()] ^ a.complemented();
        Signal sb = p_.divisor_sigs[b.index()] ^ b.complemented();
        StructHit hit = p_.struct_lookup( kind, sa, sb );
        ForestAccumulator::HookResult hr;
        hr.action = hit.kind;
        if ( hit.kind == StructHit::Reuse )
        {
          TruthTable va = a.complemented() ? tt_not( dtt( a.index() ) ) : dtt( a.index() );
          TruthTable vb = b.complemented() ? tt_not( dtt( b.index() ) ) : dtt( b.index() );
          TruthTable stored = kind == NodeKind::And ? tt_and( va, vb ) : tt_xor( va, vb );
          bool c = !( dtt( hit.divisor_index ) == stored );
          assert( c ? tt_not( dtt( hit.divisor_index ) ) == stored : true );
          hr.reuse = ForestRef::divisor( hit.divisor_index, c );
        }
        return hr;
      };
    }
  }

  SolutionForest run()
  {
    zero_gate();
    if ( p_.max_gates >= 1 )
    {
      one_gate_and();
      one_gate_xor();
    }
    if ( p_.max_gates >= 2 )
    {
      two_gate_and_top();
      two_gate_xor_top();
    }
    if ( p_.max_gates >= 3 )
    {
      three_gate_balanced();
      three_gate_chain_and_shared();
    }
    decompose_sop();
    decompose_esop();
    return acc_.take();
  }

private:
  TruthTable const& dtt( uint32_t orig ) const { return p_.divisor_tts[orig]; }

  static ForestRef lit_ref( Literal const& l )
  {
    return ForestRef::divisor( l.divisor, l.compl_ );
  }

  std::optional<ForestRef> add_gate( NodeKind kind, ForestRef a, ForestRef b,
                                     TruthTable const& value )
  {
    return acc_.add_gate( kind, a, b, value );
  }

  void emit( std::optional<ForestRef> ref, TruthTable const& value )
  {
    acc_.emit( ref, value );
  }

  /* ---- enumeration -------------------------------------------------- */

  std::vector<Literal> pruned_literals( TruthTable const& phi ) const
  {
    std::vector<Literal> lits;
    for ( auto orig : kept_ )
    {
      TruthTable const& t = dtt( orig );
      if ( implies( phi, t ) )
      {
        lits.push_back( Literal{ orig, false, t } );
      }
      TruthTable nt = tt_not( t );
      if ( implies( phi, nt ) )
      {
        lits.push_back( Literal{ orig, true, std::move( nt ) } );
      }
    }
    return lits;
  }

  void zero_gate()
  {
    for ( auto orig : kept_ )
    {
      if ( dtt( orig ) == p_.target || dtt( orig ) == not_target_ )
      {
        emit( ForestRef::divisor( orig, false ), dtt( orig ) );
      }
    }
  }

  void one_gate_and()
  {
    for ( auto const& phi : { p_.target, not_target_ } )
    {
      auto lits = pruned_literals( phi );
      for ( uint32_t i = 0; i < lits.size(); ++i )
      {
        for ( uint32_t j = i + 1; j < lits.size(); ++j )
        {
          if ( lits[i].divisor == lits[j].divisor )
          {
            continue;
          }
          TruthTable val = tt_and( lits[i].tt, lits[j].tt );
          if ( val == phi )
          {
            emit( add_gate( NodeKind::And, lit_ref( lits[i] ), lit_ref( lits[j] ), val ), val );
          }
        }
      }
    }
  }

  void one_gate_xor()
  {
    XorFeasible feas( p_.target, p_.divisor_tts, kept_ );
    for ( uint32_t i = 0; i < kept_.size(); ++i )
    {
      TruthTable need = tt_xor( p_.target, dtt( kept_[i] ) );
      for ( auto j : feas.partners( need ) )
      {
        if ( j <= i )
        {
          continue;
        }
        TruthTable val = tt_xor( dtt( kept_[i] ), dtt( kept_[j] ) );
        emit( add_gate( NodeKind::Xor, ForestRef::divisor( kept_[i] ),
                        ForestRef::divisor( kept_[j] ), val ),
              val );
      }
    }
  }

  void two_gate_and_top()
  {
    uint64_t steps = 0;
    std::vector<Literal> all_lits;
    for ( auto orig : kept_ )
    {
      all_lits.push_back( Literal{ orig, false, dtt( orig ) } );
      all_lits.push_back( Literal{ orig, true, tt_not( dtt( orig ) ) } );
    }
    for ( auto const& phi : { p_.target, not_target_ } )
    {
      auto lits = pruned_literals( phi );
      /* inner AND with either edge polarity: phi = x & (u & v)^c; for
       * the plain edge the implication prune holds on u and v as well */
      for ( uint32_t i = 0; i < all_lits.size(); ++i )
      {
        for ( uint32_t j = i + 1; j < all_lits.size(); ++j )
        {
          if ( all_lits[i].divisor == all_lits[j].divisor )
          {
            continue;
          }
          TruthTable w = tt_and( all_lits[i].tt, all_lits[j].tt );
          for ( bool mc : { false, true } )
          {
            if ( !mc && ( !implies( phi, all_lits[i].tt ) || !implies( phi, all_lits[j].tt ) ) )
            {
              continue;
            }
            TruthTable wv = mc ? tt_not( w ) : w;
            if ( !implies( phi, wv ) )
            {
              continue;
            }
            for ( uint32_t xi = 0; xi < lits.size(); ++xi )
            {
              if ( ++steps > p_.max_steps )
              {
                return;
              }
              TruthTable val = tt_and( wv, lits[xi].tt );
              if ( !( val == phi ) )
              {
                continue;
              }
              auto inner =
                  add_gate( NodeKind::And, lit_ref( all_lits[i] ), lit_ref( all_lits[j] ), w );
              if ( inner )
              {
                emit( add_gate( NodeKind::And, lit_ref( lits[xi] ), *inner ^ mc, val ), val );
              }
            }
          }
        }
      }
      /* inner XOR: phi = x & w with w a divisor pair XOR, either edge
       * polarity of the inner gate */
      for ( uint32_t i = 0; i < kept_.size(); ++i )
      {
        for ( uint32_t j = i + 1; j < kept_.size(); ++j )
        {
          TruthTable w = tt_xor( dtt( kept_[i] ), dtt( kept_[j] ) );
          for ( bool c : { false, true } )
          {
            TruthTable wc = c ? tt_not( w ) : w;
            if ( !implies( phi, wc ) )
            {
              continue;
            }
            for ( uint32_t xi = 0; xi < lits.size(); ++xi )
            {
              if ( ++steps > p_.max_steps )
              {
                return;
              }
              TruthTable val = tt_and( wc, lits[xi].tt );
              if ( !( val == phi ) )
              {
                continue;
              }
              auto inner = add_gate( NodeKind::Xor, ForestRef::divisor( kept_[i] ),
                                     ForestRef::divisor( kept_[j] ), w );
              if ( inner )
              {
                emit( add_gate( NodeKind::And, lit_ref( lits[xi] ), *inner ^ c, val ), val );
              }
            }
          }
        }
      }
    }
  }

  void two_gate_xor_top()
  {
    uint64_t steps = 0;
    for ( uint32_t xi = 0; xi < kept_.size(); ++xi )
    {
      TruthTable psi = tt_xor( p_.target, dtt( kept_[xi] ) );
      /* inner AND realizing psi or its complement */
      for ( auto const& phi2 : { psi, tt_not( psi ) } )
      {
        auto lits = pruned_literals( phi2 );
        for ( uint32_t i = 0; i < lits.size(); ++i )
        {
          for ( uint32_t j = i + 1; j < lits.size(); ++j )
          {
            if ( lits[i].divisor == lits[j].divisor )
            {
              continue;
            }
            if ( ++steps > p_.max_steps )
            {
              return;
            }
            if ( !( tt_and( lits[i].tt, lits[j].tt ) == phi2 ) )
            {
              continue;
            }
            auto inner = add_gate( NodeKind::And, lit_ref( lits[i] ), lit_ref( lits[j] ), phi2 );
            if ( inner )
            {
              TruthTable val = tt_xor( dtt( kept_[xi] ), phi2 );
              emit( add_gate( NodeKind::Xor, ForestRef::divisor( kept_[xi] ), *inner, val ), val );
            }
          }
        }
      }
      /* inner XOR: three-input parity via the feasibility hash */
      XorFeasible feas( psi, p_.divisor_tts, kept_ );
      for ( uint32_t i = 0; i < kept_.size(); ++i )
      {
        TruthTable need = tt_xor( psi, dtt( kept_[i] ) );
        for ( auto j : feas.partners( need ) )
        {
          if ( j <= i )
          {
            continue;
          }
          if ( ++steps > p_.max_steps )
          {
            return;
          }
          TruthTable w = tt_xor( dtt( kept_[i] ), dtt( kept_[j] ) );
          auto inner = add_gate( NodeKind::Xor, ForestRef::divisor( kept_[i] ),
                                 ForestRef::divisor( kept_[j] ), w );
          if ( inner )
          {
            TruthTable val = tt_xor( dtt( kept_[xi] ), w );
            emit( add_gate( NodeKind::Xor, ForestRef::divisor( kept_[xi] ), *inner, val ), val );
          }
        }
      }
    }
  }

  /* descriptor of a one-gate circuit, used by the three-gate shapes */
  struct OneGate
  {
    NodeKind kind;
    Literal a, b; /* XOR operands are stored uncomplemented */
    TruthTable tt;
  };

  std::vector<OneGate> all_one_gates( uint64_t cap ) const
  {
    std::vector<OneGate> out;
    for ( uint32_t i = 0; i < kept_.size() && out.size() < cap; ++i )
    {
      for ( uint32_t j = i + 1; j < kept_.size() && out.size() < cap; ++j )
      {
        TruthTable const& ti = dtt( kept_[i] );
        TruthTable const& tj = dtt( kept_[j] );
        for ( bool ci : { false, true } )
        {
          for ( bool cj : { false, true } )
          {
            TruthTable a = ci ? tt_not( ti ) : ti;
            TruthTable b = cj ? tt_not( tj ) : tj;
            out.push_back( OneGate{ NodeKind::And,
                                    Literal{ kept_[i], ci, a },
                                    Literal{ kept_[j], cj, b },
                                    tt_and( a, b ) } );
          }
        }
        out.push_back( OneGate{ NodeKind::Xor,
                                Literal{ kept_[i], false, ti },
                                Literal{ kept_[j], false, tj },
                                tt_xor( ti, tj ) } );
      }
    }
    return out;
  }

  std::optional<ForestRef> materialize_one_gate( OneGate const& g )
  {
    return add_gate( g.kind, lit_ref( g.a ), lit_ref( g.b ), g.tt );
  }

  static bool same_operand( ForestRef a, ForestRef b )
  {
    return ( a.raw & ~1u ) == ( b.raw & ~1u );
  }

  void three_gate_balanced()
  {
    auto ones = all_one_gates( p_.max_steps );
    uint64_t steps = 0;

    /* XOR top via a hash of one-gate values */
    std::unordered_map<TruthTable, std::vector<uint32_t>, TruthTableHash> by_value;
    for ( uint32_t i = 0; i < ones.size(); ++i )
    {
      by_value[tt_canon( ones[i].tt )].push_back( i );
    }
    for ( uint32_t i = 0; i < ones.size(); ++i )
    {
      TruthTable need = tt_xor( p_.target, ones[i].tt );
      auto it = by_value.find( tt_canon( need ) );
      if ( it == by_value.end() )
      {
        continue;
      }
      for ( auto j : it->second )
      {
        if ( j <= i )
        {
          continue;
        }
        if ( ++steps > p_.max_steps )
        {
          return;
        }
        TruthTable val = tt_xor( ones[i].tt, ones[j].tt );
        if ( !( val == p_.target ) && !( val == not_target_ ) )
        {
          continue;
        }
        auto g1 = materialize_one_gate( ones[i] );
        auto g2 = materialize_one_gate( ones[j] );
        if ( g1 && g2 && !same_operand( *g1, *g2 ) )
        {
          emit( add_gate( NodeKind::Xor, *g1, *g2, val ), val );
        }
      }
    }

    /* AND top with implication-pruned sides, both edge polarities */
    for ( auto const& phi : { p_.target, not_target_ } )
    {
      std::vector<std::pair<uint32_t, bool>> sides;
      for ( uint32_t i = 0; i < ones.size(); ++i )
      {
        for ( bool c : { false, true } )
        {
          if ( implies( phi, c ? tt_not( ones[i].tt ) : ones[i].tt ) )
          {
            sides.push_back( { i, c } );
          }
        }
      }
      for ( uint32_t a = 0; a < sides.size(); ++a )
      {
        TruthTable ta = sides[a].second ? tt_not( ones[sides[a].first].tt )
                                        : ones[sides[a].first].tt;
        for ( uint32_t b = a + 1; b < sides.size(); ++b )
        {
          if ( sides[a].first == sides[b].first )
          {
            continue;
          }
          if ( ++steps > p_.max_steps )
          {
            return;
          }
          TruthTable tb = sides[b].second ? tt_not( ones[sides[b].first].tt )
                                          : ones[sides[b].first].tt;
          TruthTable val = tt_and( ta, tb );
          if ( !( val == phi ) )
          {
            continue;
          }
          auto g1 = materialize_one_gate( ones[sides[a].first] );
          auto g2 = materialize_one_gate( ones[sides[b].first] );
          if ( g1 && g2 && !same_operand( *g1, *g2 ) )
          {
            emit( add_gate( NodeKind::And, *g1 ^ sides[a].second, *g2 ^ sides[b].second, val ),
                  val );
          }
        }
      }
    }
  }

  /* chains top(mid(low, c), x) and the shared shape top(g1(g2, c), g2),
   * driven by one enumeration of two-gate circuits */
  void three_gate_chain_and_shared()
  {
    auto ones = all_one_gates( p_.max_steps );
    uint64_t steps = 0;
    auto lits_t = pruned_literals( p_.target );
    auto lits_nt = pruned_literals( not_target_ );
    XorFeasible feas( p_.target, p_.divisor_tts, kept_ );

    for ( auto const& low : ones )
    {
      for ( uint32_t di = 0; di < kept_.size(); ++di )
      {
        for ( bool dc : { false, true } )
        {
          TruthTable cv = dc ? tt_not( dtt( kept_[di] ) ) : dtt( kept_[di] );
          for ( NodeKind mid_kind : { NodeKind::And, NodeKind::Xor } )
          {
            if ( mid_kind == NodeKind::Xor && dc )
            {
              continue; /* the parity is already covered by edge complements */
            }
            for ( bool low_c : { false, true } )
            {
              if ( mid_kind == NodeKind::Xor && low_c )
              {
                continue;
              }
              if ( ++steps > p_.max_steps )
              {
                return;
              }
              TruthTable lv = low_c ? tt_not( low.tt ) : low.tt;
              TruthTable w =
                  mid_kind == NodeKind::And ? tt_and( lv, cv ) : tt_xor( lv, cv );

              auto make_mid = [&]() -> std::optional<ForestRef> {
                auto lref = materialize_one_gate( low );
                if ( !lref )
                {
                  return std::nullopt;
                }
                return add_gate( mid_kind, *lref ^ low_c,
                                 ForestRef::divisor( kept_[di], dc ), w );
              };

              /* AND tops: phi = x & (w ^ mc) */
              for ( bool mc : { false, true } )
              {
                TruthTable wv = mc ? tt_not( w ) : w;
                for ( auto* lits : { &lits_t, &lits_nt } )
                {
                  TruthTable const& phi = lits == &lits_t ? p_.target : not_target_;
                  if ( !implies( phi, wv ) )
                  {
                    continue;
                  }
                  for ( auto const& x : *lits )
                  {
                    if ( ++steps > p_.max_steps )
                    {
                      return;
                    }
                    TruthTable val = tt_and( wv, x.tt );
                    if ( !( val == phi ) )
                    {
                      continue;
                    }
                    auto mid = make_mid();
                    if ( !mid || same_operand( *mid, lit_ref( x ) ) )
                    {
                      continue;
                    }
                    emit( add_gate( NodeKind::And, lit_ref( x ), *mid ^ mc, val ), val );
                  }
                }
              }

              /* XOR tops: target = x ^ w for some divisor x, found by the
               * feasibility hash */
              for ( auto pos : feas.partners( tt_xor( p_.target, w ) ) )
              {
                if ( ++steps > p_.max_steps )
                {
                  return;
                }
                uint32_t xd = kept_[pos];
                TruthTable val = tt_xor( dtt( xd ), w );
                auto mid = make_mid();
                if ( !mid || same_operand( *mid, ForestRef::divisor( xd ) ) )
                {
                  continue;
                }
                emit( add_gate( NodeKind::Xor, ForestRef::divisor( xd ), *mid, val ), val );
              }

              /* shared tops: top(mid, low) where low feeds both */
              for ( NodeKind ktop : { NodeKind::And, NodeKind::Xor } )
              {
                for ( bool mc : { false, true } )
                {
                  if ( ktop == NodeKind::Xor && mc )
                  {
                    continue;
                  }
                  for ( bool lc2 : { false, true } )
                  {
                    if ( ktop == NodeKind::Xor && lc2 )
                    {
                      continue;
                    }
                    if ( ++steps > p_.max_steps )
                    {
                      return;
                    }
                    TruthTable a = mc ? tt_not( w ) : w;
                    TruthTable b = lc2 ? tt_not( low.tt ) : low.tt;
                    TruthTable val = ktop == NodeKind::And ? tt_and( a, b ) : tt_xor( a, b );
                    if ( !( val == p_.target ) && !( val == not_target_ ) )
                    {
                      continue;
                    }
                    if ( a == val || b == val )
                    {
                      continue; /* a smaller shape covers it */
                    }
                    auto mid = make_mid();
                    auto lref = materialize_one_gate( low );
                    if ( !mid || !lref || same_operand( *mid, *lref ) )
                    {
                      continue;
                    }
                    emit( add_gate( ktop, *mid ^ mc, *lref ^ lc2, val ), val );
                  }
                }
              }
            }
          }
        }
      }
    }
  }

  /* ---- deterministic decompositions -------------------------------- */

  bool leaves_available() const
  {
    if ( p_.leaf_divisor.empty() || p_.target.num_vars() > 12 )
    {
      return false;
    }
    for ( uint32_t v = 0; v < p_.target.num_vars(); ++v )
    {
      if ( depends_on( p_.target, v ) &&
           ( v >= p_.leaf_divisor.size() || p_.leaf_divisor[v] < 0 ) )
      {
        return false;
      }
    }
    return true;
  }

  ForestRef leaf_ref( uint32_t var, bool compl_ ) const
  {
    return ForestRef::divisor( uint32_t( p_.leaf_divisor[var] ), compl_ );
  }

  void sort_operands( std::vector<std::pair<ForestRef, TruthTable>>& ops ) const
  {
    std::stable_sort( ops.begin(), ops.end(),
                      [&]( auto const& a, auto const& b ) {
                        if ( p_.prefer && !a.first.is_gate() && !b.first.is_gate() )
                        {
                          if ( p_.prefer( a.first.index(), b.first.index() ) )
                          {
                            return true;
                          }
                          if ( p_.prefer( b.first.index(), a.first.index() ) )
                          {
                            return false;
                          }
                        }
                        return a.first.raw < b.first.raw;
                      } );
  }

  /* balanced tree over sorted operands: pair adjacent, repeat */
  std::optional<std::pair<ForestRef, TruthTable>> balanced_tree(
      NodeKind kind, std::vector<std::pair<ForestRef, TruthTable>> ops )
  {
    if ( ops.empty() )
    {
      return std::nullopt;
    }
    while ( ops.size() > 1 )
    {
      std::vector<std::pair<ForestRef, TruthTable>> next;
      for ( size_t i = 0; i + 1 < ops.size(); i += 2 )
      {
        TruthTable val = kind == NodeKind::And ? tt_and( ops[i].second, ops[i + 1].second )
                                               : tt_xor( ops[i].second, ops[i + 1].second );
        auto r = add_gate( kind, ops[i].first, ops[i + 1].first, val );
        if ( !r )
        {
          return std::nullopt;
        }
        next.push_back( { *r, val } );
      }
      if ( ops.size() & 1 )
      {
        next.push_back( ops.back() );
      }
      ops = std::move( next );
    }
    return ops[0];
  }

  void decompose_sop()
  {
    if ( !leaves_available() || p_.target.is_const0() || p_.target.is_const1() )
    {
      return;
    }
    auto cubes = isop( p_.target );
    std::sort( cubes.begin(), cubes.end() );
    uint64_t gate_estimate = cubes.size() - 1;
    for ( auto const& c : cubes )
    {
      uint32_t n = uint32_t( std::popcount( c.pos | c.neg ) );
      if ( n == 0 )
      {
        return; /* constant cube; constants are handled by the caller */
      }
      gate_estimate += n - 1;
    }
    if ( gate_estimate > p_.max_gates_decomp )
    {
      return;
    }

    uint32_t const nv = p_.target.num_vars();
    std::vector<std::pair<ForestRef, TruthTable>> roots;
    for ( auto const& c : cubes )
    {
      std::vector<std::pair<ForestRef, TruthTable>> ops;
      for ( uint32_t v = 0; v < nv; ++v )
      {
        if ( c.pos & ( 1u << v ) )
        {
          ops.push_back( { leaf_ref( v, false ), tt_var( nv, v ) } );
        }
        else if ( c.neg & ( 1u << v ) )
        {
          ops.push_back( { leaf_ref( v, true ), tt_not( tt_var( nv, v ) ) } );
        }
      }
      sort_operands( ops );
      auto root = balanced_tree( NodeKind::And, std::move( ops ) );
      if ( !root )
      {
        return;
      }
      roots.push_back( *root );
    }
    /* OR of the cubes via De Morgan over free inverters */
    for ( auto& r : roots )
    {
      r.first = !r.first;
      r.second = tt_not( r.second );
    }
    sort_operands( roots );
    auto all = balanced_tree( NodeKind::And, std::move( roots ) );
    if ( !all )
    {
      return;
    }
    TruthTable val = tt_not( all->second );
    assert( val == p_.target );
    emit( !all->first, val );
  }

  void decompose_esop()
  {
    if ( !leaves_available() || p_.target.is_const0() || p_.target.is_const1() )
    {
      return;
    }
    auto terms = pprm_terms( p_.target );
    bool complement_out = false;
    uint64_t gate_estimate = 0;
    std::vector<uint32_t> monomials;
    for ( auto t : terms )
    {
      if ( t == 0 )
      {
        complement_out = true;
        continue;
      }
      monomials.push_back( t );
      gate_estimate += std::popcount( t ) - 1;
    }
    if ( monomials.empty() )
    {
      return;
    }
    gate_estimate += monomials.size() - 1;
    if ( gate_estimate > p_.max_gates_decomp )
    {
      return;
    }

    uint32_t const nv = p_.target.num_vars();
    std::vector<std::pair<ForestRef, TruthTable>> roots;
    for ( auto m : monomials )
    {
      std::vector<std::pair<ForestRef, TruthTable>> ops;
      for ( uint32_t v = 0; v < nv; ++v )
      {
        if ( m & ( 1u << v ) )
        {
          ops.push_back( { leaf_ref( v, false ), tt_var( nv, v ) } );
        }
      }
      sort_operands( ops );
      auto root = balanced_tree( NodeKind::And, std::move( ops ) );
      if ( !root )
      {
        return;
      }
      roots.push_back( *root );
    }
    sort_operands( roots );
    auto all = balanced_tree( NodeKind::Xor, std::move( roots ) );
    if ( !all )
    {
      return;
    }
    ForestRef out = all->first ^ complement_out;
    TruthTable val = complement_out ? tt_not( all->second ) : all->second;
    assert( val == p_.target );
    emit( out, val );
  }

  ResynProblem const& p_;
  std::vector<uint32_t> kept_;
  TruthTable not_target_;
  ForestAccumulator acc_;
};

} // namespace

SolutionForest resynthesize( ResynProblem const& p )
{
  ForestBuilder builder( p );
  return builder.run();
}

} // namespace anysyn
