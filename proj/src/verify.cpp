#include "anysyn/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <random>
#include <stdexcept>

#include <omp.h>

namespace anysyn
{

namespace
{

constexpr uint64_t var_words[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

/* simulate one pattern chunk; vals has one row of W words per node */
void sim_chunk( Network const& net, std::vector<node_id> const& order, uint32_t W,
                std::vector<uint64_t>& vals )
{
  for ( auto n : order )
  {
    if ( !net.is_gate( n ) )
    {
      continue;
    }
    auto const f0 = net.fanin0( n ), f1 = net.fanin1( n );
    uint64_t const* a = &vals[uint64_t( f0.node() ) * W];
    uint64_t const* b = &vals[uint64_t( f1.node() ) * W];
    uint64_t* o = &vals[uint64_t( n ) * W];
    uint64_t const ma = f0.complemented() ? ~uint64_t( 0 ) : 0;
    uint64_t const mb = f1.complemented() ? ~uint64_t( 0 ) : 0;
    if ( net.kind( n ) == NodeKind::And )
    {
      for ( uint32_t w = 0; w < W; ++w )
      {
        o[w] = ( a[w] ^ ma ) & ( b[w] ^ mb );
      }
    }
    else
    {
      for ( uint32_t w = 0; w < W; ++w )
      {
        o[w] = a[w] ^ ma ^ b[w] ^ mb;
      }
    }
  }
}

/* fill PI rows for chunk `chunk`: variables below kappa are periodic
 * within the chunk, the rest are constants taken from the chunk index */
void fill_pis( Network const& net, uint32_t kappa, uint64_t chunk, uint32_t W,
               std::vector<uint64_t>& vals )
{
  for ( uint32_t i = 0; i < net.num_pis(); ++i )
  {
    uint64_t* row = &vals[uint64_t( net.pi_at( i ) ) * W];
    if ( i < 6 )
    {
      for ( uint32_t w = 0; w < W; ++w )
      {
        row[w] = var_words[i];
      }
    }
    else if ( i < kappa )
    {
      uint32_t period = 1u << ( i - 6 );
      for ( uint32_t w = 0; w < W; ++w )
      {
        row[w] = ( w & period ) ? ~uint64_t( 0 ) : 0;
      }
    }
    else
    {
      uint64_t bit = ( chunk >> ( i - kappa ) ) & 1;
      for ( uint32_t w = 0; w < W; ++w )
      {
        row[w] = bit ? ~uint64_t( 0 ) : 0;
      }
    }
  }
}

} // namespace

bool cec_exhaustive( Network const& a, Network const& b, std::vector<bool>* cex, bool parallel )
{
  if ( a.num_pis() != b.num_pis() || a.num_pos() != b.num_pos() )
  {
    throw std::invalid_argument( "cec_exhaustive: interface mismatch" );
  }
  if ( a.num_pis() > 24 )
  {
    throw std::out_of_range( "cec_exhaustive: more than 24 inputs" );
  }
  uint32_t const k = a.num_pis();
  uint32_t const kappa = std::min( k, 12u );
  uint32_t const W = kappa <= 6 ? 1u : 1u << ( kappa - 6 );
  uint64_t const chunks = uint64_t( 1 ) << ( k - kappa );
  uint64_t const chunk_bits = uint64_t( 1 ) << kappa;
  uint64_t const valid_mask =
      kappa >= 6 ? ~uint64_t( 0 ) : ( uint64_t( 1 ) << chunk_bits ) - 1;

  auto const order_a = a.topo_order();
  auto const order_b = b.topo_order();

  std::atomic<uint64_t> first_fail{ ~uint64_t( 0 ) };

#pragma omp parallel if ( parallel && chunks > 1 )
  {
    std::vector<uint64_t> va( uint64_t( a.size() ) * W );
    std::vector<uint64_t> vb( uint64_t( b.size() ) * W );
    va[0] = 0;

#pragma omp for schedule( dynamic, 1 )
    for ( int64_t c = 0; c < int64_t( chunks ); ++c )
    {
      if ( first_fail.load( std::memory_order_relaxed ) != ~uint64_t( 0 ) )
      {
        continue;
      }
      std::fill( va.begin(), va.begin() + W, 0 );
      std::fill( vb.begin(), vb.begin() + W, 0 );
      fill_pis( a, kappa, uint64_t( c ), W, va );
      fill_pis( b, kappa, uint64_t( c ), W, vb );
      sim_chunk( a, order_a, W, va );
      sim_chunk( b, order_b, W, vb );
      for ( uint32_t po = 0; po < a.num_pos(); ++po )
      {
        auto const sa = a.po_at( po );
        auto const sb = b.po_at( po );
        uint64_t const ma = sa.complemented() ? ~uint64_t( 0 ) : 0;
        uint64_t const mb = sb.complemented() ? ~uint64_t( 0 ) : 0;
        for ( uint32_t w = 0; w < W; ++w )
        {
          uint64_t diff = ( ( va[uint64_t( sa.node() ) * W + w] ^ ma ) ^
                            ( vb[uint64_t( sb.node() ) * W + w] ^ mb ) ) &
                          valid_mask;
          if ( diff != 0 )
          {
            uint64_t bit = uint64_t( std::countr_zero( diff ) );
            uint64_t pattern = ( uint64_t( c ) << kappa ) | ( uint64_t( w ) << 6 ) | bit;
            uint64_t prev = first_fail.load( std::memory_order_relaxed );
            while ( pattern < prev &&
                    !first_fail.compare_exchange_weak( prev, pattern,
                                                       std::memory_order_relaxed ) )
            {
            }
            break;
          }
        }
      }
    }
  }

  uint64_t fail = first_fail.load();
  if ( fail == ~uint64_t( 0 ) )
  {
    return true;
  }
  if ( cex != nullptr )
  {
    cex->assign( k, false );
    for ( uint32_t i = 0; i < k; ++i )
    {
      ( *cex )[i] = ( fail >> i ) & 1;
    }
  }
  return false;
}

std::vector<uint64_t> simulate_words( Network const& net, std::vector<uint64_t> const& pi_words )
{
  assert( pi_words.size() == net.num_pis() );
  std::vector<uint64_t> vals( net.size(), 0 );
  for ( uint32_t i = 0; i < net.num_pis(); ++i )
  {
    vals[net.pi_at( i )] = pi_words[i];
  }
  for ( auto n : net.topo_order() )
  {
    if ( !net.is_gate( n ) )
    {
      continue;
    }
    auto const f0 = net.fanin0( n ), f1 = net.fanin1( n );
    uint64_t x = vals[f0.node()] ^ ( f0.complemented() ? ~uint64_t( 0 ) : 0 );
    uint64_t y = vals[f1.node()] ^ ( f1.complemented() ? ~uint64_t( 0 ) : 0 );
    vals[n] = net.kind( n ) == NodeKind::And ? ( x & y ) : ( x ^ y );
  }
  std::vector<uint64_t> out;
  out.reserve( net.num_pos() );
  for ( auto const& po : net.pos() )
  {
    out.push_back( vals[po.node()] ^ ( po.complemented() ? ~uint64_t( 0 ) : 0 ) );
  }
  return out;
}

RandomCheck cec_random( Network const& a, Network const& b, uint64_t vectors, uint64_t seed )
{
  if ( a.num_pis() != b.num_pis() || a.num_pos() != b.num_pos() )
  {
    throw std::invalid_argument( "cec_random: interface mismatch" );
  }
  RandomCheck res;
  if ( vectors == 0 )
  {
    return res; /* vacuously consistent */
  }
  std::mt19937_64 rng( seed );
  uint64_t const rounds = ( vectors + 63 ) / 64;
  std::vector<uint64_t> pi_words( a.num_pis() );
  for ( uint64_t r = 0; r < rounds; ++r )
  {
    for ( auto& w : pi_words )
    {
      w = rng();
    }
    uint64_t remaining = vectors - r * 64;
    uint64_t mask = remaining >= 64 ? ~uint64_t( 0 ) : ( uint64_t( 1 ) << remaining ) - 1;
    auto oa = simulate_words( a, pi_words );
    auto ob = simulate_words( b, pi_words );
    for ( uint32_t po = 0; po < a.num_pos(); ++po )
    {
      uint64_t diff = ( oa[po] ^ ob[po] ) & mask;
      if ( diff != 0 )
      {
        uint32_t bit = std::countr_zero( diff );
        res.consistent = false;
        res.counterexample.assign( a.num_pis(), false );
        for ( uint32_t i = 0; i < a.num_pis(); ++i )
        {
          res.counterexample[i] = ( pi_words[i] >> bit ) & 1;
        }
        return res;
      }
    }
  }
  return res;
}

/* ------------------------------------------------------------------ */
/* unpruned enumeration oracle                                          */
/* ------------------------------------------------------------------ */

std::vector<std::string> brute_resyn_oracle( ResynProblem const& p )
{
  auto kept = dedup_divisors( p );
  if ( kept.size() > 8 )
  {
    throw std::length_error( "brute_resyn_oracle: more than 8 divisors" );
  }
  if ( p.max_gates > 2 )
  {
    throw std::length_error( "brute_resyn_oracle: more than 2 gates" );
  }

  ForestAccumulator acc( p.target );
  auto dtt = [&]( uint32_t orig ) -> TruthTable const& { return p.divisor_tts[orig]; };
  TruthTable const not_target = tt_not( p.target );

  struct Lit
  {
    uint32_t div;
    bool c;
    TruthTable tt;
  };
  std::vector<Lit> lits;
  for ( auto orig : kept )
  {
    lits.push_back( Lit{ orig, false, dtt( orig ) } );
    lits.push_back( Lit{ orig, true, tt_not( dtt( orig ) ) } );
  }
  auto lref = []( Lit const& l ) { return ForestRef::divisor( l.div, l.c ); };
  auto matches = [&]( TruthTable const& v ) { return v == p.target || v == not_target; };

  /* zero gates */
  for ( auto orig : kept )
  {
    if ( matches( dtt( orig ) ) )
    {
      acc.emit( ForestRef::divisor( orig, false ), dtt( orig ) );
    }
  }

  if ( p.max_gates >= 1 )
  {
    /* one gate */
    for ( uint32_t i = 0; i < lits.size(); ++i )
    {
      for ( uint32_t j = i + 1; j < lits.size(); ++j )
      {
        if ( lits[i].div == lits[j].div )
        {
          continue;
        }
        TruthTable val = tt_and( lits[i].tt, lits[j].tt );
        if ( matches( val ) )
        {
          acc.emit( acc.add_gate( NodeKind::And, lref( lits[i] ), lref( lits[j] ), val ), val );
        }
      }
    }
    for ( uint32_t i = 0; i < kept.size(); ++i )
    {
      for ( uint32_t j = i + 1; j < kept.size(); ++j )
      {
        TruthTable val = tt_xor( dtt( kept[i] ), dtt( kept[j] ) );
        if ( matches( val ) )
        {
          acc.emit( acc.add_gate( NodeKind::Xor, ForestRef::divisor( kept[i] ),
                                  ForestRef::divisor( kept[j] ), val ),
                    val );
        }
      }
    }
  }

  if ( p.max_gates >= 2 )
  {
    /* inner gates: all one-gate circuits with an edge polarity into the
     * top gate */
    struct Inner
    {
      NodeKind kind;
      uint32_t i, j; /* literal indices for And, kept positions for Xor */
      TruthTable tt; /* uncomplemented value */
    };
    std::vector<Inner> inners;
    for ( uint32_t i = 0; i < lits.size(); ++i )
    {
      for ( uint32_t j = i + 1; j < lits.size(); ++j )
      {
        if ( lits[i].div == lits[j].div )
        {
          continue;
        }
        inners.push_back( Inner{ NodeKind::And, i, j, tt_and( lits[i].tt, lits[j].tt ) } );
      }
    }
    for ( uint32_t i = 0; i < kept.size(); ++i )
    {
      for ( uint32_t j = i + 1; j < kept.size(); ++j )
      {
        inners.push_back( Inner{ NodeKind::Xor, i, j, tt_xor( dtt( kept[i] ), dtt( kept[j] ) ) } );
      }
    }
    auto make_inner = [&]( Inner const& in ) {
      if ( in.kind == NodeKind::And )
      {
        return acc.add_gate( NodeKind::And, lref( lits[in.i] ), lref( lits[in.j] ), in.tt );
      }
      return acc.add_gate( NodeKind::Xor, ForestRef::divisor( kept[in.i] ),
                           ForestRef::divisor( kept[in.j] ), in.tt );
    };

    for ( auto const& in : inners )
    {
      for ( bool ic : { false, true } )
      {
        TruthTable iv = ic ? tt_not( in.tt ) : in.tt;
        /* AND top over (inner, literal) */
        for ( auto const& x : lits )
        {
          TruthTable val = tt_and( iv, x.tt );
          if ( matches( val ) )
          {
            auto g = make_inner( in );
            if ( g )
            {
              acc.emit( acc.add_gate( NodeKind::And, lref( x ), *g ^ ic, val ), val );
            }
          }
        }
        /* XOR top over (inner, divisor); polarity folds into the output */
        if ( !ic )
        {
          for ( auto orig : kept )
          {
            TruthTable val = tt_xor( iv, dtt( orig ) );
            if ( matches( val ) )
            {
              auto g = make_inner( in );
              if ( g )
              {
                acc.emit( acc.add_gate( NodeKind::Xor, ForestRef::divisor( orig ), *g, val ),
                          val );
              }
            }
          }
        }
      }
    }
  }

  SolutionForest forest = acc.take();
  std::vector<std::string> encodings;
  encodings.reserve( forest.outputs.size() );
  for ( auto const& o : forest.outputs )
  {
    encodings.push_back( forest.encode_output( o ) );
  }
  std::sort( encodings.begin(), encodings.end() );
  return encodings;
}

} // namespace anysyn
