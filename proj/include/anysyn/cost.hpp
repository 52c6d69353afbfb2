#pragma once

#include "anysyn/resyn.hpp"
#include "anysyn/window.hpp"
#include "anysyn/xag.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace anysyn
{

/* static node attributes available to context propagation */
struct NodeAttrs
{
  node_id node = 0;
  bool is_pi = false;
  uint32_t fanout_count = 1;
};

using Global = uint64_t;

/* sorted set of node ids; the set-valued contexts build on it */
struct IdSet
{
  std::vector<uint32_t> v;

  static IdSet single( uint32_t x ) { return IdSet{ { x } }; }

  static IdSet unite( IdSet const& a, IdSet const& b, uint32_t extra )
  {
    IdSet r;
    r.v.reserve( a.v.size() + b.v.size() + 1 );
    std::set_union( a.v.begin(), a.v.end(), b.v.begin(), b.v.end(), std::back_inserter( r.v ) );
    auto it = std::lower_bound( r.v.begin(), r.v.end(), extra );
    if ( it == r.v.end() || *it != extra )
    {
      r.v.insert( it, extra );
    }
    return r;
  }

  static IdSet unite( IdSet const& a, IdSet const& b )
  {
    IdSet r;
    r.v.reserve( a.v.size() + b.v.size() );
    std::set_union( a.v.begin(), a.v.end(), b.v.begin(), b.v.end(), std::back_inserter( r.v ) );
    return r;
  }

  static uint64_t intersection_size( IdSet const& a, IdSet const& b )
  {
    uint64_t n = 0;
    auto i = a.v.begin();
    auto j = b.v.begin();
    while ( i != a.v.end() && j != b.v.end() )
    {
      if ( *i < *j )
      {
        ++i;
      }
      else if ( *j < *i )
      {
        ++j;
      }
      else
      {
        ++n;
        ++i;
        ++j;
      }
    }
    return n;
  }

  uint64_t size() const { return v.size(); }
};

/* ------------------------------------------------------------------ *
 * A cost function supplies:                                           *
 *   name        -- CLI identifier                                     *
 *   max_fold    -- true for depth-like costs (fold by max),           *
 *                  false for size-like costs (fold by sum)            *
 *   context_type                                                      *
 *   pi_context(pi_index, attrs)                                       *
 *   propagate(kind, fanin contexts, attrs)                            *
 *   contribute(global, kind, context)                                 *
 *   neutral()                                                         *
 *   has_order / less(a, b) -- optional context preorder               *
 * ------------------------------------------------------------------ */

struct Unit
{
};

struct XagSizeCost
{
  static constexpr char const* name = "xag_size";
  static constexpr bool max_fold = false;
  static constexpr bool has_order = false;
  using context_type = Unit;
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return {}; }
  static context_type propagate( NodeKind, context_type const&, context_type const&, NodeAttrs const& )
  {
    return {};
  }
  static Global contribute( Global g, NodeKind kind, context_type const& )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? g + 1 : g;
  }
  static bool less( context_type const&, context_type const& ) { return false; }
};

struct McCost
{
  static constexpr char const* name = "mc";
  static constexpr bool max_fold = false;
  static constexpr bool has_order = false;
  using context_type = Unit;
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return {}; }
  static context_type propagate( NodeKind, context_type const&, context_type const&, NodeAttrs const& )
  {
    return {};
  }
  static Global contribute( Global g, NodeKind kind, context_type const& )
  {
    return kind == NodeKind::And ? g + 1 : g;
  }
  static bool less( context_type const&, context_type const& ) { return false; }
};

struct XagDepthCost
{
  static constexpr char const* name = "xag_depth";
  static constexpr bool max_fold = true;
  static constexpr bool has_order = true;
  using context_type = uint32_t; /* level */
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return 0; }
  static context_type propagate( NodeKind, context_type const& a, context_type const& b,
                                 NodeAttrs const& )
  {
    return std::max( a, b ) + 1;
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? std::max<Global>( g, c ) : g;
  }
  static bool less( context_type const& a, context_type const& b ) { return a < b; }
};

struct TDepthCost
{
  static constexpr char const* name = "t_depth";
  static constexpr bool max_fold = true;
  static constexpr bool has_order = true;
  using context_type = uint32_t; /* AND level; XOR gates are free */
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return 0; }
  static context_type propagate( NodeKind kind, context_type const& a, context_type const& b,
                                 NodeAttrs const& )
  {
    return std::max( a, b ) + ( kind == NodeKind::And ? 1 : 0 );
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? std::max<Global>( g, c ) : g;
  }
  static bool less( context_type const& a, context_type const& b ) { return a < b; }
};

struct LevelSkew
{
  uint32_t level = 0;
  uint32_t skew = 0; /* fanin level difference at this node */
};

struct TotalSkewCost
{
  static constexpr char const* name = "total_skew";
  static constexpr bool max_fold = false;
  static constexpr bool has_order = true;
  using context_type = LevelSkew;
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return {}; }
  static context_type propagate( NodeKind, context_type const& a, context_type const& b,
                                 NodeAttrs const& )
  {
    return LevelSkew{ std::max( a.level, b.level ) + 1,
                      a.level > b.level ? a.level - b.level : b.level - a.level };
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? g + c.skew : g;
  }
  static bool less( context_type const& a, context_type const& b ) { return a.level < b.level; }
};

struct MaxSkewCost
{
  static constexpr char const* name = "max_skew";
  static constexpr bool max_fold = true;
  static constexpr bool has_order = true;
  using context_type = LevelSkew;
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return {}; }
  static context_type propagate( NodeKind, context_type const& a, context_type const& b,
                                 NodeAttrs const& )
  {
    return LevelSkew{ std::max( a.level, b.level ) + 1,
                      a.level > b.level ? a.level - b.level : b.level - a.level };
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? std::max<Global>( g, c.skew ) : g;
  }
  static bool less( context_type const& a, context_type const& b ) { return a.level < b.level; }
};

struct ReconvCtx
{
  IdSet tfi;          /* transitive fanin including the node itself */
  uint64_t local = 0; /* reconvergences ending here */
};

struct ReconvCost
{
  static constexpr char const* name = "reconv";
  static constexpr bool max_fold = false;
  static constexpr bool has_order = false;
  using context_type = ReconvCtx;
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& attrs )
  {
    return ReconvCtx{ IdSet::single( attrs.node ), 0 };
  }
  static context_type propagate( NodeKind, context_type const& a, context_type const& b,
                                 NodeAttrs const& attrs )
  {
    return ReconvCtx{ IdSet::unite( a.tfi, b.tfi, attrs.node ),
                      IdSet::intersection_size( a.tfi, b.tfi ) };
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? g + c.local : g;
  }
  static bool less( context_type const&, context_type const& ) { return false; }
};

struct FflcCost
{
  static constexpr char const* name = "fflc";
  static constexpr bool max_fold = false;
  static constexpr bool has_order = true;
  using context_type = uint32_t; /* 2 for multi-fanout gates, else 1 */
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return 0; }
  static context_type propagate( NodeKind, context_type const&, context_type const&,
                                 NodeAttrs const& attrs )
  {
    return attrs.fanout_count > 1 ? 2 : 1;
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? g + c : g;
  }
  static bool less( context_type const& a, context_type const& b ) { return a < b; }
};

struct AndChainCost
{
  static constexpr char const* name = "and_chain";
  static constexpr bool max_fold = true;
  static constexpr bool has_order = true;
  using context_type = uint32_t; /* longest consecutive-AND suffix */
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& ) { return 0; }
  static context_type propagate( NodeKind kind, context_type const& a, context_type const& b,
                                 NodeAttrs const& )
  {
    return kind == NodeKind::And ? std::max( a, b ) + 1 : 0;
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? std::max<Global>( g, c ) : g;
  }
  static bool less( context_type const& a, context_type const& b ) { return a < b; }
};

struct SupportSumCost
{
  static constexpr char const* name = "support_sum";
  static constexpr bool max_fold = false;
  static constexpr bool has_order = false;
  using context_type = IdSet; /* primary-input support */
  static Global neutral() { return 0; }
  static context_type pi_context( uint32_t, NodeAttrs const& attrs )
  {
    return IdSet::single( attrs.node );
  }
  static context_type propagate( NodeKind, context_type const& a, context_type const& b,
                                 NodeAttrs const& )
  {
    return IdSet::unite( a, b );
  }
  static Global contribute( Global g, NodeKind kind, context_type const& c )
  {
    return kind == NodeKind::And || kind == NodeKind::Xor ? g + c.size() : g;
  }
  static bool less( context_type const&, context_type const& ) { return false; }
};

/* apply a functor to every built-in cost type */
template<typename F>
void for_each_builtin_cost( F&& f )
{
  f.template operator()<XagSizeCost>();
  f.template operator()<McCost>();
  f.template operator()<XagDepthCost>();
  f.template operator()<TDepthCost>();
  f.template operator()<TotalSkewCost>();
  f.template operator()<MaxSkewCost>();
  f.template operator()<ReconvCost>();
  f.template operator()<FflcCost>();
  f.template operator()<AndChainCost>();
  f.template operator()<SupportSumCost>();
}

std::vector<std::string> cost_names();
bool is_cost_name( std::string const& name );

/* ------------------------------------------------------------------ */
/* evaluation                                                           */
/* ------------------------------------------------------------------ */

template<typename C>
struct EvalResult
{
  Global global = 0;
  std::vector<typename C::context_type> contexts;
  uint64_t visited = 0;
};

/* one topological pass: contexts for PIs via pi_context, for gates via
 * propagate; the global is the contribution fold over all live nodes */
template<typename C>
EvalResult<C> evaluate( Network const& net )
{
  EvalResult<C> res;
  res.contexts.resize( net.size() );
  res.global = C::neutral();
  for ( auto n : net.topo_order() )
  {
    auto const kind = net.kind( n );
    if ( kind == NodeKind::Pi )
    {
      res.contexts[n] = C::pi_context( net.pi_index( n ), NodeAttrs{ n, true, net.fanout_count( n ) } );
    }
    else if ( kind != NodeKind::Constant )
    {
      auto const f0 = net.fanin0( n ), f1 = net.fanin1( n );
      res.contexts[n] = C::propagate( kind, res.contexts[f0.node()], res.contexts[f1.node()],
                                      NodeAttrs{ n, false, net.fanout_count( n ) } );
    }
    res.global = C::contribute( res.global, kind, res.contexts[n] );
    ++res.visited;
  }
  return res;
}

/* fold the contribution of an explicit node list from the neutral
 * element; contexts must already be computed */
template<typename C>
Global local_fold( Network const& net, std::vector<node_id> const& nodes,
                   std::vector<typename C::context_type> const& contexts )
{
  Global g = C::neutral();
  for ( auto n : nodes )
  {
    g = C::contribute( g, net.kind( n ), contexts[n] );
  }
  return g;
}

/* ------------------------------------------------------------------ */
/* candidate comparison                                                 */
/* ------------------------------------------------------------------ */

struct Candidate
{
  ForestRef output;
  Global fold = 0;
  uint32_t gate_count = 0;
};

/*! \brief Evaluate every forest output and rank the acceptable ones.
 *
 * A candidate's fold covers its new gates, with contexts propagated from
 * the divisor contexts; for max-fold costs the output node's own context
 * joins the fold, so that rewiring to a deep divisor is not mistaken for
 * an improvement.  Acceptable candidates fold strictly below the MFFC
 * fold; ties break by gate count, then by the candidate encoding.
 */
template<typename C>
std::vector<Candidate> compare_candidates( Network const& net, Window const& win,
                                           SolutionForest const& forest,
                                           std::vector<typename C::context_type> const& contexts )
{
  Global const mffc_fold = local_fold<C>( net, win.mffc, contexts );

  std::vector<Candidate> accepted;
  std::vector<typename C::context_type> gate_ctx( forest.gates.size() );
  std::vector<bool> gate_ctx_done( forest.gates.size(), false );

  for ( auto const& out : forest.outputs )
  {
    auto cone = forest.cone_gates( out );
    auto ctx_of = [&]( ForestRef r ) -> typename C::context_type const& {
      return r.is_gate() ? gate_ctx[r.index()] : contexts[win.divisors[r.index()]];
    };
    for ( auto gi : cone )
    {
      if ( gate_ctx_done[gi] )
      {
        continue;
      }
      auto const& g = forest.gates[gi];
      /* hypothetical node id: distinct from any real node */
      NodeAttrs attrs{ 0x40000000u + gi, false, 1 };
      gate_ctx[gi] = C::propagate( g.kind, ctx_of( g.a ), ctx_of( g.b ), attrs );
      gate_ctx_done[gi] = true;
    }
    Global fold = C::neutral();
    for ( auto gi : cone )
    {
      fold = C::contribute( fold, forest.gates[gi].kind, gate_ctx[gi] );
    }
    if ( C::max_fold )
    {
      /* the output context rides downstream; include it */
      NodeKind out_kind = out.is_gate() ? forest.gates[out.index()].kind
                                        : net.kind( win.divisors[out.index()] );
      if ( out_kind == NodeKind::And || out_kind == NodeKind::Xor )
      {
        fold = C::contribute( fold, out_kind, ctx_of( out ) );
      }
    }
    if ( fold < mffc_fold )
    {
      accepted.push_back( Candidate{ out, fold, uint32_t( cone.size() ) } );
    }
  }

  std::stable_sort( accepted.begin(), accepted.end(),
                    [&]( Candidate const& a, Candidate const& b ) {
                      if ( a.fold != b.fold )
                      {
                        return a.fold < b.fold;
                      }
                      if ( a.gate_count != b.gate_count )
                      {
                        return a.gate_count < b.gate_count;
                      }
                      return forest.encode_output( a.output ) < forest.encode_output( b.output );
                    } );
  return accepted;
}

/* type-erased evaluation for the CLI */
Global evaluate_by_name( Network const& net, std::string const& cost_name );

} // namespace anysyn
