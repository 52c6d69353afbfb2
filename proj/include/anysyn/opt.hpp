#pragma once

#include "anysyn/cost.hpp"
#include "anysyn/resyn.hpp"
#include "anysyn/verify.hpp"
#include "anysyn/window.hpp"
#include "anysyn/xag.hpp"

#include <chrono>
#include <stdexcept>
#include <unordered_map>

namespace anysyn
{

struct PassConfig
{
  std::string cost_name = "xag_size";
  uint32_t max_leaves = 8;
  uint32_t max_divisors = 150;
  uint32_t max_gates = 3;
  uint32_t iterations = 1;
  uint64_t seed = 0; /* reserved for randomized tie-breaks; none by default */
  bool verify_each = false;

  uint32_t max_gates_decomp = 32;
  uint64_t max_steps = 100000; /* enumeration budget per shape family */
  uint32_t refresh_depth = 2;  /* context refresh ring below window leaves */

  void validate() const
  {
    if ( max_leaves < 2 || max_leaves > 16 )
    {
      throw std::invalid_argument( "max_leaves must be in [2, 16]" );
    }
    if ( max_divisors == 0 || max_gates == 0 )
    {
      throw std::invalid_argument( "window bounds must be positive" );
    }
  }
};

struct PhaseTimes
{
  double traversal_ms = 0;
  double windowing_ms = 0;
  double resyn_ms = 0;
  double eval_ms = 0;
};

struct PassReport
{
  Global initial_cost = 0;
  Global final_cost = 0;
  uint64_t attempted = 0;
  uint64_t accepted = 0;
  uint32_t iterations_run = 0;
  bool rolled_back = false;
  PhaseTimes time;
};

namespace detail
{

class StopWatch
{
public:
  explicit StopWatch( double& sink )
      : sink_( sink ), start_( std::chrono::steady_clock::now() )
  {
  }
  ~StopWatch()
  {
    sink_ += std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() -
                                                        start_ )
                 .count();
  }

private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

/* recompute contexts for the region up to `depth` edges below the
 * leaves, then for the window members from the leaf contexts */
template<typename C>
void refresh_contexts( Network const& net, Window const& win, uint32_t depth,
                       std::vector<typename C::context_type>& ctxs )
{
  auto propagate_one = [&]( node_id n ) {
    if ( net.is_pi( n ) )
    {
      ctxs[n] = C::pi_context( net.pi_index( n ), NodeAttrs{ n, true, net.fanout_count( n ) } );
    }
    else if ( net.is_gate( n ) )
    {
      auto const f0 = net.fanin0( n ), f1 = net.fanin1( n );
      ctxs[n] = C::propagate( net.kind( n ), ctxs[f0.node()], ctxs[f1.node()],
                              NodeAttrs{ n, false, net.fanout_count( n ) } );
    }
  };

  if ( depth > 0 )
  {
    std::unordered_map<node_id, uint32_t> budget; /* remaining expansion */
    std::vector<node_id> stack;
    for ( auto l : win.cut.leaves )
    {
      budget[l] = depth;
      stack.push_back( l );
    }
    while ( !stack.empty() )
    {
      node_id n = stack.back();
      stack.pop_back();
      uint32_t rem = budget[n];
      if ( rem == 0 || !net.is_gate( n ) )
      {
        continue;
      }
      for ( auto const& f : { net.fanin0( n ), net.fanin1( n ) } )
      {
        auto it = budget.find( f.node() );
        if ( it == budget.end() || it->second < rem - 1 )
        {
          budget[f.node()] = rem - 1;
          stack.push_back( f.node() );
        }
      }
    }
    /* topological order within the region, boundary contexts stay */
    std::vector<node_id> order;
    std::unordered_map<node_id, uint8_t> state; /* 1 visiting, 2 done */
    for ( auto const& [seed, _] : budget )
    {
      (void)_;
      if ( state[seed] == 2 )
      {
        continue;
      }
      stack.push_back( seed );
      while ( !stack.empty() )
      {
        node_id n = stack.back();
        if ( state[n] == 2 )
        {
          stack.pop_back();
          continue;
        }
        bool ready = true;
        if ( net.is_gate( n ) )
        {
          for ( auto const& f : { net.fanin0( n ), net.fanin1( n ) } )
          {
            if ( budget.count( f.node() ) && state[f.node()] != 2 )
            {
              ready = false;
              stack.push_back( f.node() );
            }
          }
        }
        if ( ready )
        {
          state[n] = 2;
          order.push_back( n );
          stack.pop_back();
        }
      }
    }
    /* unordered_map iteration order must not matter: sort by position
     * constraints only, which the DFS above already guarantees */
    for ( auto n : order )
    {
      propagate_one( n );
    }
  }
  for ( auto m : win.members )
  {
    propagate_one( m );
  }
}

} // namespace detail

/*! \brief One optimization pass under cost C.
 *
 * Visits every live gate in topological order, builds a window, collects
 * candidate dependency circuits, and commits the best strictly-improving
 * substitution.  The final cost is re-evaluated from scratch; if it
 * exceeds the initial cost the whole pass is rolled back, which makes
 * the cost non-increasing unconditionally.
 */
template<typename C>
PassReport optimize_pass( Network& net, PassConfig const& cfg )
{
  cfg.validate();
  PassReport rep;

  auto eval0 = evaluate<C>( net );
  rep.initial_cost = eval0.global;
  auto ctxs = std::move( eval0.contexts );

  Network snapshot = net;
  WindowBuilder builder( net );
  auto const order = net.topo_order();

  for ( auto root : order )
  {
    if ( net.is_dead( root ) || !net.is_gate( root ) )
    {
      continue;
    }

    Window win;
    {
      detail::StopWatch t( rep.time.windowing_ms );
      win = builder.build( builder.reconv_cut( root, cfg.max_leaves ), cfg.max_divisors );
      detail::refresh_contexts<C>( net, win, cfg.refresh_depth, ctxs );
    }

    Global const mffc_fold = local_fold<C>( net, win.mffc, ctxs );

    /* constant target: rewire to the constant when that improves */
    if ( win.target.is_const0() || win.target.is_const1() )
    {
      ++rep.attempted;
      if ( C::neutral() < mffc_fold )
      {
        net.substitute( root, net.get_constant( win.target.is_const1() ),
                        /*check_cycle=*/false );
        ++rep.accepted;
      }
      continue;
    }

    ResynProblem problem;
    SolutionForest forest;
    {
      detail::StopWatch t( rep.time.resyn_ms );
      problem.target = win.target;
      problem.max_gates = cfg.max_gates;
      problem.max_gates_decomp = cfg.max_gates_decomp;
      problem.max_steps = cfg.max_steps;
      problem.divisor_sigs.reserve( win.divisors.size() );
      problem.divisor_tts.reserve( win.divisors.size() );
      for ( auto d : win.divisors )
      {
        problem.divisor_sigs.push_back( Signal( d, false ) );
        problem.divisor_tts.push_back( win.table( d ) );
      }
      problem.leaf_divisor.assign( win.cut.leaves.size(), -1 );
      for ( uint32_t v = 0; v < win.cut.leaves.size(); ++v )
      {
        auto it = std::lower_bound( win.divisors.begin(), win.divisors.end(),
                                    win.cut.leaves[v] );
        if ( it != win.divisors.end() && *it == win.cut.leaves[v] )
        {
          problem.leaf_divisor[v] = int32_t( it - win.divisors.begin() );
        }
      }
      if constexpr ( C::has_order )
      {
        problem.prefer = [&ctxs, &win]( uint32_t i, uint32_t j ) {
          return C::less( ctxs[win.divisors[i]], ctxs[win.divisors[j]] );
        };
      }
      problem.struct_lookup = [&net, &win, root]( NodeKind kind, Signal a, Signal b ) {
        Signal hit;
        if ( !net.has_gate( kind, a, b, &hit ) )
        {
          return StructHit{ StructHit::Fresh, 0 };
        }
        node_id h = hit.node();
        auto it = std::lower_bound( win.divisors.begin(), win.divisors.end(), h );
        if ( it != win.divisors.end() && *it == h )
        {
          return StructHit{ StructHit::Reuse, uint32_t( it - win.divisors.begin() ) };
        }
        if ( h == root || std::binary_search( win.mffc.begin(), win.mffc.end(), h ) )
        {
          return StructHit{ StructHit::Prune, 0 };
        }
        return StructHit{ StructHit::Fresh, 0 };
      };
      forest = resynthesize( problem );
    }

    if ( forest.empty() )
    {
      continue;
    }
    ++rep.attempted;

    std::vector<Candidate> ranked;
    {
      detail::StopWatch t( rep.time.eval_ms );
      ranked = compare_candidates<C>( net, win, forest, ctxs );
    }

    for ( auto const& cand : ranked )
    {
      /* materialize the winning cone bottom-up */
      Signal new_sig;
      std::vector<Signal> created;
      {
        auto cone = forest.cone_gates( cand.output );
        std::unordered_map<uint32_t, Signal> made;
        auto resolve = [&]( ForestRef r ) {
          Signal s = r.is_gate() ? made.at( r.index() )
                                 : Signal( win.divisors[r.index()], false );
          return s ^ r.complemented();
        };
        for ( auto gi : cone )
        {
          auto const& g = forest.gates[gi];
          Signal s = net.create_gate( g.kind, resolve( g.a ), resolve( g.b ) );
          made.emplace( gi, s );
          created.push_back( s );
          if ( s.node() >= ctxs.size() )
          {
            ctxs.resize( net.size() );
          }
          if ( net.is_gate( s.node() ) )
          {
            auto const f0 = net.fanin0( s.node() ), f1 = net.fanin1( s.node() );
            ctxs[s.node()] =
                C::propagate( net.kind( s.node() ), ctxs[f0.node()], ctxs[f1.node()],
                              NodeAttrs{ s.node(), false, net.fanout_count( s.node() ) } );
          }
        }
        new_sig = resolve( cand.output );
      }

      /* reject aliases of the root or its MFFC: those would invalidate
       * the predicted savings */
      if ( new_sig.node() == root ||
           std::binary_search( win.mffc.begin(), win.mffc.end(), new_sig.node() ) )
      {
        for ( auto it = created.rbegin(); it != created.rend(); ++it )
        {
          net.try_delete_dangling( it->node() );
        }
        continue;
      }

      net.substitute( root, new_sig, /*check_cycle=*/false );
      ++rep.accepted;

      if ( cfg.verify_each )
      {
        bool ok = net.num_pis() <= 14
                      ? cec_exhaustive( snapshot, net )
                      : cec_random( snapshot, net, 4096, cfg.seed ).consistent;
        if ( !ok )
        {
          throw std::runtime_error( "optimize: functional verification failed after "
                                    "substituting node " +
                                    std::to_string( root ) );
        }
      }
      break;
    }
  }

  Global final_global;
  {
    detail::StopWatch t( rep.time.eval_ms );
    final_global = evaluate<C>( net ).global;
  }
  if ( final_global > rep.initial_cost )
  {
    net = std::move( snapshot );
    rep.rolled_back = true;
    rep.accepted = 0;
    final_global = rep.initial_cost;
  }
  rep.final_cost = final_global;
  rep.iterations_run = 1;
  return rep;
}

/* run up to cfg.iterations passes, compacting ids in between; stops at
 * the first pass that accepts nothing */
template<typename C>
PassReport optimize( Network& net, PassConfig const& cfg )
{
  cfg.validate();
  PassReport total;
  total.initial_cost = evaluate<C>( net ).global;
  total.final_cost = total.initial_cost;
  for ( uint32_t i = 0; i < cfg.iterations; ++i )
  {
    PassReport pass = optimize_pass<C>( net, cfg );
    total.attempted += pass.attempted;
    total.accepted += pass.accepted;
    total.rolled_back = pass.rolled_back;
    total.final_cost = pass.final_cost;
    total.iterations_run += 1;
    total.time.traversal_ms += pass.time.traversal_ms;
    total.time.windowing_ms += pass.time.windowing_ms;
    total.time.resyn_ms += pass.time.resyn_ms;
    total.time.eval_ms += pass.time.eval_ms;
    if ( pass.accepted == 0 )
    {
      break;
    }
    net.cleanup();
  }
  return total;
}

/* dispatch on a registered cost name; throws on unknown names */
PassReport optimize_by_name( Network& net, PassConfig const& cfg );
PassReport optimize_pass_by_name( Network& net, PassConfig const& cfg );

} // namespace anysyn
