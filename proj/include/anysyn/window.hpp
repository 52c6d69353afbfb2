#pragma once

#include "anysyn/truth_table.hpp"
#include "anysyn/xag.hpp"

#include <unordered_map>
#include <vector>

namespace anysyn
{

struct Cut
{
  node_id root = 0;
  std::vector<node_id> leaves; /* sorted ascending */
};

/*! \brief Localized resynthesis scope around one root node.
 *
 * members holds the cone between root and the cut leaves plus side nodes
 * supported by the cut, topologically sorted.  divisors are members and
 * leaves minus the MFFC and the root, in increasing id order.
 */
struct Window
{
  Cut cut;
  std::vector<node_id> members; /* gates, topologically sorted */
  std::vector<node_id> mffc;    /* window-restricted MFFC of root, sorted */
  std::vector<node_id> divisors;
  TruthTable target;
  std::unordered_map<node_id, TruthTable> tables;

  bool is_divisor( node_id n ) const;
  TruthTable const& table( node_id n ) const { return tables.at( n ); }
};

/*! \brief Builds cuts and windows with reusable scratch storage.
 *
 * Read-only over the network; keep one instance per optimization pass so
 * per-window work stays proportional to the window, not the network.
 */
class WindowBuilder
{
public:
  explicit WindowBuilder( Network const& net, uint32_t max_expansions = 100 )
      : net_( net ), max_expansions_( max_expansions )
  {
  }

  /* grow a reconvergence-driven cut: repeatedly replace the leaf whose
   * expansion adds the fewest new leaves (ties to the smallest id),
   * while the leaf count stays within max_leaves */
  Cut reconv_cut( node_id root, uint32_t max_leaves );

  Window build( Cut const& cut, uint32_t max_divisors );

private:
  struct Marks
  {
    std::vector<uint32_t> mark;
    uint32_t epoch = 0;
    void begin( size_t n )
    {
      if ( mark.size() < n )
      {
        mark.resize( n, 0 );
      }
      ++epoch;
    }
    bool test( node_id i ) const { return mark[i] == epoch; }
    void set( node_id i ) { mark[i] = epoch; }
    void clear( node_id i ) { mark[i] = 0; }
  };

  Network const& net_;
  uint32_t max_expansions_;
  Marks in_window_;
  Marks leaf_mask_;
  Marks placed_;
  std::vector<node_id> stack_;
};

/* one-off conveniences used by tests */
Cut reconv_cut( Network const& net, node_id root, uint32_t max_leaves );
Window build_window( Network const& net, Cut const& cut, uint32_t max_divisors );

/* simulate nodes over the given leaves; members must be topologically
 * sorted and closed over fanins up to the leaves */
std::unordered_map<node_id, TruthTable> simulate_window(
    Network const& net, std::vector<node_id> const& leaves,
    std::vector<node_id> const& members );

} // namespace anysyn
