#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <unordered_map>
#include <vector>

namespace anysyn
{

using node_id = uint32_t;

/*! \brief An edge reference: node id plus complement flag.
 *
 * Node 0 is the constant-false node, so Signal{0, true} is constant true.
 * Inverters are free: they live on edges, never as nodes.
 */
struct Signal
{
  uint32_t data = 0; /* (node << 1) | complemented */

  Signal() = default;
  Signal( node_id node, bool complemented )
      : data( ( node << 1 ) | uint32_t( complemented ) )
  {
  }

  node_id node() const { return data >> 1; }
  bool complemented() const { return data & 1; }

  Signal operator!() const { return Signal::from_data( data ^ 1 ); }
  Signal operator^( bool flip ) const { return Signal::from_data( data ^ uint32_t( flip ) ); }

  bool operator==( Signal const& other ) const { return data == other.data; }
  bool operator!=( Signal const& other ) const { return data != other.data; }
  bool operator<( Signal const& other ) const { return data < other.data; }

  static Signal from_data( uint32_t d )
  {
    Signal s;
    s.data = d;
    return s;
  }
};

inline Signal const const0 = Signal( 0, false );
inline Signal const const1 = Signal( 0, true );

enum class NodeKind : uint8_t
{
  Constant,
  Pi,
  And,
  Xor
};

struct Node
{
  Signal fanin[2] = { Signal(), Signal() };
  uint32_t fanout_count = 0; /* gate-fanin plus PO references */
  uint32_t ref_count = 0;    /* mirror of fanout_count; scratch during MFFC walks */
  uint32_t level = 0;
  NodeKind kind = NodeKind::Constant;
  bool dead = false;
};

/* change log entry; drained by the optimizer to keep running costs exact */
struct NetEvent
{
  enum Kind : uint8_t
  {
    Created,
    Died
  };
  Kind kind;
  node_id node;
  NodeKind node_kind;
};

class CycleError : public std::exception
{
public:
  char const* what() const noexcept override
  {
    return "substitute: replacement signal lies in the transitive fanout of the target";
  }
};

/*! \brief Hash-consed XOR-AND-Inverter graph.
 *
 * Nodes are append-only and tombstoned on removal; cleanup() rebuilds
 * dense, topologically sorted ids.  Gate creation applies constant
 * propagation, idempotence, annihilation and XOR self-cancellation before
 * the strash lookup, and XOR fanins are stored uncomplemented with the
 * parity absorbed by the returned signal.
 */
class Network
{
public:
  Network();

  /* ---- construction ---------------------------------------------- */

  Signal create_pi( std::string name = {} );
  Signal create_and( Signal a, Signal b );
  Signal create_xor( Signal a, Signal b );
  Signal create_gate( NodeKind kind, Signal a, Signal b );
  uint32_t add_po( Signal s );

  Signal get_constant( bool value ) const { return value ? const1 : const0; }

  /* ---- access ----------------------------------------------------- */

  uint32_t size() const { return uint32_t( nodes_.size() ); }
  uint32_t num_pis() const { return uint32_t( pis_.size() ); }
  uint32_t num_pos() const { return uint32_t( pos_.size() ); }
  uint32_t num_gates() const { return num_gates_; }

  Node const& node( node_id n ) const { return nodes_[n]; }
  bool is_dead( node_id n ) const { return nodes_[n].dead; }
  bool is_pi( node_id n ) const { return nodes_[n].kind == NodeKind::Pi; }
  bool is_constant( node_id n ) const { return nodes_[n].kind == NodeKind::Constant; }
  bool is_gate( node_id n ) const
  {
    return nodes_[n].kind == NodeKind::And || nodes_[n].kind == NodeKind::Xor;
  }
  NodeKind kind( node_id n ) const { return nodes_[n].kind; }
  Signal fanin0( node_id n ) const { return nodes_[n].fanin[0]; }
  Signal fanin1( node_id n ) const { return nodes_[n].fanin[1]; }
  uint32_t fanout_count( node_id n ) const { return nodes_[n].fanout_count; }
  uint32_t level( node_id n ) const { return nodes_[n].level; }
  uint32_t depth() const;

  node_id pi_at( uint32_t index ) const { return pis_[index]; }
  /* index of a PI node among the PIs; undefined for non-PIs */
  uint32_t pi_index( node_id n ) const { return pi_index_.at( n ); }
  std::vector<node_id> const& pis() const { return pis_; }
  std::vector<Signal> const& pos() const { return pos_; }
  Signal po_at( uint32_t index ) const { return pos_[index]; }
  std::string const& pi_name( uint32_t index ) const { return pi_names_[index]; }

  /* gate-consumer node ids; PO references are not included */
  std::vector<node_id> const& fanouts( node_id n ) const { return fanouts_[n]; }
  /* PO slots currently referencing node n */
  std::vector<uint32_t> po_refs( node_id n ) const;

  /* lookup an existing gate by structure; returns false signal when absent */
  bool has_gate( NodeKind kind, Signal a, Signal b, Signal* out = nullptr ) const;

  /* ---- traversal --------------------------------------------------- */

  /* live node ids in a topological order: increasing id while ids are
   * known to be topologically sorted, otherwise a DFS order */
  std::vector<node_id> topo_order() const;
  bool ids_topological() const { return ids_topological_; }

  template<typename Fn>
  void foreach_gate( Fn&& fn ) const
  {
    for ( node_id n = 0; n < nodes_.size(); ++n )
    {
      if ( !nodes_[n].dead && is_gate( n ) )
      {
        fn( n );
      }
    }
  }

  /* ---- structural surgery ------------------------------------------ */

  /*! \brief Redirect every fanin/PO reference of old_root to new_sig.
   *
   * Complements compose; the vacated MFFC is removed.  Fanout gates whose
   * patched structure collides in the strash are merged recursively.
   * With check_cycle set, throws CycleError if new_sig lies in the
   * transitive fanout of old_root.
   */
  void substitute( node_id old_root, Signal new_sig, bool check_cycle = true );

  /* maximum fanout-free cone of root, via the deref/ref counting walk */
  std::vector<node_id> mffc( node_id root ) const;

  /* remove a gate with no remaining fanout, recursively; no-op otherwise */
  void try_delete_dangling( node_id n )
  {
    if ( is_gate( n ) && !nodes_[n].dead && nodes_[n].fanout_count == 0 )
    {
      sweep_dead( n );
    }
  }

  /* true iff target is reachable from n through fanins */
  bool in_tfi( node_id n, node_id target ) const;

  /* rebuild with dense, topologically sorted ids; drops unreachable gates.
   * Returns old-node -> new-signal map (dead/unreachable map to const0). */
  std::vector<Signal> cleanup();

  /* ---- change log --------------------------------------------------- */

  void enable_event_log( bool on )
  {
    log_events_ = on;
    events_.clear();
  }
  std::vector<NetEvent> drain_events()
  {
    auto ev = std::move( events_ );
    events_.clear();
    return ev;
  }

  /* ---- consistency checks (used by tests) --------------------------- */

  bool check_strash_unique() const;
  bool check_counts() const;

private:
  friend class MffcView;

  static uint64_t strash_key( Signal a, Signal b )
  {
    return ( uint64_t( a.data ) << 32 ) | b.data;
  }

  node_id new_node( NodeKind kind, Signal a, Signal b );
  void add_fanout( node_id n, node_id consumer );
  void remove_fanout( node_id n, node_id consumer );
  void record( NetEvent::Kind k, node_id n );

  /* remove a zero-fanout gate and recursively its zero-fanout fanins */
  void sweep_dead( node_id n );

  void strash_insert( node_id n );
  void strash_erase( node_id n );

  std::vector<Node> nodes_;
  std::vector<std::vector<node_id>> fanouts_;
  std::vector<node_id> pis_;
  std::unordered_map<node_id, uint32_t> pi_index_;
  std::vector<std::string> pi_names_;
  std::vector<Signal> pos_;
  std::unordered_map<node_id, std::vector<uint32_t>> po_map_;
  std::unordered_map<uint64_t, node_id> and_strash_;
  std::unordered_map<uint64_t, node_id> xor_strash_;
  uint32_t num_gates_ = 0;
  bool ids_topological_ = true;
  bool log_events_ = false;
  std::vector<NetEvent> events_;

  mutable std::vector<uint32_t> visit_mark_;
  mutable uint32_t visit_epoch_ = 0;
  uint32_t new_epoch() const;
};

} // namespace anysyn
