#include "anysyn/xag.hpp"

#include <algorithm>
#include <cassert>

namespace anysyn
{

Network::Network()
{
  /* node 0 is the constant-false node */
  nodes_.push_back( Node{} );
  fanouts_.emplace_back();
}

uint32_t Network::new_epoch() const
{
  visit_mark_.resize( nodes_.size(), 0 );
  return ++visit_epoch_;
}

void Network::record( NetEvent::Kind k, node_id n )
{
  if ( log_events_ )
  {
    events_.push_back( NetEvent{ k, n, nodes_[n].kind } );
  }
}

Signal Network::create_pi( std::string name )
{
  node_id n = node_id( nodes_.size() );
  Node pi;
  pi.kind = NodeKind::Pi;
  nodes_.push_back( pi );
  fanouts_.emplace_back();
  pi_index_[n] = uint32_t( pis_.size() );
  if ( name.empty() )
  {
    name = "i" + std::to_string( pis_.size() );
  }
  pi_names_.push_back( std::move( name ) );
  pis_.push_back( n );
  return Signal( n, false );
}

void Network::add_fanout( node_id n, node_id consumer )
{
  fanouts_[n].push_back( consumer );
  nodes_[n].fanout_count++;
  nodes_[n].ref_count++;
}

void Network::remove_fanout( node_id n, node_id consumer )
{
  auto& list = fanouts_[n];
  auto it = std::find( list.begin(), list.end(), consumer );
  assert( it != list.end() );
  list.erase( it );
  assert( nodes_[n].fanout_count > 0 );
  nodes_[n].fanout_count--;
  nodes_[n].ref_count--;
}

void Network::strash_insert( node_id n )
{
  auto& map = nodes_[n].kind == NodeKind::And ? and_strash_ : xor_strash_;
  map[strash_key( nodes_[n].fanin[0], nodes_[n].fanin[1] )] = n;
}

void Network::strash_erase( node_id n )
{
  if ( !is_gate( n ) )
  {
    return;
  }
  auto& map = nodes_[n].kind == NodeKind::And ? and_strash_ : xor_strash_;
  auto it = map.find( strash_key( nodes_[n].fanin[0], nodes_[n].fanin[1] ) );
  if ( it != map.end() && it->second == n )
  {
    map.erase( it );
  }
}

node_id Network::new_node( NodeKind kind, Signal a, Signal b )
{
  node_id n = node_id( nodes_.size() );
  Node gate;
  gate.kind = kind;
  gate.fanin[0] = a;
  gate.fanin[1] = b;
  gate.level = std::max( nodes_[a.node()].level, nodes_[b.node()].level ) + 1;
  nodes_.push_back( gate );
  fanouts_.emplace_back();
  add_fanout( a.node(), n );
  add_fanout( b.node(), n );
  num_gates_++;
  strash_insert( n );
  record( NetEvent::Created, n );
  return n;
}

namespace
{

/* trivial simplifications shared by create_gate and in-place repatching;
 * returns true and sets out when the pair collapses to a signal */
bool simplify_pair( NodeKind kind, Signal a, Signal b, Signal* out )
{
  if ( kind == NodeKind::And )
  {
    if ( a == b )
    {
      *out = a;
      return true;
    }
    if ( a == !b )
    {
      *out = const0;
      return true;
    }
    if ( a.node() == 0 )
    {
      *out = a.complemented() ? b : const0;
      return true;
    }
    if ( b.node() == 0 )
    {
      *out = b.complemented() ? a : const0;
      return true;
    }
  }
  else
  {
    if ( a == b )
    {
      *out = const0;
      return true;
    }
    if ( a == !b )
    {
      *out = const1;
      return true;
    }
    if ( a.node() == 0 )
    {
      *out = a.complemented() ? !b : b;
      return true;
    }
    if ( b.node() == 0 )
    {
      *out = b.complemented() ? !a : a;
      return true;
    }
  }
  return false;
}

} // namespace

Signal Network::create_and( Signal a, Signal b )
{
  return create_gate( NodeKind::And, a, b );
}

Signal Network::create_xor( Signal a, Signal b )
{
  return create_gate( NodeKind::Xor, a, b );
}

Signal Network::create_gate( NodeKind kind, Signal a, Signal b )
{
  assert( kind == NodeKind::And || kind == NodeKind::Xor );
  assert( a.node() < nodes_.size() && !nodes_[a.node()].dead );
  assert( b.node() < nodes_.size() && !nodes_[b.node()].dead );

  Signal simplified;
  if ( simplify_pair( kind, a, b, &simplified ) )
  {
    return simplified;
  }

  bool parity = false;
  if ( kind == NodeKind::Xor )
  {
    parity = a.complemented() ^ b.complemented();
    a = Signal( a.node(), false );
    b = Signal( b.node(), false );
  }
  if ( b.data < a.data )
  {
    std::swap( a, b );
  }

  auto& map = kind == NodeKind::And ? and_strash_ : xor_strash_;
  auto it = map.find( strash_key( a, b ) );
  if ( it != map.end() )
  {
    return Signal( it->second, parity );
  }
  return Signal( new_node( kind, a, b ), parity );
}

bool Network::has_gate( NodeKind kind, Signal a, Signal b, Signal* out ) const
{
  Signal dummy;
  if ( simplify_pair( kind, a, b, &dummy ) )
  {
    return false;
  }
  bool parity = false;
  if ( kind == NodeKind::Xor )
  {
    parity = a.complemented() ^ b.complemented();
    a = Signal( a.node(), false );
    b = Signal( b.node(), false );
  }
  if ( b.data < a.data )
  {
    std::swap( a, b );
  }
  auto const& map = kind == NodeKind::And ? and_strash_ : xor_strash_;
  auto it = map.find( strash_key( a, b ) );
  if ( it == map.end() )
  {
    return false;
  }
  if ( out != nullptr )
  {
    *out = Signal( it->second, parity );
  }
  return true;
}

uint32_t Network::add_po( Signal s )
{
  assert( s.node() < nodes_.size() && !nodes_[s.node()].dead );
  uint32_t slot = uint32_t( pos_.size() );
  pos_.push_back( s );
  po_map_[s.node()].push_back( slot );
  nodes_[s.node()].fanout_count++;
  nodes_[s.node()].ref_count++;
  return slot;
}

std::vector<uint32_t> Network::po_refs( node_id n ) const
{
  auto it = po_map_.find( n );
  return it == po_map_.end() ? std::vector<uint32_t>{} : it->second;
}

uint32_t Network::depth() const
{
  uint32_t d = 0;
  for ( node_id n = 0; n < nodes_.size(); ++n )
  {
    if ( !nodes_[n].dead && is_gate( n ) )
    {
      d = std::max( d, nodes_[n].level );
    }
  }
  return d;
}

std::vector<node_id> Network::topo_order() const
{
  std::vector<node_id> order;
  order.reserve( nodes_.size() );
  if ( ids_topological_ )
  {
    for ( node_id n = 0; n < nodes_.size(); ++n )
    {
      if ( !nodes_[n].dead )
      {
        order.push_back( n );
      }
    }
    return order;
  }

  uint32_t epoch = new_epoch();
  std::vector<node_id> stack;
  for ( node_id seed = 0; seed < nodes_.size(); ++seed )
  {
    if ( nodes_[seed].dead || visit_mark_[seed] == epoch )
    {
      continue;
    }
    stack.push_back( seed );
    while ( !stack.empty() )
    {
      node_id n = stack.back();
      if ( visit_mark_[n] == epoch )
      {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      if ( is_gate( n ) )
      {
        for ( auto const& f : nodes_[n].fanin )
        {
          if ( visit_mark_[f.node()] != epoch )
          {
            ready = false;
            stack.push_back( f.node() );
          }
        }
      }
      if ( ready )
      {
        visit_mark_[n] = epoch;
        order.push_back( n );
        stack.pop_back();
      }
    }
  }
  return order;
}

bool Network::in_tfi( node_id n, node_id target ) const
{
  if ( n == target )
  {
    return true;
  }
  uint32_t epoch = new_epoch();
  std::vector<node_id> stack{ n };
  visit_mark_[n] = epoch;
  while ( !stack.empty() )
  {
    node_id cur = stack.back();
    stack.pop_back();
    if ( !is_gate( cur ) )
    {
      continue;
    }
    for ( auto const& f : nodes_[cur].fanin )
    {
      node_id m = f.node();
      if ( m == target )
      {
        return true;
      }
      if ( visit_mark_[m] != epoch )
      {
        visit_mark_[m] = epoch;
        stack.push_back( m );
      }
    }
  }
  return false;
}

std::vector<node_id> Network::mffc( node_id root ) const
{
  assert( is_gate( root ) && !nodes_[root].dead );
  auto& self = const_cast<Network&>( *this );
  std::vector<node_id> cone{ root };
  std::vector<node_id> decremented;
  std::vector<node_id> stack{ root };
  while ( !stack.empty() )
  {
    node_id n = stack.back();
    stack.pop_back();
    for ( auto const& f : self.nodes_[n].fanin )
    {
      node_id m = f.node();
      assert( self.nodes_[m].ref_count > 0 );
      self.nodes_[m].ref_count--;
      decremented.push_back( m );
      if ( self.nodes_[m].ref_count == 0 && is_gate( m ) )
      {
        cone.push_back( m );
        stack.push_back( m );
      }
    }
  }
  for ( auto m : decremented )
  {
    self.nodes_[m].ref_count++;
  }
  std::sort( cone.begin(), cone.end() );
  return cone;
}

void Network::sweep_dead( node_id start )
{
  std::vector<node_id> stack{ start };
  while ( !stack.empty() )
  {
    node_id n = stack.back();
    stack.pop_back();
    if ( nodes_[n].dead || !is_gate( n ) || nodes_[n].fanout_count != 0 )
    {
      continue;
    }
    strash_erase( n );
    nodes_[n].dead = true;
    num_gates_--;
    record( NetEvent::Died, n );
    for ( auto const& f : nodes_[n].fanin )
    {
      remove_fanout( f.node(), n );
      if ( nodes_[f.node()].fanout_count == 0 && is_gate( f.node() ) )
      {
        stack.push_back( f.node() );
      }
    }
  }
}

void Network::substitute( node_id old_root, Signal new_sig, bool check_cycle )
{
  assert( is_gate( old_root ) && !nodes_[old_root].dead );
  assert( !nodes_[new_sig.node()].dead );
  if ( new_sig == Signal( old_root, false ) )
  {
    return;
  }
  if ( check_cycle && in_tfi( new_sig.node(), old_root ) )
  {
    throw CycleError{};
  }

  struct Entry
  {
    enum Phase : uint8_t
    {
      Redirect,
      Delete
    };
    Phase phase;
    node_id node;
    Signal target;
  };
  std::vector<Entry> work;
  work.push_back( Entry{ Entry::Redirect, old_root, new_sig } );

  while ( !work.empty() )
  {
    Entry e = work.back();
    work.pop_back();
    node_id o = e.node;

    if ( e.phase == Entry::Delete )
    {
      if ( !nodes_[o].dead && nodes_[o].fanout_count == 0 )
      {
        sweep_dead( o );
      }
      continue;
    }

    if ( nodes_[o].dead )
    {
      continue;
    }
    Signal r = e.target;
    assert( !nodes_[r.node()].dead );
    bool const is_flip = r.node() == o;

    if ( !is_flip )
    {
      strash_erase( o );
      work.push_back( Entry{ Entry::Delete, o, Signal() } );
    }

    /* primary outputs */
    if ( auto it = po_map_.find( o ); it != po_map_.end() )
    {
      auto slots = std::move( it->second );
      po_map_.erase( it );
      for ( auto slot : slots )
      {
        assert( pos_[slot].node() == o );
        pos_[slot] = Signal( r.node(), pos_[slot].complemented() ^ r.complemented() );
        po_map_[r.node()].push_back( slot );
        if ( !is_flip )
        {
          nodes_[o].fanout_count--;
          nodes_[o].ref_count--;
          nodes_[r.node()].fanout_count++;
          nodes_[r.node()].ref_count++;
        }
      }
    }

    /* gate fanouts */
    auto snapshot = fanouts_[o];
    for ( auto g : snapshot )
    {
      if ( nodes_[g].dead )
      {
        continue;
      }
      uint32_t i;
      if ( nodes_[g].fanin[0].node() == o )
      {
        i = 0;
      }
      else if ( nodes_[g].fanin[1].node() == o )
      {
        i = 1;
      }
      else
      {
        continue; /* already repatched by a nested merge */
      }

      strash_erase( g );
      bool const c = nodes_[g].fanin[i].complemented();
      Signal new_fanin( r.node(), r.complemented() ^ c );
      Signal other = nodes_[g].fanin[1 - i];
      remove_fanout( o, g );
      nodes_[g].fanin[i] = new_fanin;
      add_fanout( r.node(), g );

      Signal merged;
      if ( simplify_pair( nodes_[g].kind, new_fanin, other, &merged ) )
      {
        work.push_back( Entry{ Entry::Redirect, g, merged } );
        continue;
      }

      bool flip = false;
      if ( nodes_[g].kind == NodeKind::Xor )
      {
        flip = nodes_[g].fanin[0].complemented() ^ nodes_[g].fanin[1].complemented();
        nodes_[g].fanin[0] = Signal( nodes_[g].fanin[0].node(), false );
        nodes_[g].fanin[1] = Signal( nodes_[g].fanin[1].node(), false );
      }
      if ( nodes_[g].fanin[1].data < nodes_[g].fanin[0].data )
      {
        std::swap( nodes_[g].fanin[0], nodes_[g].fanin[1] );
      }
      nodes_[g].level = std::max( nodes_[nodes_[g].fanin[0].node()].level,
                                  nodes_[nodes_[g].fanin[1].node()].level ) +
                        1;
      if ( nodes_[g].fanin[0].node() >= g || nodes_[g].fanin[1].node() >= g )
      {
        ids_topological_ = false;
      }

      auto& map = nodes_[g].kind == NodeKind::And ? and_strash_ : xor_strash_;
      uint64_t key = strash_key( nodes_[g].fanin[0], nodes_[g].fanin[1] );
      auto hit = map.find( key );
      if ( hit != map.end() && hit->second != g )
      {
        work.push_back( Entry{ Entry::Redirect, g, Signal( hit->second, flip ) } );
      }
      else
      {
        map[key] = g;
        if ( flip )
        {
          work.push_back( Entry{ Entry::Redirect, g, Signal( g, true ) } );
        }
      }
    }
  }
}

std::vector<Signal> Network::cleanup()
{
  Network fresh;
  fresh.log_events_ = log_events_;
  std::vector<Signal> map( nodes_.size(), const0 );
  std::vector<bool> mapped( nodes_.size(), false );
  mapped[0] = true;

  for ( uint32_t i = 0; i < pis_.size(); ++i )
  {
    map[pis_[i]] = fresh.create_pi( pi_names_[i] );
    mapped[pis_[i]] = true;
  }

  std::vector<node_id> stack;
  for ( auto const& po : pos_ )
  {
    stack.push_back( po.node() );
    while ( !stack.empty() )
    {
      node_id n = stack.back();
      if ( mapped[n] )
      {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for ( auto const& f : nodes_[n].fanin )
      {
        if ( !mapped[f.node()] )
        {
          ready = false;
          stack.push_back( f.node() );
        }
      }
      if ( ready )
      {
        map[n] = fresh.create_gate( nodes_[n].kind,
                                    map[nodes_[n].fanin[0].node()] ^ nodes_[n].fanin[0].complemented(),
                                    map[nodes_[n].fanin[1].node()] ^ nodes_[n].fanin[1].complemented() );
        mapped[n] = true;
        stack.pop_back();
      }
    }
  }
  for ( auto const& po : pos_ )
  {
    fresh.add_po( map[po.node()] ^ po.complemented() );
  }
  *this = std::move( fresh );
  return map;
}

bool Network::check_strash_unique() const
{
  std::unordered_map<uint64_t, uint32_t> seen;
  bool ok = true;
  foreach_gate( [&]( node_id n ) {
    uint64_t key = ( uint64_t( nodes_[n].kind == NodeKind::And ? 1 : 2 ) << 62 ) ^
                   strash_key( nodes_[n].fanin[0], nodes_[n].fanin[1] );
    if ( ++seen[key] > 1 )
    {
      ok = false;
    }
  } );
  return ok;
}

bool Network::check_counts() const
{
  std::vector<uint32_t> counts( nodes_.size(), 0 );
  foreach_gate( [&]( node_id n ) {
    counts[nodes_[n].fanin[0].node()]++;
    counts[nodes_[n].fanin[1].node()]++;
  } );
  for ( auto const& po : pos_ )
  {
    counts[po.node()]++;
  }
  for ( node_id n = 0; n < nodes_.size(); ++n )
  {
    if ( nodes_[n].dead )
    {
      continue;
    }
    if ( nodes_[n].fanout_count != counts[n] || nodes_[n].ref_count != counts[n] )
    {
      return false;
    }
  }
  return true;
}

} // namespace anysyn
