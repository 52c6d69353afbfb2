#include "anysyn/window.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace anysyn
{

Cut WindowBuilder::reconv_cut( node_id root, uint32_t max_leaves )
{
  assert( net_.is_gate( root ) && !net_.is_dead( root ) );
  std::vector<node_id> leaves{ net_.fanin0( root ).node(), net_.fanin1( root ).node() };
  std::sort( leaves.begin(), leaves.end() );
  leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );

  auto contains = []( std::vector<node_id> const& v, node_id n ) {
    return std::binary_search( v.begin(), v.end(), n );
  };

  for ( uint32_t round = 0; round < max_expansions_; ++round )
  {
    node_id best = 0;
    int best_cost = 2; /* anything below this wins */
    for ( auto l : leaves )
    {
      if ( !net_.is_gate( l ) )
      {
        continue;
      }
      int cost = -1;
      node_id f0 = net_.fanin0( l ).node();
      node_id f1 = net_.fanin1( l ).node();
      if ( !contains( leaves, f0 ) )
      {
        ++cost;
      }
      if ( f1 != f0 && !contains( leaves, f1 ) )
      {
        ++cost;
      }
      if ( leaves.size() + cost > max_leaves )
      {
        continue;
      }
      if ( cost < best_cost )
      {
        best_cost = cost;
        best = l;
      }
    }
    if ( best_cost == 2 )
    {
      break;
    }
    leaves.erase( std::find( leaves.begin(), leaves.end(), best ) );
    for ( auto f : { net_.fanin0( best ).node(), net_.fanin1( best ).node() } )
    {
      if ( !contains( leaves, f ) )
      {
        leaves.insert( std::upper_bound( leaves.begin(), leaves.end(), f ), f );
      }
    }
  }
  return Cut{ root, std::move( leaves ) };
}

std::unordered_map<node_id, TruthTable> simulate_window(
    Network const& net, std::vector<node_id> const& leaves,
    std::vector<node_id> const& members )
{
  if ( leaves.size() > TruthTable::max_vars )
  {
    throw std::invalid_argument( "simulate_window: too many leaves" );
  }
  uint32_t const k = uint32_t( leaves.size() );
  std::unordered_map<node_id, TruthTable> tables;
  tables.reserve( leaves.size() + members.size() );
  for ( uint32_t i = 0; i < k; ++i )
  {
    tables.emplace( leaves[i], tt_var( k, i ) );
  }
  for ( auto m : members )
  {
    if ( tables.count( m ) )
    {
      continue; /* a member that is also a leaf */
    }
    auto f0 = net.fanin0( m ), f1 = net.fanin1( m );
    auto it0 = tables.find( f0.node() );
    auto it1 = tables.find( f1.node() );
    if ( it0 == tables.end() || it1 == tables.end() )
    {
      throw std::invalid_argument( "simulate_window: dangling fanin" );
    }
    TruthTable a = f0.complemented() ? tt_not( it0->second ) : it0->second;
    TruthTable b = f1.complemented() ? tt_not( it1->second ) : it1->second;
    tables.emplace( m, net.kind( m ) == NodeKind::And ? tt_and( a, b ) : tt_xor( a, b ) );
  }
  return tables;
}

bool Window::is_divisor( node_id n ) const
{
  return std::binary_search( divisors.begin(), divisors.end(), n );
}

Window WindowBuilder::build( Cut const& cut, uint32_t max_divisors )
{
  Window w;
  w.cut = cut;
  node_id const root = cut.root;
  size_t const net_size = net_.size();

  in_window_.begin( net_size );
  leaf_mask_.begin( net_size );
  for ( auto l : cut.leaves )
  {
    in_window_.set( l );
    leaf_mask_.set( l );
  }

  /* cone between root and leaves (DFS stopping at leaves) */
  std::vector<node_id> cone;
  stack_.clear();
  stack_.push_back( root );
  in_window_.set( root );
  while ( !stack_.empty() )
  {
    node_id n = stack_.back();
    stack_.pop_back();
    cone.push_back( n );
    for ( auto const& f : { net_.fanin0( n ), net_.fanin1( n ) } )
    {
      node_id m = f.node();
      if ( !in_window_.test( m ) )
      {
        in_window_.set( m );
        stack_.push_back( m );
      }
    }
  }

  /* window-restricted MFFC: deref through the cone, never below leaves */
  {
    std::unordered_map<node_id, uint32_t> count;
    auto ref = [&]( node_id n ) -> uint32_t& {
      auto it = count.find( n );
      if ( it == count.end() )
      {
        it = count.emplace( n, net_.fanout_count( n ) ).first;
      }
      return it->second;
    };
    w.mffc.push_back( root );
    stack_.clear();
    stack_.push_back( root );
    while ( !stack_.empty() )
    {
      node_id n = stack_.back();
      stack_.pop_back();
      for ( auto const& f : { net_.fanin0( n ), net_.fanin1( n ) } )
      {
        node_id m = f.node();
        uint32_t& c = ref( m );
        assert( c > 0 );
        if ( --c == 0 && net_.is_gate( m ) )
        {
          w.mffc.push_back( m );
          if ( !leaf_mask_.test( m ) )
          {
            stack_.push_back( m );
          }
        }
      }
    }
    std::sort( w.mffc.begin(), w.mffc.end() );
  }

  /* side nodes supported by the window, one level ring beyond the cone */
  uint32_t level_cap = 0;
  for ( auto n : cone )
  {
    level_cap = std::max( level_cap, net_.level( n ) );
  }
  ++level_cap;

  size_t const member_budget = size_t( max_divisors ) + w.mffc.size() + 1;
  std::vector<node_id> members = cone;
  std::vector<node_id> queue;
  queue.insert( queue.end(), cut.leaves.begin(), cut.leaves.end() );
  queue.insert( queue.end(), cone.begin(), cone.end() );
  for ( size_t qi = 0; qi < queue.size() && members.size() < member_budget; ++qi )
  {
    for ( auto g : net_.fanouts( queue[qi] ) )
    {
      if ( net_.is_dead( g ) || in_window_.test( g ) )
      {
        continue;
      }
      node_id const a = net_.fanin0( g ).node(), b = net_.fanin1( g ).node();
      if ( a == root || b == root )
      {
        continue; /* transitive fanout of root */
      }
      if ( !in_window_.test( a ) || !in_window_.test( b ) )
      {
        continue;
      }
      if ( net_.level( g ) > level_cap )
      {
        continue;
      }
      in_window_.set( g );
      members.push_back( g );
      queue.push_back( g );
      if ( members.size() >= member_budget )
      {
        break;
      }
    }
  }

  /* topological sort of members (ids may not be topological mid-pass) */
  {
    placed_.begin( net_size );
    for ( auto l : cut.leaves )
    {
      placed_.set( l );
    }
    std::sort( members.begin(), members.end() );
    std::vector<node_id> sorted;
    sorted.reserve( members.size() );
    stack_.clear();
    for ( auto seed : members )
    {
      if ( placed_.test( seed ) )
      {
        continue;
      }
      stack_.push_back( seed );
      while ( !stack_.empty() )
      {
        node_id n = stack_.back();
        if ( placed_.test( n ) )
        {
          stack_.pop_back();
          continue;
        }
        bool ready = true;
        for ( auto const& f : { net_.fanin0( n ), net_.fanin1( n ) } )
        {
          if ( in_window_.test( f.node() ) && !leaf_mask_.test( f.node() ) &&
               !placed_.test( f.node() ) )
          {
            ready = false;
            stack_.push_back( f.node() );
          }
        }
        if ( ready )
        {
          placed_.set( n );
          sorted.push_back( n );
          stack_.pop_back();
        }
      }
    }
    members = std::move( sorted );
  }

  w.members = members;
  w.tables = simulate_window( net_, cut.leaves, members );
  w.target = w.tables.at( root );

  /* divisors: members and leaves, minus MFFC and root, ascending ids */
  auto in_mffc = [&]( node_id n ) {
    return std::binary_search( w.mffc.begin(), w.mffc.end(), n );
  };
  std::vector<node_id> divisors;
  divisors.reserve( members.size() + cut.leaves.size() );
  for ( auto l : cut.leaves )
  {
    if ( !in_mffc( l ) && !net_.is_constant( l ) )
    {
      divisors.push_back( l );
    }
  }
  for ( auto m : members )
  {
    if ( m != root && !in_mffc( m ) )
    {
      divisors.push_back( m );
    }
  }
  std::sort( divisors.begin(), divisors.end() );
  if ( divisors.size() > max_divisors )
  {
    divisors.resize( max_divisors );
  }
  w.divisors = std::move( divisors );
  return w;
}

Cut reconv_cut( Network const& net, node_id root, uint32_t max_leaves )
{
  WindowBuilder builder( net );
  return builder.reconv_cut( root, max_leaves );
}

Window build_window( Network const& net, Cut const& cut, uint32_t max_divisors )
{
  WindowBuilder builder( net );
  return builder.build( cut, max_divisors );
}

} // namespace anysyn
