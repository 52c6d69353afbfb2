#pragma once

#include "anysyn/xag.hpp"

/* the three hand-built example networks over inputs a, b, c with outputs
 * f = ab + bc and g = abc */
namespace fixtures
{

using namespace anysyn;

struct Moto
{
  Network net;
  Signal a, b, c;
  Signal f, g;
  std::vector<node_id> gate_ids;
};

/* four AND gates: n1 = ab, n2 = bc, f = n1 + n2, g = n1 n2 */
inline Moto make_na()
{
  Moto m;
  m.a = m.net.create_pi( "a" );
  m.b = m.net.create_pi( "b" );
  m.c = m.net.create_pi( "c" );
  Signal n1 = m.net.create_and( m.a, m.b );
  Signal n2 = m.net.create_and( m.b, m.c );
  Signal n3 = !m.net.create_and( !n1, !n2 ); /* or */
  Signal n4 = m.net.create_and( n1, n2 );
  m.f = n3;
  m.g = n4;
  m.net.add_po( m.f );
  m.net.add_po( m.g );
  m.gate_ids = { n1.node(), n2.node(), n3.node(), n4.node() };
  return m;
}

/* four AND gates with one level-skewed node: n1 = ab, n2 = bc,
 * f = n1 + n2, g = a n2 (the skewed one) */
inline Moto make_nb()
{
  Moto m;
  m.a = m.net.create_pi( "a" );
  m.b = m.net.create_pi( "b" );
  m.c = m.net.create_pi( "c" );
  Signal n1 = m.net.create_and( m.a, m.b );
  Signal n2 = m.net.create_and( m.b, m.c );
  Signal n6 = !m.net.create_and( !n1, !n2 );
  Signal n7 = m.net.create_and( m.a, n2 );
  m.f = n6;
  m.g = n7;
  m.net.add_po( m.f );
  m.net.add_po( m.g );
  m.gate_ids = { n1.node(), n2.node(), n6.node(), n7.node() };
  return m;
}

/* three ANDs and two XORs: n1 = ab, n2 = bc, n8 = n1 ^ n2, n9 = n1 n2,
 * n10 = n8 ^ n9 */
inline Moto make_nc()
{
  Moto m;
  m.a = m.net.create_pi( "a" );
  m.b = m.net.create_pi( "b" );
  m.c = m.net.create_pi( "c" );
  Signal n1 = m.net.create_and( m.a, m.b );
  Signal n2 = m.net.create_and( m.b, m.c );
  Signal n8 = m.net.create_xor( n1, n2 );
  Signal n9 = m.net.create_and( n1, n2 );
  Signal n10 = m.net.create_xor( n8, n9 );
  m.f = n10;
  m.g = n9;
  m.net.add_po( m.f );
  m.net.add_po( m.g );
  m.gate_ids = { n1.node(), n2.node(), n8.node(), n9.node(), n10.node() };
  return m;
}

/* structural copy; po_hook(index, signal) -> signal edits outputs, and a
 * non-negative keep limits how many outputs survive */
template<typename Fn>
inline Network rebuild( Network const& net, Fn&& po_hook, int64_t keep = -1 )
{
  Network fresh;
  std::vector<Signal> map( net.size(), const0 );
  for ( uint32_t i = 0; i < net.num_pis(); ++i )
  {
    map[net.pi_at( i )] = fresh.create_pi( net.pi_name( i ) );
  }
  for ( auto n : net.topo_order() )
  {
    if ( net.is_gate( n ) )
    {
      map[n] = fresh.create_gate( net.kind( n ),
                                  map[net.fanin0( n ).node()] ^ net.fanin0( n ).complemented(),
                                  map[net.fanin1( n ).node()] ^ net.fanin1( n ).complemented() );
    }
  }
  for ( uint32_t po = 0; po < net.num_pos(); ++po )
  {
    if ( keep >= 0 && po >= uint64_t( keep ) )
    {
      break;
    }
    fresh.add_po( po_hook( po, map[net.pos()[po].node()] ^ net.pos()[po].complemented() ) );
  }
  return fresh;
}

} // namespace fixtures
