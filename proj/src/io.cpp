#include "anysyn/io.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace anysyn
{

namespace
{

struct LineReader
{
  std::istream& in;
  uint64_t line = 0;

  bool next( std::string& out )
  {
    if ( !std::getline( in, out ) )
    {
      return false;
    }
    ++line;
    if ( !out.empty() && out.back() == '\r' )
    {
      out.pop_back();
    }
    return true;
  }

  [[noreturn]] void fail( std::string const& what ) const
  {
    throw ParseError( what, line );
  }
};

std::vector<uint64_t> parse_numbers( LineReader& r, std::string const& s, size_t expected )
{
  std::istringstream iss( s );
  std::vector<uint64_t> out;
  uint64_t v;
  while ( iss >> v )
  {
    out.push_back( v );
  }
  std::string rest;
  if ( iss.clear(), iss >> rest )
  {
    r.fail( "unexpected token '" + rest + "'" );
  }
  if ( out.size() != expected )
  {
    r.fail( "expected " + std::to_string( expected ) + " numbers" );
  }
  return out;
}

Network finish_aiger( uint64_t max_var, uint64_t num_inputs, uint64_t num_outputs,
                      std::vector<std::pair<uint64_t, std::pair<uint64_t, uint64_t>>> const& gates,
                      std::vector<uint64_t> const& outputs, LineReader& r )
{
  Network net;
  std::vector<Signal> var2sig( max_var + 1, const0 );
  std::vector<bool> defined( max_var + 1, false );
  defined[0] = true;
  for ( uint64_t i = 1; i <= num_inputs; ++i )
  {
    var2sig[i] = net.create_pi();
    defined[i] = true;
  }
  auto lit2sig = [&]( uint64_t lit ) {
    uint64_t var = lit >> 1;
    if ( var > max_var || !defined[var] )
    {
      r.fail( "reference to undefined literal " + std::to_string( lit ) );
    }
    return var2sig[var] ^ bool( lit & 1 );
  };
  for ( auto const& [lhs, rhs] : gates )
  {
    uint64_t var = lhs >> 1;
    var2sig[var] = net.create_and( lit2sig( rhs.first ), lit2sig( rhs.second ) );
    defined[var] = true;
  }
  for ( uint64_t i = 0; i < num_outputs; ++i )
  {
    net.add_po( lit2sig( outputs[i] ) );
  }
  return net;
}

Network read_aiger_ascii( LineReader& r, std::vector<uint64_t> const& header )
{
  uint64_t const m = header[0], i = header[1], l = header[2], o = header[3], a = header[4];
  if ( l != 0 )
  {
    r.fail( "latches are not supported (combinational networks only)" );
  }
  std::string line;
  for ( uint64_t k = 0; k < i; ++k )
  {
    if ( !r.next( line ) )
    {
      r.fail( "unexpected end of file in input section" );
    }
    auto v = parse_numbers( r, line, 1 );
    if ( v[0] != 2 * ( k + 1 ) )
    {
      r.fail( "input literal must be " + std::to_string( 2 * ( k + 1 ) ) );
    }
  }
  std::vector<uint64_t> outputs;
  for ( uint64_t k = 0; k < o; ++k )
  {
    if ( !r.next( line ) )
    {
      r.fail( "unexpected end of file in output section" );
    }
    outputs.push_back( parse_numbers( r, line, 1 )[0] );
  }
  std::vector<std::pair<uint64_t, std::pair<uint64_t, uint64_t>>> gates;
  uint64_t prev_lhs = 2 * i;
  for ( uint64_t k = 0; k < a; ++k )
  {
    if ( !r.next( line ) )
    {
      r.fail( "unexpected end of file in gate section" );
    }
    auto v = parse_numbers( r, line, 3 );
    if ( v[0] & 1 )
    {
      r.fail( "gate left-hand side must be even" );
    }
    if ( v[0] <= prev_lhs )
    {
      r.fail( "gate left-hand sides must be strictly increasing" );
    }
    if ( v[0] > 2 * m + 1 )
    {
      r.fail( "gate variable exceeds declared maximum" );
    }
    if ( v[1] >= v[0] || v[2] >= v[0] )
    {
      r.fail( "gate right-hand side references a forward literal" );
    }
    prev_lhs = v[0];
    gates.push_back( { v[0], { v[1], v[2] } } );
  }
  return finish_aiger( m, i, o, gates, outputs, r );
}

Network read_aiger_binary( LineReader& r, std::vector<uint64_t> const& header )
{
  uint64_t const m = header[0], i = header[1], l = header[2], o = header[3], a = header[4];
  if ( l != 0 )
  {
    r.fail( "latches are not supported (combinational networks only)" );
  }
  if ( m < i + a )
  {
    r.fail( "inconsistent header counts" );
  }
  std::string line;
  std::vector<uint64_t> outputs;
  for ( uint64_t k = 0; k < o; ++k )
  {
    if ( !r.next( line ) )
    {
      r.fail( "unexpected end of file in output section" );
    }
    outputs.push_back( parse_numbers( r, line, 1 )[0] );
  }
  auto read_delta = [&]() {
    uint64_t x = 0;
    uint32_t shift = 0;
    int ch;
    do
    {
      ch = r.in.get();
      if ( ch == EOF )
      {
        r.fail( "unexpected end of binary gate data" );
      }
      x |= uint64_t( ch & 0x7f ) << shift;
      shift += 7;
    } while ( ch & 0x80 );
    return x;
  };
  std::vector<std::pair<uint64_t, std::pair<uint64_t, uint64_t>>> gates;
  for ( uint64_t k = 0; k < a; ++k )
  {
    uint64_t lhs = 2 * ( i + l + k + 1 );
    uint64_t delta0 = read_delta();
    if ( delta0 > lhs )
    {
      r.fail( "invalid delta in binary gate data" );
    }
    uint64_t rhs0 = lhs - delta0;
    uint64_t delta1 = read_delta();
    if ( delta1 > rhs0 )
    {
      r.fail( "invalid delta in binary gate data" );
    }
    uint64_t rhs1 = rhs0 - delta1;
    gates.push_back( { lhs, { rhs0, rhs1 } } );
  }
  return finish_aiger( m, i, o, gates, outputs, r );
}

} // namespace

Network read_aiger( std::istream& in, bool xor_extract )
{
  LineReader r{ in };
  std::string line;
  if ( !r.next( line ) )
  {
    r.fail( "empty file" );
  }
  std::istringstream iss( line );
  std::string magic;
  iss >> magic;
  std::vector<uint64_t> header;
  uint64_t v;
  while ( iss >> v )
  {
    header.push_back( v );
  }
  if ( header.size() != 5 )
  {
    r.fail( "header must be '" + std::string( "aag" ) + " M I L O A'" );
  }
  Network net;
  if ( magic == "aag" )
  {
    net = read_aiger_ascii( r, header );
  }
  else if ( magic == "aig" )
  {
    net = read_aiger_binary( r, header );
  }
  else
  {
    r.fail( "unknown AIGER magic '" + magic + "'" );
  }
  if ( xor_extract )
  {
    extract_xors( net );
  }
  return net;
}

Network read_aiger_file( std::string const& path, bool xor_extract )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw std::runtime_error( "cannot open '" + path + "'" );
  }
  return read_aiger( in, xor_extract );
}

void write_aiger( Network const& net, std::ostream& out )
{
  auto order = net.topo_order();
  uint64_t num_ands = 0;
  for ( auto n : order )
  {
    if ( net.is_gate( n ) )
    {
      num_ands += net.kind( n ) == NodeKind::And ? 1 : 3;
    }
  }
  uint64_t const i = net.num_pis();
  uint64_t const m = i + num_ands;
  out << "aag " << m << ' ' << i << " 0 " << net.num_pos() << ' ' << num_ands << '\n';
  for ( uint64_t k = 1; k <= i; ++k )
  {
    out << 2 * k << '\n';
  }

  std::vector<uint64_t> lit( net.size(), 0 );
  lit[0] = 0;
  for ( uint64_t k = 0; k < i; ++k )
  {
    lit[net.pi_at( uint32_t( k ) )] = 2 * ( k + 1 );
  }

  std::ostringstream gates;
  uint64_t next_var = i;
  auto emit_and = [&]( uint64_t a, uint64_t b ) {
    uint64_t lhs = 2 * ++next_var;
    gates << lhs << ' ' << std::max( a, b ) << ' ' << std::min( a, b ) << '\n';
    return lhs;
  };
  for ( auto n : order )
  {
    if ( !net.is_gate( n ) )
    {
      continue;
    }
    uint64_t l0 = lit[net.fanin0( n ).node()] ^ uint64_t( net.fanin0( n ).complemented() );
    uint64_t l1 = lit[net.fanin1( n ).node()] ^ uint64_t( net.fanin1( n ).complemented() );
    if ( net.kind( n ) == NodeKind::And )
    {
      lit[n] = emit_and( l0, l1 );
    }
    else
    {
      uint64_t g1 = emit_and( l0, l1 ^ 1 );
      uint64_t g2 = emit_and( l0 ^ 1, l1 );
      lit[n] = emit_and( g1 ^ 1, g2 ^ 1 ) ^ 1;
    }
  }
  for ( auto const& po : net.pos() )
  {
    out << ( lit[po.node()] ^ uint64_t( po.complemented() ) ) << '\n';
  }
  out << gates.str();
}

void write_aiger_file( Network const& net, std::string const& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw std::runtime_error( "cannot open '" + path + "' for writing" );
  }
  write_aiger( net, out );
}

Network read_xag( std::istream& in )
{
  LineReader r{ in };
  Network net;
  std::vector<Signal> id2sig{ const0 };
  std::string line;
  auto lit2sig = [&]( uint64_t lit ) {
    uint64_t id = lit >> 1;
    if ( id >= id2sig.size() )
    {
      r.fail( "forward or undefined literal " + std::to_string( lit ) );
    }
    return id2sig[id] ^ bool( lit & 1 );
  };
  while ( r.next( line ) )
  {
    if ( line.empty() || line[0] == '#' )
    {
      continue;
    }
    std::istringstream iss( line );
    std::string kind;
    iss >> kind;
    if ( kind == "pi" )
    {
      std::string name;
      if ( !( iss >> name ) )
      {
        r.fail( "pi line needs a name" );
      }
      id2sig.push_back( net.create_pi( name ) );
    }
    else if ( kind == "and" || kind == "xor" )
    {
      uint64_t id, l0, l1;
      if ( !( iss >> id >> l0 >> l1 ) )
      {
        r.fail( "gate line needs 'id lit lit'" );
      }
      if ( id != id2sig.size() )
      {
        r.fail( "gate ids must be dense and increasing (expected " +
                std::to_string( id2sig.size() ) + ")" );
      }
      id2sig.push_back( net.create_gate( kind == "and" ? NodeKind::And : NodeKind::Xor,
                                         lit2sig( l0 ), lit2sig( l1 ) ) );
    }
    else if ( kind == "po" )
    {
      uint64_t l;
      if ( !( iss >> l ) )
      {
        r.fail( "po line needs a literal" );
      }
      net.add_po( lit2sig( l ) );
    }
    else
    {
      r.fail( "unknown directive '" + kind + "'" );
    }
    std::string rest;
    if ( iss >> rest )
    {
      r.fail( "trailing token '" + rest + "'" );
    }
  }
  return net;
}

Network read_xag_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw std::runtime_error( "cannot open '" + path + "'" );
  }
  return read_xag( in );
}

void write_xag( Network const& net, std::ostream& out )
{
  std::vector<uint64_t> id( net.size(), 0 );
  uint64_t next = 0;
  for ( uint32_t k = 0; k < net.num_pis(); ++k )
  {
    id[net.pi_at( k )] = ++next;
    std::string name = net.pi_name( k );
    std::replace_if(
        name.begin(), name.end(), []( char c ) { return std::isspace( (unsigned char)c ); }, '_' );
    out << "pi " << name << '\n';
  }
  for ( auto n : net.topo_order() )
  {
    if ( !net.is_gate( n ) )
    {
      continue;
    }
    id[n] = ++next;
    out << ( net.kind( n ) == NodeKind::And ? "and " : "xor " ) << id[n] << ' '
        << ( 2 * id[net.fanin0( n ).node()] + net.fanin0( n ).complemented() ) << ' '
        << ( 2 * id[net.fanin1( n ).node()] + net.fanin1( n ).complemented() ) << '\n';
  }
  for ( auto const& po : net.pos() )
  {
    out << "po " << ( 2 * id[po.node()] + po.complemented() ) << '\n';
  }
}

void write_xag_file( Network const& net, std::string const& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw std::runtime_error( "cannot open '" + path + "' for writing" );
  }
  write_xag( net, out );
}

namespace
{

bool has_suffix( std::string const& s, std::string const& suffix )
{
  return s.size() >= suffix.size() && s.compare( s.size() - suffix.size(), suffix.size(), suffix ) == 0;
}

} // namespace

Network read_network_file( std::string const& path, bool xor_extract )
{
  if ( has_suffix( path, ".xag" ) )
  {
    Network net = read_xag_file( path );
    if ( xor_extract )
    {
      extract_xors( net );
    }
    return net;
  }
  return read_aiger_file( path, xor_extract );
}

void write_network_file( Network const& net, std::string const& path )
{
  if ( has_suffix( path, ".xag" ) )
  {
    write_xag_file( net, path );
  }
  else
  {
    write_aiger_file( net, path );
  }
}

uint32_t extract_xors( Network& net )
{
  uint32_t extracted = 0;
  uint32_t const end = net.size();
  for ( node_id t = 0; t < end; ++t )
  {
    if ( net.is_dead( t ) || net.kind( t ) != NodeKind::And )
    {
      continue;
    }
    Signal f0 = net.fanin0( t ), f1 = net.fanin1( t );
    if ( !f0.complemented() || !f1.complemented() )
    {
      continue;
    }
    node_id g1 = f0.node(), g2 = f1.node();
    if ( net.kind( g1 ) != NodeKind::And || net.kind( g2 ) != NodeKind::And ||
         net.fanout_count( g1 ) != 1 || net.fanout_count( g2 ) != 1 )
    {
      continue;
    }
    Signal u1 = net.fanin0( g1 ), v1 = net.fanin1( g1 );
    Signal u2 = net.fanin0( g2 ), v2 = net.fanin1( g2 );
    if ( u2.node() != u1.node() )
    {
      std::swap( u2, v2 );
    }
    if ( u1.node() != u2.node() || v1.node() != v2.node() || u1.node() == v1.node() )
    {
      continue;
    }
    if ( u1.complemented() == u2.complemented() || v1.complemented() == v2.complemented() )
    {
      continue;
    }
    /* t = (u1 & v1) nor (u2 & v2) with pairwise opposite polarities,
     * i.e. t = u ^ v up to the polarity parity of one side */
    bool parity = u1.complemented() ^ v1.complemented();
    Signal x = net.create_xor( Signal( u1.node(), false ), Signal( v1.node(), false ) );
    net.substitute( t, x ^ parity, /*check_cycle=*/false );
    ++extracted;
  }
  return extracted;
}

} // namespace anysyn
