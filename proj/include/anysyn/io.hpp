#pragma once

#include "anysyn/xag.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace anysyn
{

class ParseError : public std::runtime_error
{
public:
  ParseError( std::string const& what, uint64_t line )
      : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), line_( line )
  {
  }
  uint64_t line() const { return line_; }

private:
  uint64_t line_;
};

/* ASCII ("aag") or binary ("aig") AIGER, combinational subset only.
 * With xor_extract, single-fanout 3-AND XOR patterns are rewritten into
 * XOR nodes after import. */
Network read_aiger( std::istream& in, bool xor_extract = false );
Network read_aiger_file( std::string const& path, bool xor_extract = false );

/* ASCII AIGER; XOR nodes are lowered to the 3-AND pattern */
void write_aiger( Network const& net, std::ostream& out );
void write_aiger_file( Network const& net, std::string const& path );

/* native line-oriented format:
 *   pi <name> | and <id> <lit> <lit> | xor <id> <lit> <lit> | po <lit>
 * where lit = 2*id (+1 if complemented); writer output is canonical and
 * byte-stable under re-serialization */
Network read_xag( std::istream& in );
Network read_xag_file( std::string const& path );
void write_xag( Network const& net, std::ostream& out );
void write_xag_file( Network const& net, std::string const& path );

/* detect format by extension/content and dispatch */
Network read_network_file( std::string const& path, bool xor_extract = false );
void write_network_file( Network const& net, std::string const& path );

/* rewrite 3-AND XOR patterns (both polarities) into XOR nodes; inner
 * ANDs must have no other fanout; returns number of extracted XORs */
uint32_t extract_xors( Network& net );

} // namespace anysyn
