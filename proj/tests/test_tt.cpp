#include "anysyn/truth_table.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace anysyn;

namespace
{

/* row-by-row reference built from a lambda over variable assignments */
template<typename Fn>
TruthTable from_rows( uint32_t num_vars, Fn&& fn )
{
  TruthTable t( num_vars );
  for ( uint64_t row = 0; row < t.num_bits(); ++row )
  {
    bool bits[16];
    for ( uint32_t v = 0; v < num_vars; ++v )
    {
      bits[v] = ( row >> v ) & 1;
    }
    t.set_bit( row, fn( bits ) );
  }
  return t;
}

} // namespace

TEST_CASE( "constant tables" )
{
  CHECK( tt_const( 2, false ).to_hex() == "0" );
  CHECK( tt_const( 0, true ).to_hex() == "1" );
  CHECK( tt_const( 3, true ).to_hex() == "ff" );
  CHECK( tt_const( 2, false ).is_const0() );
  CHECK( tt_const( 7, true ).is_const1() );
  CHECK_THROWS_AS( TruthTable( 17 ), std::out_of_range );
}

TEST_CASE( "projection tables" )
{
  /* rows 0..3 of x0 read 0,1,0,1 */
  TruthTable x0 = tt_var( 2, 0 );
  CHECK_FALSE( x0.get_bit( 0 ) );
  CHECK( x0.get_bit( 1 ) );
  CHECK_FALSE( x0.get_bit( 2 ) );
  CHECK( x0.get_bit( 3 ) );

  TruthTable x1 = tt_var( 2, 1 );
  CHECK_FALSE( x1.get_bit( 0 ) );
  CHECK_FALSE( x1.get_bit( 1 ) );
  CHECK( x1.get_bit( 2 ) );
  CHECK( x1.get_bit( 3 ) );

  TruthTable x2 = tt_var( 3, 2 );
  for ( uint64_t row = 0; row < 8; ++row )
  {
    CHECK( x2.get_bit( row ) == bool( row & 4 ) );
  }

  CHECK_THROWS_AS( tt_var( 2, 2 ), std::out_of_range );

  /* variable i toggles with period 2^i, also beyond one word */
  for ( uint32_t i : { 5u, 6u, 7u, 10u } )
  {
    TruthTable v = tt_var( 11, i );
    for ( uint64_t row : { uint64_t( 0 ), uint64_t( 1 ) << i, ( uint64_t( 1 ) << i ) - 1 } )
    {
      CHECK( v.get_bit( row ) == bool( ( row >> i ) & 1 ) );
    }
  }
}

TEST_CASE( "apply" )
{
  TruthTable x0 = tt_var( 2, 0 ), x1 = tt_var( 2, 1 );
  CHECK( tt_apply( TableOp::And, x0, &x1 ) == from_rows( 2, []( bool* b ) { return b[0] && b[1]; } ) );
  CHECK( tt_apply( TableOp::Xor, x0, &x1 ) == from_rows( 2, []( bool* b ) { return b[0] != b[1]; } ) );
  CHECK( tt_apply( TableOp::Not, tt_and( x0, x1 ), nullptr ) ==
         from_rows( 2, []( bool* b ) { return !( b[0] && b[1] ); } ) );

  TruthTable w = tt_var( 3, 0 );
  CHECK_THROWS_AS( tt_apply( TableOp::And, x0, &w ), std::invalid_argument );
  CHECK_THROWS_AS( tt_apply( TableOp::Not, x0, &x1 ), std::invalid_argument );
  CHECK_THROWS_AS( tt_apply( TableOp::And, x0, nullptr ), std::invalid_argument );
}

TEST_CASE( "apply matches row-wise evaluation exhaustively on two variables" )
{
  for ( uint32_t fa = 0; fa < 16; ++fa )
  {
    for ( uint32_t fb = 0; fb < 16; ++fb )
    {
      TruthTable a( 2 ), b( 2 );
      for ( uint32_t r = 0; r < 4; ++r )
      {
        a.set_bit( r, ( fa >> r ) & 1 );
        b.set_bit( r, ( fb >> r ) & 1 );
      }
      TruthTable t_and = tt_and( a, b ), t_xor = tt_xor( a, b ), t_not = tt_not( a );
      for ( uint32_t r = 0; r < 4; ++r )
      {
        CHECK( t_and.get_bit( r ) == ( a.get_bit( r ) && b.get_bit( r ) ) );
        CHECK( t_xor.get_bit( r ) == ( a.get_bit( r ) != b.get_bit( r ) ) );
        CHECK( t_not.get_bit( r ) == !a.get_bit( r ) );
      }
    }
  }
}

TEST_CASE( "apply matches row-wise evaluation on random wide tables" )
{
  std::mt19937_64 rng( 42 );
  for ( uint32_t trial = 0; trial < 200; ++trial )
  {
    uint32_t nv = 7 + trial % 6;
    TruthTable a( nv ), b( nv );
    for ( uint32_t w = 0; w < a.num_words(); ++w )
    {
      a.words()[w] = rng();
      b.words()[w] = rng();
    }
    TruthTable t_and = tt_and( a, b ), t_xor = tt_xor( a, b );
    std::uniform_int_distribution<uint64_t> rows( 0, a.num_bits() - 1 );
    for ( uint32_t probe = 0; probe < 50; ++probe )
    {
      uint64_t r = rows( rng );
      CHECK( t_and.get_bit( r ) == ( a.get_bit( r ) && b.get_bit( r ) ) );
      CHECK( t_xor.get_bit( r ) == ( a.get_bit( r ) != b.get_bit( r ) ) );
    }
  }
}

TEST_CASE( "implication" )
{
  /* x & y implies x */
  TruthTable x0 = tt_var( 2, 0 ), x1 = tt_var( 2, 1 );
  CHECK( implies( tt_and( x0, x1 ), x0 ) );
  /* x | y does not imply x & y */
  TruthTable both_or = tt_not( tt_and( tt_not( x0 ), tt_not( x1 ) ) );
  CHECK_FALSE( implies( both_or, tt_and( x0, x1 ) ) );
  CHECK( implies( both_or, both_or ) );
  CHECK_THROWS_AS( implies( x0, tt_var( 3, 0 ) ), std::invalid_argument );
}

TEST_CASE( "padding bits stay clear" )
{
  TruthTable t = tt_not( tt_const( 2, false ) );
  CHECK( t.words()[0] == 0xfull );
  TruthTable v = tt_not( tt_var( 3, 1 ) );
  CHECK( ( v.words()[0] & ~0xffull ) == 0 );
}

TEST_CASE( "hex rendering" )
{
  TruthTable t( 3 );
  t.set_bit( 3, true );
  t.set_bit( 6, true );
  t.set_bit( 7, true );
  CHECK( t.to_hex() == "c8" );
  CHECK( tt_var( 2, 0 ).to_hex() == "a" );
}
