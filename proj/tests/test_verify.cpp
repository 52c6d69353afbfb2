#include "anysyn/gen.hpp"
#include "anysyn/verify.hpp"

#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace anysyn;

namespace
{

auto const keep_po = []( uint32_t, Signal s ) { return s; };

/* flip exactly one minterm of the single output */
Network flip_one_minterm( Network net, uint64_t minterm )
{
  REQUIRE( net.num_pos() == 1 );
  Signal cube = const1;
  for ( uint32_t i = 0; i < net.num_pis(); ++i )
  {
    Signal pi( net.pi_at( i ), false );
    cube = net.create_and( cube, ( minterm >> i ) & 1 ? pi : !pi );
  }
  Signal old_po = net.pos()[0];
  Signal flipped = net.create_xor( old_po, cube );
  net.substitute( old_po.node(), old_po.complemented() ? !flipped : flipped );
  return net;
}

bool eval_on( Network const& net, std::vector<bool> const& assignment, uint32_t po )
{
  std::vector<uint64_t> words( net.num_pis() );
  for ( uint32_t i = 0; i < net.num_pis(); ++i )
  {
    words[i] = assignment[i] ? ~uint64_t( 0 ) : 0;
  }
  return simulate_words( net, words )[po] & 1;
}

} // namespace

TEST_CASE( "network equals itself" )
{
  GenConfig cfg;
  cfg.num_pis = 8;
  cfg.num_gates = 120;
  cfg.seed = 11;
  Network net = random_network( cfg );
  CHECK( cec_exhaustive( net, net ) );
}

TEST_CASE( "complemented output is refuted with a witness" )
{
  GenConfig cfg;
  cfg.num_pis = 7;
  cfg.num_gates = 60;
  cfg.seed = 12;
  Network net = random_network( cfg );
  Network flipped =
      fixtures::rebuild( net, []( uint32_t po, Signal s ) { return po == 0 ? !s : s; } );
  std::vector<bool> cex;
  CHECK_FALSE( cec_exhaustive( net, flipped, &cex ) );
  REQUIRE( cex.size() == net.num_pis() );
  CHECK( eval_on( net, cex, 0 ) != eval_on( flipped, cex, 0 ) );
}

TEST_CASE( "serial and parallel exhaustive checks agree" )
{
  for ( uint64_t seed = 0; seed < 6; ++seed )
  {
    GenConfig cfg;
    cfg.num_pis = 13 + seed % 3; /* forces multiple chunks */
    cfg.num_gates = 150;
    cfg.seed = 100 + seed;
    Network net = random_network( cfg );
    CHECK( cec_exhaustive( net, net, nullptr, false ) ==
           cec_exhaustive( net, net, nullptr, true ) );

    Network single = fixtures::rebuild( net, keep_po, 1 );
    Network mutated = flip_one_minterm( single, seed * 1000 + 3 );
    std::vector<bool> cex_serial, cex_parallel;
    bool s = cec_exhaustive( single, mutated, &cex_serial, false );
    bool p = cec_exhaustive( single, mutated, &cex_parallel, true );
    CHECK_FALSE( s );
    CHECK( s == p );
    CHECK( cex_serial == cex_parallel ); /* both report the smallest witness */
  }
}

TEST_CASE( "exhaustive counterexample is genuine and unique" )
{
  GenConfig cfg;
  cfg.num_pis = 6;
  cfg.num_gates = 40;
  cfg.seed = 55;
  Network net = fixtures::rebuild( random_network( cfg ), keep_po, 1 );

  uint64_t const minterm = 37;
  Network mutated = flip_one_minterm( net, minterm );
  std::vector<bool> cex;
  REQUIRE_FALSE( cec_exhaustive( net, mutated, &cex ) );
  CHECK( eval_on( net, cex, 0 ) != eval_on( mutated, cex, 0 ) );
  uint64_t pattern = 0;
  for ( uint32_t i = 0; i < cex.size(); ++i )
  {
    pattern |= uint64_t( cex[i] ) << i;
  }
  CHECK( pattern == minterm ); /* exactly one minterm differs */
}

TEST_CASE( "random simulation behaviour" )
{
  GenConfig cfg;
  cfg.num_pis = 5;
  cfg.num_gates = 30;
  cfg.seed = 66;
  Network net = random_network( cfg );

  CHECK( cec_random( net, net, 10000, 9 ).consistent );
  CHECK( cec_random( net, net, 0, 9 ).consistent ); /* vacuous */

  Network one_po = fixtures::rebuild( net, keep_po, 1 );
  Network mutated = flip_one_minterm( one_po, 11 );
  auto res = cec_random( one_po, mutated, 4096, 1 );
  REQUIRE_FALSE( res.consistent );
  CHECK( eval_on( one_po, res.counterexample, 0 ) !=
         eval_on( mutated, res.counterexample, 0 ) );

  /* a random refutation is never contradicted by the exhaustive check */
  CHECK_FALSE( cec_exhaustive( one_po, mutated ) );
}

TEST_CASE( "simulate_words matches bitwise evaluation" )
{
  auto m = fixtures::make_na();
  /* all eight assignments of (a, b, c) in one 8-bit word */
  std::vector<uint64_t> words{ 0xaa, 0xcc, 0xf0 };
  auto out = simulate_words( m.net, words );
  CHECK( ( out[0] & 0xff ) == 0xc8 ); /* f = ab + bc */
  CHECK( ( out[1] & 0xff ) == 0x80 ); /* g = abc */
}

TEST_CASE( "width cap" )
{
  Network a, b;
  for ( uint32_t i = 0; i < 25; ++i )
  {
    a.create_pi();
    b.create_pi();
  }
  a.add_po( const0 );
  b.add_po( const0 );
  CHECK_THROWS_AS( cec_exhaustive( a, b ), std::out_of_range );
}
