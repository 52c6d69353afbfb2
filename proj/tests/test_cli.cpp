#include "anysyn/io.hpp"
#include "anysyn/verify.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace anysyn;
namespace fs = std::filesystem;

namespace
{

struct RunResult
{
  int code = -1;
  std::string out;
};

RunResult run( std::string const& args )
{
  std::string cmd = std::string( ANYSYN_CLI_PATH ) + " " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen( cmd.c_str(), "r" );
  REQUIRE( pipe != nullptr );
  char buf[4096];
  while ( fgets( buf, sizeof buf, pipe ) != nullptr )
  {
    res.out += buf;
  }
  int status = pclose( pipe );
  res.code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
  return res;
}

fs::path tmp_dir()
{
  auto dir = fs::temp_directory_path() / "anysyn_cli_tests";
  fs::create_directories( dir );
  return dir;
}

std::string slurp( fs::path const& p )
{
  std::ifstream in( p, std::ios::binary );
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE( "optimize the motivating example under mc" )
{
  auto dir = tmp_dir();
  auto m = fixtures::make_na();
  auto in = dir / "na.xag";
  auto out = dir / "na_opt.xag";
  auto stats = dir / "na_stats.json";
  write_xag_file( m.net, in.string() );

  auto res = run( "optimize " + in.string() + " --cost mc --out " + out.string() +
                  " --verify --stats-json " + stats.string() );
  CHECK( res.code == 0 );
  CHECK( res.out.find( "verification passed" ) != std::string::npos );

  std::string js = slurp( stats );
  CHECK( js.find( "\"initial_cost\": 4" ) != std::string::npos );
  CHECK( js.find( "\"final_cost\": 3" ) != std::string::npos );

  Network opt = read_xag_file( out.string() );
  CHECK( cec_exhaustive( m.net, opt ) );
  CHECK( evaluate_by_name( opt, "mc" ) == 3 );
}

TEST_CASE( "unknown cost name lists the registry" )
{
  auto dir = tmp_dir();
  auto m = fixtures::make_na();
  auto in = dir / "na2.xag";
  write_xag_file( m.net, in.string() );
  auto res = run( "optimize " + in.string() + " --cost area51" );
  CHECK( res.code == 2 );
  CHECK( res.out.find( "xag_size" ) != std::string::npos );
  CHECK( res.out.find( "support_sum" ) != std::string::npos );
}

TEST_CASE( "zero iterations reproduce the input" )
{
  auto dir = tmp_dir();
  auto m = fixtures::make_na();
  auto in = dir / "na3.xag";
  auto out = dir / "na3_out.xag";
  write_xag_file( m.net, in.string() );
  auto res = run( "optimize " + in.string() + " --cost mc --iters 0 --out " + out.string() );
  CHECK( res.code == 0 );
  CHECK( slurp( in ) == slurp( out ) );
}

TEST_CASE( "eval prints the table of criteria values" )
{
  auto dir = tmp_dir();
  auto m = fixtures::make_na();
  auto in = dir / "na4.xag";
  write_xag_file( m.net, in.string() );
  auto res = run( "eval " + in.string() + " --cost all" );
  CHECK( res.code == 0 );
  CHECK( res.out.find( "xag_size 4" ) != std::string::npos );
  CHECK( res.out.find( "xag_depth 2" ) != std::string::npos );
  CHECK( res.out.find( "max_skew 0" ) != std::string::npos );
  CHECK( res.out.find( "mc 4" ) != std::string::npos );
}

TEST_CASE( "check handles equivalence, refutation and usage errors" )
{
  auto dir = tmp_dir();
  auto m = fixtures::make_na();
  auto in = dir / "na5.xag";
  write_xag_file( m.net, in.string() );

  CHECK( run( "check " + in.string() + " " + in.string() ).code == 0 );

  Network flipped =
      fixtures::rebuild( m.net, []( uint32_t po, Signal s ) { return po == 0 ? !s : s; } );
  auto bad = dir / "na5_bad.xag";
  write_xag_file( flipped, bad.string() );
  auto res = run( "check " + in.string() + " " + bad.string() );
  CHECK( res.code == 1 );
  CHECK( res.out.find( "counterexample" ) != std::string::npos );

  CHECK( run( "check " + in.string() ).code == 2 );
  CHECK( run( "check missing_a.xag missing_b.xag" ).code == 2 );
}

TEST_CASE( "optimize then check round" )
{
  auto dir = tmp_dir();
  auto c = fixtures::make_nc();
  auto in = dir / "nc.xag";
  auto out = dir / "nc_opt.xag";
  write_xag_file( c.net, in.string() );
  CHECK( run( "optimize " + in.string() + " --cost xag_size --out " + out.string() ).code == 0 );
  CHECK( run( "check " + in.string() + " " + out.string() ).code == 0 );
}

TEST_CASE( "bench emits one csv row per file plus a geomean row" )
{
  auto dir = tmp_dir() / "benchdir";
  fs::create_directories( dir );
  write_xag_file( fixtures::make_na().net, ( dir / "one.xag" ).string() );
  write_xag_file( fixtures::make_nb().net, ( dir / "two.xag" ).string() );

  auto res = run( "bench " + dir.string() + " --cost mc" );
  CHECK( res.code == 0 );
  uint32_t rows = 0;
  std::istringstream ss( res.out );
  std::string line, geomean_line;
  std::getline( ss, line ); /* header */
  CHECK( line.find( "file,nodes,cost_name,initial,final,accepted,cpu_ms" ) == 0 );
  while ( std::getline( ss, line ) )
  {
    if ( line.rfind( "geomean", 0 ) == 0 )
    {
      geomean_line = line;
    }
    rows += !line.empty();
  }
  CHECK( rows == 3 );
  /* both runs end at mc 3, so the geomean of finals is 3 */
  CHECK( geomean_line.find( ",3," ) != std::string::npos );

  CHECK( run( "bench " + ( dir / "empty" ).string() + " --cost mc" ).code != 0 );
}

TEST_CASE( "cli output is deterministic" )
{
  auto dir = tmp_dir();
  auto m = fixtures::make_nb();
  auto in = dir / "det.xag";
  auto out1 = dir / "det1.xag";
  auto out2 = dir / "det2.xag";
  write_xag_file( m.net, in.string() );
  CHECK( run( "optimize " + in.string() + " --cost total_skew --out " + out1.string() ).code == 0 );
  CHECK( run( "optimize " + in.string() + " --cost total_skew --out " + out2.string() ).code == 0 );
  CHECK( slurp( out1 ) == slurp( out2 ) );
}
