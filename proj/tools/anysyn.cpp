#include "anysyn/cost.hpp"
#include "anysyn/io.hpp"
#include "anysyn/opt.hpp"
#include "anysyn/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace anysyn;
namespace fs = std::filesystem;

namespace
{

int const exit_ok = 0;
int const exit_refuted = 1;
int const exit_usage = 2;
int const exit_verify = 3;

struct OptimizeArgs
{
  std::string input;
  std::string cost;
  std::string out;
  std::string stats_json;
  PassConfig cfg;
  bool xor_extract = false;
  bool verify = false;
};

void add_pass_options( CLI::App* cmd, PassConfig& cfg )
{
  cmd->add_option( "--leaves", cfg.max_leaves, "maximum window leaves (2..16)" )
      ->envname( "ANYSYN_LEAVES" );
  cmd->add_option( "--divisors", cfg.max_divisors, "maximum divisors per window" )
      ->envname( "ANYSYN_DIVISORS" );
  cmd->add_option( "--gates", cfg.max_gates, "maximum enumerated gates per candidate" )
      ->envname( "ANYSYN_GATES" );
  cmd->add_option( "--iters", cfg.iterations, "optimization iterations" )
      ->envname( "ANYSYN_ITERS" );
  cmd->add_option( "--seed", cfg.seed, "seed for randomized tie-breaks" )
      ->envname( "ANYSYN_SEED" );
  cmd->add_option( "--steps", cfg.max_steps, "enumeration budget per shape family" )
      ->envname( "ANYSYN_STEPS" );
  cmd->add_option( "--decomp-gates", cfg.max_gates_decomp,
                   "gate cap for SOP/ESOP candidates" )
      ->envname( "ANYSYN_DECOMP_GATES" );
}

nlohmann::json report_to_json( PassReport const& rep )
{
  return nlohmann::json{
      { "initial_cost", rep.initial_cost },
      { "final_cost", rep.final_cost },
      { "accepted", rep.accepted },
      { "attempted", rep.attempted },
      { "iterations", rep.iterations_run },
      { "rolled_back", rep.rolled_back },
      { "cpu_ms",
        { { "traversal", rep.time.traversal_ms },
          { "windowing", rep.time.windowing_ms },
          { "resynthesis", rep.time.resyn_ms },
          { "evaluation", rep.time.eval_ms } } } };
}

int run_optimize( OptimizeArgs& args )
{
  Network net = read_network_file( args.input, args.xor_extract );
  Network before;
  if ( args.verify )
  {
    before = net;
  }

  args.cfg.cost_name = args.cost;
  PassReport rep;
  if ( args.cfg.iterations == 0 )
  {
    rep.initial_cost = rep.final_cost = evaluate_by_name( net, args.cfg.cost_name );
  }
  else
  {
    rep = optimize_by_name( net, args.cfg );
  }

  if ( args.verify )
  {
    bool ok = net.num_pis() <= 20 ? cec_exhaustive( before, net )
                                  : cec_random( before, net, 65536, args.cfg.seed ).consistent;
    if ( !ok )
    {
      std::cerr << "verification FAILED: optimized network is not equivalent\n";
      return exit_verify;
    }
    std::cerr << "verification passed\n";
  }

  if ( !args.out.empty() )
  {
    write_network_file( net, args.out );
  }
  if ( !args.stats_json.empty() )
  {
    std::ofstream js( args.stats_json );
    js << report_to_json( rep ).dump( 2 ) << '\n';
  }
  std::cerr << "cost " << args.cost << ": " << rep.initial_cost << " -> " << rep.final_cost
            << "  (accepted " << rep.accepted << "/" << rep.attempted << " in "
            << rep.iterations_run << " iteration(s))\n";
  return exit_ok;
}

int run_eval( std::string const& input, std::string const& cost, bool as_json, bool xor_extract )
{
  Network net = read_network_file( input, xor_extract );
  std::vector<std::pair<std::string, Global>> rows;
  if ( cost == "all" )
  {
    for ( auto const& name : cost_names() )
    {
      rows.push_back( { name, evaluate_by_name( net, name ) } );
    }
  }
  else
  {
    rows.push_back( { cost, evaluate_by_name( net, cost ) } );
  }
  if ( as_json )
  {
    nlohmann::json j;
    for ( auto const& [name, value] : rows )
    {
      j[name] = value;
    }
    std::cout << j.dump( 2 ) << '\n';
  }
  else
  {
    for ( auto const& [name, value] : rows )
    {
      std::cout << name << ' ' << value << '\n';
    }
  }
  return exit_ok;
}

int run_check( std::string const& file_a, std::string const& file_b, uint64_t vectors,
               uint64_t seed, uint32_t exhaustive_max )
{
  Network a = read_network_file( file_a );
  Network b = read_network_file( file_b );
  if ( a.num_pis() <= exhaustive_max && a.num_pis() <= 24 )
  {
    std::vector<bool> cex;
    if ( cec_exhaustive( a, b, &cex ) )
    {
      std::cout << "equivalent\n";
      return exit_ok;
    }
    std::cout << "NOT equivalent; counterexample:";
    for ( size_t i = 0; i < cex.size(); ++i )
    {
      std::cout << ' ' << a.pi_name( uint32_t( i ) ) << '=' << int( cex[i] );
    }
    std::cout << '\n';
    return exit_refuted;
  }
  auto res = cec_random( a, b, vectors, seed );
  if ( res.consistent )
  {
    std::cout << "consistent (not proven; " << vectors << " random vectors)\n";
    return exit_ok;
  }
  std::cout << "NOT equivalent; counterexample:";
  for ( size_t i = 0; i < res.counterexample.size(); ++i )
  {
    std::cout << ' ' << a.pi_name( uint32_t( i ) ) << '=' << int( res.counterexample[i] );
  }
  std::cout << '\n';
  return exit_refuted;
}

double geomean( std::vector<double> const& xs, bool* replaced_zero )
{
  if ( xs.empty() )
  {
    return 0.0;
  }
  double acc = 0.0;
  for ( auto x : xs )
  {
    if ( x <= 0.0 )
    {
      *replaced_zero = true;
      x = 1.0;
    }
    acc += std::log( x );
  }
  return std::exp( acc / double( xs.size() ) );
}

int run_bench( std::string const& dir, std::string const& cost, std::string const& out_path,
               PassConfig cfg, bool baselines, bool xor_extract )
{
  std::vector<std::string> files;
  for ( auto const& entry : fs::directory_iterator( dir ) )
  {
    if ( !entry.is_regular_file() )
    {
      continue;
    }
    auto ext = entry.path().extension().string();
    if ( ext == ".aag" || ext == ".aig" || ext == ".xag" )
    {
      files.push_back( entry.path().string() );
    }
  }
  std::sort( files.begin(), files.end() );

  std::vector<std::string> costs =
      cost == "all" ? cost_names() : std::vector<std::string>{ cost };

  std::ostream* os = &std::cout;
  std::ofstream file_out;
  if ( !out_path.empty() )
  {
    file_out.open( out_path );
    os = &file_out;
  }

  *os << "file,nodes,cost_name,initial,final,accepted,cpu_ms";
  if ( baselines )
  {
    *os << ",final_size_sel,final_depth_sel";
  }
  *os << '\n';

  uint32_t processed = 0;
  for ( auto const& name : costs )
  {
    std::vector<double> initials, finals, times;
    for ( auto const& file : files )
    {
      Network net;
      try
      {
        net = read_network_file( file, xor_extract );
      }
      catch ( std::exception const& e )
      {
        std::cerr << "skipping " << file << ": " << e.what() << '\n';
        continue;
      }
      ++processed;
      uint32_t const nodes = net.num_gates();
      cfg.cost_name = name;
      Network work = net;
      auto t0 = std::chrono::steady_clock::now();
      PassReport rep = optimize_by_name( work, cfg );
      double ms =
          std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 )
              .count();
      *os << fs::path( file ).filename().string() << ',' << nodes << ',' << name << ','
          << rep.initial_cost << ',' << rep.final_cost << ',' << rep.accepted << ','
          << uint64_t( ms );
      if ( baselines )
      {
        for ( auto const& sel : { "xag_size", "xag_depth" } )
        {
          Network base = net;
          PassConfig bcfg = cfg;
          bcfg.cost_name = sel;
          optimize_by_name( base, bcfg );
          *os << ',' << evaluate_by_name( base, name );
        }
      }
      *os << '\n';
      initials.push_back( double( rep.initial_cost ) );
      finals.push_back( double( rep.final_cost ) );
      times.push_back( ms );
    }
    bool replaced = false;
    double gi = geomean( initials, &replaced );
    double gf = geomean( finals, &replaced );
    double gt = geomean( times, &replaced );
    *os << ( replaced ? "geomean*" : "geomean" ) << ',' << initials.size() << ',' << name << ','
        << gi << ',' << gf << ",," << gt;
    if ( baselines )
    {
      *os << ",,";
    }
    *os << '\n';
  }
  if ( processed == 0 )
  {
    std::cerr << "no benchmark files processed\n";
    return exit_usage;
  }
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "anysyn: cost-generic XAG logic optimization" };
  app.require_subcommand( 1 );

  OptimizeArgs oargs;
  auto* opt_cmd = app.add_subcommand( "optimize", "optimize a network under a cost function" );
  opt_cmd->add_option( "input", oargs.input, "input network (.aag/.aig/.xag)" )->required();
  opt_cmd->add_option( "--cost", oargs.cost, "cost function name" )->required();
  opt_cmd->add_option( "--out", oargs.out, "write the optimized network here" );
  opt_cmd->add_flag( "--xor-extract", oargs.xor_extract, "extract XOR patterns on import" );
  opt_cmd->add_flag( "--verify", oargs.verify, "check equivalence of the result" );
  opt_cmd->add_flag( "--verify-each", oargs.cfg.verify_each,
                     "check equivalence after every substitution" );
  opt_cmd->add_option( "--stats-json", oargs.stats_json, "write the pass report as JSON" );
  add_pass_options( opt_cmd, oargs.cfg );

  std::string eval_input, eval_cost = "all";
  bool eval_json = false, eval_xor = false;
  auto* eval_cmd = app.add_subcommand( "eval", "evaluate cost functions on a network" );
  eval_cmd->add_option( "input", eval_input, "input network" )->required();
  eval_cmd->add_option( "--cost", eval_cost, "cost function name or 'all'" );
  eval_cmd->add_flag( "--json", eval_json, "machine-readable output" );
  eval_cmd->add_flag( "--xor-extract", eval_xor, "extract XOR patterns on import" );

  std::string check_a, check_b;
  uint64_t check_vectors = 65536, check_seed = 1;
  uint32_t check_exmax = 24;
  auto* check_cmd = app.add_subcommand( "check", "combinational equivalence check" );
  check_cmd->add_option( "a", check_a, "first network" )->required();
  check_cmd->add_option( "b", check_b, "second network" )->required();
  check_cmd->add_option( "--vectors", check_vectors, "random vectors above the threshold" );
  check_cmd->add_option( "--seed", check_seed, "random simulation seed" );
  check_cmd->add_option( "--exhaustive-max", check_exmax,
                         "exhaustive check up to this many inputs" );

  std::string bench_dir, bench_cost = "xag_size", bench_out;
  bool bench_baselines = false, bench_xor = false;
  PassConfig bench_cfg;
  auto* bench_cmd = app.add_subcommand( "bench", "optimize a directory and emit CSV" );
  bench_cmd->add_option( "dir", bench_dir, "directory of networks" )->required();
  bench_cmd->add_option( "--cost", bench_cost, "cost function name or 'all'" );
  bench_cmd->add_option( "--out", bench_out, "CSV output path (default stdout)" );
  bench_cmd->add_flag( "--baselines", bench_baselines,
                       "also evaluate size- and depth-selected baselines" );
  bench_cmd->add_flag( "--xor-extract", bench_xor, "extract XOR patterns on import" );
  add_pass_options( bench_cmd, bench_cfg );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    return app.exit( e ) == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( *opt_cmd )
    {
      if ( !is_cost_name( oargs.cost ) )
      {
        std::string names;
        for ( auto const& n : cost_names() )
        {
          names += names.empty() ? n : ", " + n;
        }
        std::cerr << "unknown cost '" << oargs.cost << "'; registered: " << names << '\n';
        return exit_usage;
      }
      return run_optimize( oargs );
    }
    if ( *eval_cmd )
    {
      if ( eval_cost != "all" && !is_cost_name( eval_cost ) )
      {
        std::cerr << "unknown cost '" << eval_cost << "'\n";
        return exit_usage;
      }
      return run_eval( eval_input, eval_cost, eval_json, eval_xor );
    }
    if ( *check_cmd )
    {
      return run_check( check_a, check_b, check_vectors, check_seed, check_exmax );
    }
    if ( *bench_cmd )
    {
      if ( bench_cost != "all" && !is_cost_name( bench_cost ) )
      {
        std::cerr << "unknown cost '" << bench_cost << "'\n";
        return exit_usage;
      }
      return run_bench( bench_dir, bench_cost, bench_out, bench_cfg, bench_baselines,
                        bench_xor );
    }
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
