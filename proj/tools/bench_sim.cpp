#include "anysyn/gen.hpp"
#include "anysyn/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

#include <omp.h>

using namespace anysyn;

/* Compares the serial reference simulation kernel against the
 * OpenMP-parallel one on exhaustive equivalence checks of random
 * networks.  Both paths must agree bit-exactly; the table reports the
 * wall-clock ratio. */
int main( int argc, char** argv )
{
  uint32_t min_pis = 14, max_pis = 20;
  uint32_t gates = 2000;
  uint64_t seed = 7;
  CLI::App app{ "bench_sim: serial vs OpenMP pattern simulation" };
  app.add_option( "--min-pis", min_pis, "smallest input count" );
  app.add_option( "--max-pis", max_pis, "largest input count" );
  app.add_option( "--gates", gates, "gates per network" );
  app.add_option( "--seed", seed, "generator seed" );
  CLI11_PARSE( app, argc, argv );

  std::printf( "threads: %d\n", omp_get_max_threads() );
  std::printf( "%6s %8s %12s %12s %8s\n", "pis", "gates", "serial_ms", "parallel_ms",
               "speedup" );
  for ( uint32_t k = min_pis; k <= max_pis; k += 2 )
  {
    GenConfig cfg;
    cfg.num_pis = k;
    cfg.num_gates = gates;
    cfg.seed = seed + k;
    Network net = random_network( cfg );

    auto time_one = [&]( bool parallel ) {
      auto t0 = std::chrono::steady_clock::now();
      bool eq = cec_exhaustive( net, net, nullptr, parallel );
      double ms =
          std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 )
              .count();
      if ( !eq )
      {
        std::fprintf( stderr, "self-check failed!\n" );
        std::exit( 1 );
      }
      return ms;
    };

    double serial = time_one( false );
    double parallel = time_one( true );
    std::printf( "%6u %8u %12.2f %12.2f %8.2f\n", k, net.num_gates(), serial, parallel,
                 serial / parallel );
  }
  return 0;
}
