#include "anysyn/gen.hpp"

#include <random>

namespace anysyn
{

Network random_network( GenConfig const& cfg )
{
  Network net;
  std::mt19937_64 rng( cfg.seed );
  for ( uint32_t i = 0; i < cfg.num_pis; ++i )
  {
    net.create_pi();
  }

  auto pick = [&]() {
    uint32_t hi = net.size() - 1;
    uint32_t lo = 1;
    if ( cfg.recent_window > 0 && hi > cfg.recent_window )
    {
      /* half the picks come from the recent window */
      if ( rng() & 1 )
      {
        lo = hi - cfg.recent_window;
      }
    }
    uint32_t n = lo + uint32_t( rng() % ( hi - lo + 1 ) );
    return Signal( n, rng() & 1 );
  };

  uint64_t attempts = 0;
  uint64_t const max_attempts = uint64_t( cfg.num_gates ) * 20 + 1000;
  double const xor_threshold = cfg.xor_ratio * double( uint64_t( 1 ) << 32 );
  while ( net.num_gates() < cfg.num_gates && attempts++ < max_attempts )
  {
    NodeKind kind =
        double( rng() & 0xffffffffu ) < xor_threshold ? NodeKind::Xor : NodeKind::And;
    net.create_gate( kind, pick(), pick() );
  }

  for ( node_id n = 0; n < net.size(); ++n )
  {
    if ( net.is_gate( n ) && !net.is_dead( n ) && net.fanout_count( n ) == 0 )
    {
      net.add_po( Signal( n, false ) );
    }
  }
  if ( net.num_pos() == 0 )
  {
    net.add_po( net.get_constant( false ) );
  }
  return net;
}

} // namespace anysyn
