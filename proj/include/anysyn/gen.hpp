#pragma once

#include "anysyn/xag.hpp"

#include <cstdint>

namespace anysyn
{

/* knobs for the seeded random XAG generator */
struct GenConfig
{
  uint32_t num_pis = 8;
  uint32_t num_gates = 64;
  double xor_ratio = 0.3;
  /* 0 = pick operands uniformly; otherwise bias towards the last
   * `recent_window` created nodes, which deepens the network and creates
   * reconvergence */
  uint32_t recent_window = 0;
  uint64_t seed = 1;
};

/* deterministic random XAG; every zero-fanout gate becomes an output */
Network random_network( GenConfig const& cfg );

} // namespace anysyn
