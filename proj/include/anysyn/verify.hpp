#pragma once

#include "anysyn/resyn.hpp"
#include "anysyn/xag.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace anysyn
{

/*! \brief Exhaustive combinational equivalence check, up to 24 inputs.
 *
 * Simulates all input patterns in 64-bit-parallel chunks; with
 * `parallel` set the chunks are distributed over OpenMP threads, and the
 * serial path is the reference the parallel one is tested against.
 * Inputs are matched by index.  Returns true iff every output matches on
 * every pattern; when `cex` is non-null and the check fails, it receives
 * the smallest failing input assignment.
 */
bool cec_exhaustive( Network const& a, Network const& b,
                     std::vector<bool>* cex = nullptr, bool parallel = true );

struct RandomCheck
{
  bool consistent = true;
  std::vector<bool> counterexample; /* PI assignment when refuted */
};

/* simulate `vectors` seeded random patterns; vacuously consistent when
 * vectors is zero */
RandomCheck cec_random( Network const& a, Network const& b, uint64_t vectors, uint64_t seed );

/* word-parallel full-network simulation: pi_words[i] drives the i-th
 * input; returns one word per output.  Reference kernel for tests and
 * the random checker. */
std::vector<uint64_t> simulate_words( Network const& net,
                                      std::vector<uint64_t> const& pi_words );

/*! \brief Unpruned exhaustive enumeration over at most 2 gates.
 *
 * Reference oracle for the pruning-losslessness property: returns the
 * canonical encodings of every dependency circuit over the problem's
 * divisors whose output equals the target, enumerated without any
 * implication or hash pruning.  Caps: 8 divisors, 2 gates.
 */
std::vector<std::string> brute_resyn_oracle( ResynProblem const& p );

} // namespace anysyn
