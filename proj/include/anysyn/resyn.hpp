#pragma once

#include "anysyn/truth_table.hpp"
#include "anysyn/xag.hpp"

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace anysyn
{

/* reference into a solution forest: a divisor or a forest gate, with a
 * complement flag */
struct ForestRef
{
  uint32_t raw = 0;

  static ForestRef divisor( uint32_t index, bool complemented = false )
  {
    return ForestRef{ ( index << 2 ) | uint32_t( complemented ) };
  }
  static ForestRef gate( uint32_t index, bool complemented = false )
  {
    return ForestRef{ ( index << 2 ) | 2u | uint32_t( complemented ) };
  }

  bool is_gate() const { return raw & 2; }
  bool complemented() const { return raw & 1; }
  uint32_t index() const { return raw >> 2; }
  ForestRef operator^( bool flip ) const { return ForestRef{ raw ^ uint32_t( flip ) }; }
  ForestRef operator!() const { return ForestRef{ raw ^ 1u }; }
  bool operator==( ForestRef const& o ) const { return raw == o.raw; }
};

struct ForestGate
{
  NodeKind kind;
  ForestRef a, b; /* canonical: a.raw <= b.raw; XOR operands uncomplemented */
};

/*! \brief Hash-consed collection of all candidate dependency circuits.
 *
 * Every output simulates exactly to the problem target.  Gate indices are
 * topological by construction (operands precede users).
 */
struct SolutionForest
{
  std::vector<ForestGate> gates;
  std::vector<TruthTable> gate_tables;
  std::vector<ForestRef> outputs;

  bool empty() const { return outputs.empty(); }

  /* forest gate indices in the cone of ref, ascending */
  std::vector<uint32_t> cone_gates( ForestRef ref ) const;

  /* canonical nested encoding of one candidate, for tie-breaks and
   * oracle comparisons */
  std::string encode_output( ForestRef ref ) const;

  /* byte-stable encoding of the whole forest */
  std::string encode() const;
};

/* outcome classes for the structural-equivalence check (Technique 2) */
struct StructHit
{
  enum Kind
  {
    Fresh, /* no structural match; create the forest gate */
    Reuse, /* matches an existing divisor; reference it instead */
    Prune  /* matches the root/MFFC or a non-divisor node; drop candidate */
  };
  Kind kind = Fresh;
  uint32_t divisor_index = 0;
};

struct ResynProblem
{
  TruthTable target;
  std::vector<Signal> divisor_sigs; /* uncomplemented window signals */
  std::vector<TruthTable> divisor_tts;

  uint32_t max_gates = 3;
  uint32_t max_gates_decomp = 32;
  uint64_t max_steps = 100000; /* enumeration budget per shape family */

  /* var index of the target -> divisor index of that leaf, or -1;
   * enables the SOP/ESOP candidates */
  std::vector<int32_t> leaf_divisor;

  /* structural-equivalence hook for divisor-level gates (Technique 2);
   * absent means every gate is Fresh */
  std::function<StructHit( NodeKind, Signal, Signal )> struct_lookup;

  /* strict preorder on divisors (by cost context); used to pick the kept
   * representative among functionally equal divisors and to sort
   * decomposition inputs; absent means ascending node id */
  std::function<bool( uint32_t, uint32_t )> prefer;
};

/* indices of divisors kept after functional dedup: one representative per
 * function-or-complement class, preferred by `prefer`, ties to the first */
std::vector<uint32_t> dedup_divisors( ResynProblem const& p );

/*! \brief Shared canonical forest construction.
 *
 * Both the pruned enumerator and the unpruned oracle build their forests
 * through this class, so candidate encodings are directly comparable.
 * add_gate normalizes XOR operand complements into the returned
 * reference, sorts operands, hash-conses, and rejects degenerate pairs.
 */
class ForestAccumulator
{
public:
  struct HookResult
  {
    StructHit::Kind action = StructHit::Fresh;
    ForestRef reuse; /* valid for Reuse; evaluates to the stored function */
  };

  explicit ForestAccumulator( TruthTable target );

  /* consulted before creating a gate over two divisor operands */
  std::function<HookResult( NodeKind, ForestRef, ForestRef )> struct_hook;

  /* value is the function of (kind, a, b) with operands as passed; the
   * returned reference always evaluates to value */
  std::optional<ForestRef> add_gate( NodeKind kind, ForestRef a, ForestRef b,
                                     TruthTable const& value );

  /* record ref as an output when its value matches the target or its
   * complement */
  void emit( std::optional<ForestRef> ref, TruthTable const& value );

  TruthTable const& target() const { return target_; }
  TruthTable const& not_target() const { return not_target_; }
  SolutionForest& forest() { return forest_; }
  SolutionForest take() { return std::move( forest_ ); }

private:
  TruthTable target_, not_target_;
  SolutionForest forest_;
  std::unordered_map<uint64_t, uint32_t> cons_;
  std::unordered_set<uint32_t> seen_outputs_;
};

/* Technique 1 helpers */
inline bool prune_and( TruthTable const& f, TruthTable const& x )
{
  return !implies( f, x );
}

/* hash of {f ^ tt(d)} over divisors; feasible(x) iff some divisor d
 * satisfies x ^ d == f (up to complement) */
class XorFeasible
{
public:
  XorFeasible( TruthTable const& f, std::vector<TruthTable> const& divisor_tts,
               std::vector<uint32_t> const& kept );
  bool feasible( TruthTable const& x ) const;
  /* kept-divisor positions j with tt[j] == need or ~need */
  std::vector<uint32_t> partners( TruthTable const& need ) const;

private:
  TruthTable f_;
  std::unordered_map<TruthTable, std::vector<uint32_t>, TruthTableHash> map_;
};

/* enumerate dependency circuits over the divisors that realize the target
 * exactly: 0-gate aliases, all 1..3-gate structures over {AND, XOR} with
 * implication/hash pruning and structural dedup, plus SOP/ESOP
 * decompositions over the leaves */
SolutionForest resynthesize( ResynProblem const& p );

} // namespace anysyn
