#pragma once

#include <cstdint>
#include <map>

#include "ordcert/cnf.hpp"
#include "ordcert/phi.hpp"

namespace ordcert {

// Default total work allowance (candidate-closure construction size) for
// one PsiEvaluator.
inline constexpr uint64_t kDefaultPsiWorkBudget = uint64_t{1} << 24;

// The norm-controlled collapsing function
//
//   psi(a) = max({0} | {psi(b) + 1 : b < a, no(b) <= Phi(no(a))}).
//
// Unrolling the recurrence, psi(a) is the length of the longest descending
// chain a > b_1 > ... > b_k where each step obeys the norm control
// no(b_{i+1}) <= Phi(no(b_i)). The evaluator computes exactly that:
//
//  * Closure. The set U of ordinals the recurrence ever touches below a is
//    generated in one descending sweep: the admissible norm cap
//    max{Phi(no(d)) : d in U, d > c} only grows as the sweep descends, so
//    repeatedly taking the largest ordinal below the cursor whose norm fits
//    the running cap enumerates U exactly, one node at a time.
//  * Chain DP. Processing U ascending, psi(b) = 1 + max psi(c) over
//    c in U, c < b, no(c) <= Phi(no(b)) (0 when empty) — a prefix-maximum
//    query over norms, answered by a Fenwick tree.
//
// Results are memoized across eval() calls. Only evaluable under a toy
// norm-control mode; paper mode throws BudgetError (its Phi makes every
// candidate set astronomically wide). The work budget is a per-call
// allowance on closure construction (memoized results are free); a call
// whose closure outgrows it throws BudgetError. Beyond certain thresholds
// (already at w^w * 2 for Phi(x) = x + 2) closure sizes — and psi's values
// themselves — are astronomical, so such calls exhaust any realistic
// budget quickly and get reported as BudgetError rather than computed.
class PsiEvaluator {
public:
  explicit PsiEvaluator(PhiMode mode,
                        uint64_t work_budget = kDefaultPsiWorkBudget);

  uint64_t eval(const CnfOrdinal& a);

  const PhiMode& mode() const { return mode_; }
  // Allowance left after the most recent eval() call.
  uint64_t work_remaining() const { return budget_ - used_; }

private:
  PhiMode mode_;
  uint64_t budget_;
  uint64_t used_ = 0;
  std::map<CnfOrdinal, uint64_t> memo_;
};

// One-shot evaluation with a fresh memo table.
uint64_t psi_eval(const CnfOrdinal& a, const PhiMode& mode,
                  uint64_t work_budget = kDefaultPsiWorkBudget);

}  // namespace ordcert
