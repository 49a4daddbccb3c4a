#include "ordcert/psi.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace ordcert {

namespace {

// Fenwick tree over norm values supporting point insert and prefix maximum,
// with -1 marking "nothing inserted yet".
class PrefixMax {
public:
  explicit PrefixMax(size_t size) : tree_(size + 1, -1) {}

  void insert(size_t i, int64_t v) {
    for (++i; i < tree_.size(); i += i & (~i + 1))
      tree_[i] = std::max(tree_[i], v);
  }

  int64_t max_through(size_t i) const {
    int64_t best = -1;
    for (i = std::min(i + 1, tree_.size() - 1); i > 0; i -= i & (~i + 1))
      best = std::max(best, tree_[i]);
    return best;
  }

private:
  std::vector<int64_t> tree_;
};

}  // namespace

PsiEvaluator::PsiEvaluator(PhiMode mode, uint64_t work_budget)
    : mode_(std::move(mode)), budget_(work_budget) {}

uint64_t PsiEvaluator::eval(const CnfOrdinal& a) {
  if (mode_.is_paper())
    throw BudgetError(
        "psi is not evaluable under the paper norm-control mode");
  used_ = 0;  // the budget is a per-call allowance; memoized hits are free
  if (auto it = memo_.find(a); it != memo_.end()) return it->second;

  // Descending sweep: the admissible norm cap over everything visited so
  // far only grows, so the largest norm-admissible predecessor steps
  // through the candidate closure of a one node at a time.
  std::vector<std::pair<CnfOrdinal, uint64_t>> closure;  // (ordinal, norm)
  closure.emplace_back(a, norm(a));
  uint64_t cap = mode_.toy_value(closure.back().second);
  uint64_t max_norm = closure.back().second;
  while (auto b = norm_bounded_predecessor(closure.back().first, cap)) {
    const uint64_t n = norm(*b);
    // Work is charged per closure node at its construction size, which also
    // keeps the memory held by a budgeted evaluation bounded.
    const uint64_t fee = 1 + n;
    if (budget_ - used_ < fee) throw BudgetError("psi: work budget exhausted");
    used_ += fee;
    cap = std::max(cap, mode_.toy_value(n));
    max_norm = std::max(max_norm, n);
    closure.emplace_back(std::move(*b), n);
  }

  // Longest-chain DP, ascending: psi(b) = 1 + max psi(c) over c in the
  // closure with c < b and norm(c) <= Phi(norm(b)); 0 when no c qualifies.
  std::reverse(closure.begin(), closure.end());
  PrefixMax seen(max_norm + 1);
  uint64_t result = 0;
  for (const auto& [b, n] : closure) {
    uint64_t v;
    if (auto it = memo_.find(b); it != memo_.end()) {
      v = it->second;
    } else {
      const uint64_t reach = std::min(mode_.toy_value(n), max_norm);
      const int64_t best = seen.max_through(reach);
      v = best < 0 ? 0 : static_cast<uint64_t>(best) + 1;
      memo_.emplace(b, v);
    }
    seen.insert(n, static_cast<int64_t>(v));
    result = v;
  }
  return result;
}

uint64_t psi_eval(const CnfOrdinal& a, const PhiMode& mode,
                  uint64_t work_budget) {
  return PsiEvaluator(mode, work_budget).eval(a);
}

}  // namespace ordcert
