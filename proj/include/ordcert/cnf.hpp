#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordcert/types.hpp"

namespace ordcert {

// Ordinals below epsilon_0 in Cantor normal form: a descending list of
// (exponent, coefficient) pairs denoting w^{g_1}*c_1 + ... + w^{g_k}*c_k
// with g_1 > ... > g_k and c_i >= 1. Exponents are CnfOrdinals themselves.
// Immutable and cheaply copyable.
class CnfOrdinal {
public:
  struct Term;

  CnfOrdinal() = default;  // zero

  static CnfOrdinal zero() { return CnfOrdinal(); }
  static CnfOrdinal from_nat(uint64_t n);
  static CnfOrdinal omega();
  static CnfOrdinal omega_pow(const CnfOrdinal& exp);  // w^exp
  // w^exp * coeff as a single-term ordinal (coeff >= 1)
  static CnfOrdinal single(const CnfOrdinal& exp, uint64_t coeff);

  bool is_zero() const;
  bool is_finite() const;  // below w
  uint64_t finite_value() const;  // pre: is_finite()

  const std::vector<Term>& terms() const;

  // -1, 0, 1
  static int compare(const CnfOrdinal& a, const CnfOrdinal& b);
  bool operator==(const CnfOrdinal& o) const { return compare(*this, o) == 0; }
  bool operator!=(const CnfOrdinal& o) const { return compare(*this, o) != 0; }
  bool operator<(const CnfOrdinal& o) const { return compare(*this, o) < 0; }
  bool operator<=(const CnfOrdinal& o) const { return compare(*this, o) <= 0; }
  bool operator>(const CnfOrdinal& o) const { return compare(*this, o) > 0; }
  bool operator>=(const CnfOrdinal& o) const { return compare(*this, o) >= 0; }

  std::string to_string() const;  // e.g. "w^{2}·3 + w·2 + 1", "0"

  // Direct construction from a term list; validates that exponents are
  // strictly descending and coefficients nonzero.
  static CnfOrdinal make(std::vector<Term>&& terms);

private:
  explicit CnfOrdinal(std::shared_ptr<const std::vector<Term>> t)
      : terms_(std::move(t)) {}
  std::shared_ptr<const std::vector<Term>> terms_;  // nullptr == zero
};

struct CnfOrdinal::Term {
  CnfOrdinal exp;
  uint64_t coeff;
};

// Hessenberg (natural) sum: merge the two term lists.
CnfOrdinal nat_sum(const CnfOrdinal& a, const CnfOrdinal& b);
// Hessenberg (natural) product: distribute, natural-summing exponents.
CnfOrdinal nat_prod(const CnfOrdinal& a, const CnfOrdinal& b);
// 2^a = w^{a0} * 2^n for a = w*a0 + n with n finite.
CnfOrdinal exp2(const CnfOrdinal& a);

// no(0)=0, no(w^{g1}+...+w^{gn}) = n + no(g1) + ... + no(gn)
// (terms counted with multiplicity).
uint64_t norm(const CnfOrdinal& a);

// Norm cap for enumeration without a strict bound.
inline constexpr uint64_t kMaxEnumNorm = 14;

// Shared engine for norm-bounded enumeration. Sets of the two recurring
// shapes — "everything below beta with norm <= m" and "everything with
// exponents below e and norm <= m" — are built once, kept immutable, and
// handed out by pointer; heavy users (the collapsing function) hit the same
// cones over and over. Construction work across the cache's lifetime is
// capped by max_emissions (BudgetError beyond).
class EnumerationCache {
public:
  explicit EnumerationCache(uint64_t max_emissions = uint64_t{1} << 24);

  // {g : g < beta, norm(g) <= m}, ascending. Exact for any m; often small
  // even for large m (below a finite bound or a narrow band).
  std::shared_ptr<const std::vector<CnfOrdinal>> below(uint64_t m,
                                                       const CnfOrdinal& beta);
  // {g : norm(g) <= m}, ascending; requires m <= kMaxEnumNorm.
  std::shared_ptr<const std::vector<CnfOrdinal>> full(uint64_t m);

  uint64_t total_emitted() const { return emitted_; }

private:
  std::shared_ptr<const std::vector<CnfOrdinal>> tails(uint64_t m,
                                                       const CnfOrdinal* cap);
  void spend();

  struct Key {
    int kind;  // 0: full, 1: below, 2: exponent-capped tails
    CnfOrdinal bound;
    uint64_t m;
    bool operator<(const Key& o) const;
  };
  std::map<Key, std::shared_ptr<const std::vector<CnfOrdinal>>> cache_;
  uint64_t max_emissions_;
  uint64_t emitted_ = 0;
};

// One-shot convenience: all ordinals b with norm(b) <= m (and b <
// strict_bound if given), sorted ascending. Without a strict bound m is
// capped at kMaxEnumNorm; max_results caps the construction work.
std::vector<CnfOrdinal> enumerate_norm_bounded(
    uint64_t m, const std::optional<CnfOrdinal>& strict_bound = std::nullopt,
    uint64_t max_results = uint64_t{1} << 21);

// The largest b with b < x and norm(b) <= m, if any (absent only when
// x = 0). Constructive — no enumeration.
std::optional<CnfOrdinal> norm_bounded_predecessor(const CnfOrdinal& x,
                                                   uint64_t m);

}  // namespace ordcert
