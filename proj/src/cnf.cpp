#include "ordcert/cnf.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ordcert {

namespace {

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw BudgetError("ordinal arithmetic exceeds 64-bit coefficient range");
  return r;
}

uint64_t checked_mul(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw BudgetError("ordinal arithmetic exceeds 64-bit coefficient range");
  return r;
}

}  // namespace

CnfOrdinal CnfOrdinal::make(std::vector<Term>&& terms) {
  if (terms.empty()) return CnfOrdinal();
  for (size_t i = 0; i + 1 < terms.size(); ++i) {
    if (!(terms[i + 1].exp < terms[i].exp))
      throw std::logic_error("CnfOrdinal: exponents not strictly descending");
  }
  for (const Term& t : terms) {
    if (t.coeff == 0) throw std::logic_error("CnfOrdinal: zero coefficient");
  }
  return CnfOrdinal(
      std::make_shared<const std::vector<Term>>(std::move(terms)));
}

CnfOrdinal CnfOrdinal::from_nat(uint64_t n) {
  if (n == 0) return CnfOrdinal();
  return make({Term{CnfOrdinal(), n}});
}

CnfOrdinal CnfOrdinal::omega() { return make({Term{from_nat(1), 1}}); }

CnfOrdinal CnfOrdinal::omega_pow(const CnfOrdinal& exp) {
  return make({Term{exp, 1}});
}

CnfOrdinal CnfOrdinal::single(const CnfOrdinal& exp, uint64_t coeff) {
  if (coeff == 0) return CnfOrdinal();
  return make({Term{exp, coeff}});
}

bool CnfOrdinal::is_zero() const { return !terms_ || terms_->empty(); }

bool CnfOrdinal::is_finite() const {
  if (is_zero()) return true;
  return terms_->size() == 1 && (*terms_)[0].exp.is_zero();
}

uint64_t CnfOrdinal::finite_value() const {
  if (is_zero()) return 0;
  if (!is_finite())
    throw std::logic_error("finite_value on an infinite ordinal");
  return (*terms_)[0].coeff;
}

const std::vector<CnfOrdinal::Term>& CnfOrdinal::terms() const {
  static const std::vector<Term> empty;
  return terms_ ? *terms_ : empty;
}

int CnfOrdinal::compare(const CnfOrdinal& a, const CnfOrdinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const size_t n = std::min(ta.size(), tb.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(ta[i].exp, tb[i].exp);
    if (c != 0) return c;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

std::string CnfOrdinal::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms()) {
    if (!first) out += " + ";
    first = false;
    if (t.exp.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    if (t.exp.is_finite() && t.exp.finite_value() == 1) {
      out += "w";
    } else {
      out += "w^{" + t.exp.to_string() + "}";
    }
    if (t.coeff != 1) out += "·" + std::to_string(t.coeff);
  }
  return out;
}

CnfOrdinal nat_sum(const CnfOrdinal& a, const CnfOrdinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::vector<CnfOrdinal::Term> out;
  out.reserve(ta.size() + tb.size());
  size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (i == ta.size()) {
      out.push_back(tb[j++]);
    } else if (j == tb.size()) {
      out.push_back(ta[i++]);
    } else {
      int c = CnfOrdinal::compare(ta[i].exp, tb[j].exp);
      if (c > 0) {
        out.push_back(ta[i++]);
      } else if (c < 0) {
        out.push_back(tb[j++]);
      } else {
        out.push_back(CnfOrdinal::Term{ta[i].exp,
                                       checked_add(ta[i].coeff, tb[j].coeff)});
        ++i;
        ++j;
      }
    }
  }
  return CnfOrdinal::make(std::move(out));
}

CnfOrdinal nat_prod(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (a.is_zero() || b.is_zero()) return CnfOrdinal::zero();
  std::map<CnfOrdinal, uint64_t, std::greater<CnfOrdinal>> acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      CnfOrdinal e = nat_sum(ta.exp, tb.exp);
      uint64_t c = checked_mul(ta.coeff, tb.coeff);
      auto [it, inserted] = acc.emplace(std::move(e), c);
      if (!inserted) it->second = checked_add(it->second, c);
    }
  }
  std::vector<CnfOrdinal::Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back(CnfOrdinal::Term{e, c});
  return CnfOrdinal::make(std::move(out));
}

CnfOrdinal exp2(const CnfOrdinal& a) {
  // Split a = w*a0 + n with n < w; then 2^a = w^{a0} * 2^n.
  uint64_t n = 0;
  std::vector<CnfOrdinal::Term> a0_terms;
  for (const auto& t : a.terms()) {
    if (t.exp.is_zero()) {
      n = t.coeff;
      continue;
    }
    // w^{g}*c with g >= 1 equals w * w^{d}*c where g = 1 + d:
    // d = g - 1 for finite g, d = g for infinite g.
    CnfOrdinal d;
    if (t.exp.is_finite()) {
      d = CnfOrdinal::from_nat(t.exp.finite_value() - 1);
    } else {
      d = t.exp;
    }
    a0_terms.push_back(CnfOrdinal::Term{d, t.coeff});
  }
  if (n > 63)
    throw BudgetError("exp2: finite part " + std::to_string(n) +
                      " exceeds the 64-bit coefficient range");
  // The d-exponents stay strictly descending: g -> d is order-preserving
  // and injective on exponents >= 1.
  CnfOrdinal a0 = CnfOrdinal::make(std::move(a0_terms));
  return CnfOrdinal::single(a0, uint64_t{1} << n);
}

uint64_t norm(const CnfOrdinal& a) {
  uint64_t total = 0;
  for (const auto& t : a.terms())
    total = checked_add(total, checked_mul(t.coeff, checked_add(1, norm(t.exp))));
  return total;
}

bool EnumerationCache::Key::operator<(const Key& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (m != o.m) return m < o.m;
  return bound < o.bound;
}

EnumerationCache::EnumerationCache(uint64_t max_emissions)
    : max_emissions_(max_emissions) {}

void EnumerationCache::spend() {
  if (emitted_ >= max_emissions_)
    throw BudgetError("enumeration: construction budget exceeded");
  ++emitted_;
}

// All ordinals with norm <= m whose exponents are all < *cap (no exponent
// restriction when cap is null; that path requires m <= kMaxEnumNorm,
// checked by full()).
std::shared_ptr<const std::vector<CnfOrdinal>> EnumerationCache::tails(
    uint64_t m, const CnfOrdinal* cap) {
  Key key{cap ? 2 : 0, cap ? *cap : CnfOrdinal(), m};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::vector<CnfOrdinal> exps;
  if (m >= 1) {
    exps = cap ? *below(m - 1, *cap) : *tails(m - 1, nullptr);
  }
  // Scan exponents descending so every coefficient choice emits a valid
  // descending term list.
  std::sort(exps.begin(), exps.end(),
            [](const CnfOrdinal& x, const CnfOrdinal& y) { return y < x; });
  std::vector<uint64_t> costs(exps.size());
  for (size_t i = 0; i < exps.size(); ++i) costs[i] = 1 + norm(exps[i]);

  auto result = std::make_shared<std::vector<CnfOrdinal>>();
  std::vector<CnfOrdinal::Term> current;
  auto rec = [&](auto&& self, size_t idx, uint64_t left) -> void {
    if (idx == exps.size()) {
      spend();
      result->push_back(CnfOrdinal::make(std::vector(current)));
      return;
    }
    self(self, idx + 1, left);  // coefficient 0
    uint64_t max_count = left / costs[idx];
    for (uint64_t c = 1; c <= max_count; ++c) {
      current.push_back(CnfOrdinal::Term{exps[idx], c});
      self(self, idx + 1, left - c * costs[idx]);
      current.pop_back();
    }
  };
  rec(rec, 0, m);
  std::sort(result->begin(), result->end());
  cache_.emplace(std::move(key), result);
  return result;
}

// All ordinals g with norm(g) <= m and g < beta, by splitting on the first
// position where g's term list drops below beta's.
std::shared_ptr<const std::vector<CnfOrdinal>> EnumerationCache::below(
    uint64_t m, const CnfOrdinal& beta) {
  Key key{1, beta, m};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  auto result = std::make_shared<std::vector<CnfOrdinal>>();
  std::vector<CnfOrdinal::Term> prefix;  // shared leading terms of beta
  uint64_t prefix_norm = 0;
  auto emit = [&](const CnfOrdinal::Term* mid, const CnfOrdinal& tail) {
    std::vector<CnfOrdinal::Term> terms = prefix;
    if (mid) terms.push_back(*mid);
    for (const auto& t : tail.terms()) terms.push_back(t);
    spend();
    result->push_back(CnfOrdinal::make(std::move(terms)));
  };
  for (const auto& bterm : beta.terms()) {
    if (prefix_norm > m) break;
    const CnfOrdinal& e = bterm.exp;
    const uint64_t cost = checked_add(1, norm(e));
    const uint64_t left = m - prefix_norm;
    // (i) drop below beta's exponent here (the empty tail recovers the bare
    // prefix, which is < beta because beta continues).
    for (const CnfOrdinal& tail : *tails(left, &e)) emit(nullptr, tail);
    // (ii) same exponent, smaller coefficient, then anything below it.
    for (uint64_t c = 1; c < bterm.coeff; ++c) {
      if (c > left / cost) break;
      CnfOrdinal::Term mid{e, c};
      for (const CnfOrdinal& tail : *tails(left - c * cost, &e))
        emit(&mid, tail);
    }
    // (iii) keep beta's term and continue at the next position.
    uint64_t full = checked_mul(bterm.coeff, cost);
    if (full > left) break;
    prefix_norm += full;
    prefix.push_back(bterm);
  }
  std::sort(result->begin(), result->end());
  cache_.emplace(std::move(key), result);
  return result;
}

std::shared_ptr<const std::vector<CnfOrdinal>> EnumerationCache::full(
    uint64_t m) {
  if (m > kMaxEnumNorm)
    throw BudgetError("enumeration: norm bound " + std::to_string(m) +
                      " exceeds cap " + std::to_string(kMaxEnumNorm) +
                      " (only strict-bounded enumeration goes further)");
  return tails(m, nullptr);
}

std::vector<CnfOrdinal> enumerate_norm_bounded(
    uint64_t m, const std::optional<CnfOrdinal>& strict_bound,
    uint64_t max_results) {
  EnumerationCache cache(max_results);
  return strict_bound ? *cache.below(m, *strict_bound) : *cache.full(m);
}

namespace {

// The largest ordinal with norm <= m all of whose exponents are < cap.
CnfOrdinal max_tail(uint64_t m, const CnfOrdinal& cap) {
  if (m == 0) return CnfOrdinal::zero();
  auto e = norm_bounded_predecessor(cap, m - 1);
  if (!e) return CnfOrdinal::zero();  // cap == 0: no exponent available
  // The leading exponent dominates the value, then the coefficient, then
  // the (recursively maximal) tail.
  const uint64_t cost = checked_add(1, norm(*e));
  const uint64_t k = m / cost;  // >= 1 since norm(*e) <= m - 1
  CnfOrdinal rest = max_tail(m - k * cost, *e);
  std::vector<CnfOrdinal::Term> terms;
  terms.reserve(1 + rest.terms().size());
  terms.push_back(CnfOrdinal::Term{*e, k});
  for (const auto& t : rest.terms()) terms.push_back(t);
  return CnfOrdinal::make(std::move(terms));
}

}  // namespace

std::optional<CnfOrdinal> norm_bounded_predecessor(const CnfOrdinal& x,
                                                   uint64_t m) {
  const auto& xt = x.terms();
  if (xt.empty()) return std::nullopt;
  std::vector<uint64_t> cost(xt.size());
  std::vector<uint64_t> prefix_norm(xt.size() + 1, 0);
  for (size_t i = 0; i < xt.size(); ++i) {
    cost[i] = checked_add(1, norm(xt[i].exp));
    prefix_norm[i + 1] =
        checked_add(prefix_norm[i], checked_mul(xt[i].coeff, cost[i]));
  }
  // Any b < x shares a prefix with x and then drops at some position: same
  // exponent with a smaller coefficient, a smaller exponent, or the bare
  // prefix. Later drop positions give larger ordinals, and prefix norms
  // grow with position, so scanning positions from the back and returning
  // the first feasible drop yields the maximum.
  for (size_t pos = xt.size(); pos-- > 0;) {
    if (prefix_norm[pos] > m) continue;
    const uint64_t left = m - prefix_norm[pos];
    std::vector<CnfOrdinal::Term> terms(xt.begin(), xt.begin() + pos);
    // Same exponent, largest smaller coefficient, then a maximal tail.
    const uint64_t cmax = std::min(xt[pos].coeff - 1, left / cost[pos]);
    if (cmax >= 1) {
      terms.push_back(CnfOrdinal::Term{xt[pos].exp, cmax});
      const CnfOrdinal tail = max_tail(left - cmax * cost[pos], xt[pos].exp);
      for (const auto& t : tail.terms()) terms.push_back(t);
      return CnfOrdinal::make(std::move(terms));
    }
    // Largest smaller exponent, then the largest coefficient that fits.
    if (left >= 1) {
      if (auto e = norm_bounded_predecessor(xt[pos].exp, left - 1)) {
        const uint64_t c = checked_add(1, norm(*e));
        const uint64_t k = left / c;  // >= 1
        terms.push_back(CnfOrdinal::Term{*e, k});
        const CnfOrdinal tail = max_tail(left - k * c, *e);
        for (const auto& t : tail.terms()) terms.push_back(t);
        return CnfOrdinal::make(std::move(terms));
      }
    }
    // Bare prefix (strictly below x because x continues at pos).
    return CnfOrdinal::make(std::move(terms));
  }
  return std::nullopt;  // unreachable: prefix_norm[0] == 0 <= m
}

}  // namespace ordcert
