#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ordcert/types.hpp"

namespace ordcert {

// Number of bits in x; bitlen(0) = 0.
uint64_t bitlen(const mpz_class& x);

// 2_h(top): h-fold iterated base-2 exponential of top. Throws BudgetError
// once an intermediate exponent exceeds max_bits.
mpz_class iter_exp2(unsigned h, const mpz_class& top,
                    uint64_t max_bits = uint64_t{1} << 22);

// Exact test v <= 2_h(top) without materializing the tower (iterated bitlen
// descent), so towers far beyond memory are still comparable.
bool le_iter_exp2(const mpz_class& v, unsigned h, const mpz_class& top);

// F_0(x) = 2^x, F_{n+1}(x) = F_n^{x+1}(x). Exact evaluation; throws
// BudgetError when an intermediate value exceeds max_bits bits.
mpz_class f_hierarchy(unsigned n, const mpz_class& x,
                      uint64_t max_bits = uint64_t{1} << 22);

// The norm-control function used by the collapsing function psi and by the
// comparison engine's side conditions.
//
// Paper mode: Phi(x) = F_5(x + 100). Never evaluated numerically; claims of
// the form "materialized value <= Phi(materialized arg)" are discharged by
// the dominance oracle because F_5(100) already exceeds every machine-
// representable number.
//
// Toy mode: a computable monotone function with f(x) >= x (default x + 2),
// small enough that psi becomes evaluable by enumeration.
class PhiMode {
public:
  enum class Kind { Paper, Toy };

  static PhiMode paper();
  static PhiMode toy();  // x + 2
  static PhiMode toy_offset(uint64_t k);  // x + k, k >= 0
  static PhiMode toy_fn(std::function<uint64_t(uint64_t)> f,
                        std::string name);

  Kind kind() const { return kind_; }
  bool is_paper() const { return kind_ == Kind::Paper; }
  // Evaluate the toy function. Precondition: !is_paper().
  uint64_t toy_value(uint64_t x) const;
  const std::string& name() const { return name_; }

private:
  PhiMode(Kind k, std::function<uint64_t(uint64_t)> f, std::string name)
      : kind_(k), fn_(std::move(f)), name_(std::move(name)) {}
  Kind kind_;
  std::function<uint64_t(uint64_t)> fn_;
  std::string name_;
};

enum class OracleRule {
  MaterializedLePhi,  // exact natural <= Phi(exact natural)
  SchemaLePhi,        // F_k-composite over premise-backed args, k <= 4
  SubsumptionLePhi,   // lhs norm <= rhs norm + materialized slack
  F2SideCondition,    // psi-clause norm side condition of class membership
};

std::string oracle_rule_name(OracleRule r);

struct OracleUse {
  OracleRule rule;
  std::string claim;
  std::string justification;
};

// Audit-logged authority for norm-dominance side conditions. Every accepted
// claim is appended to the log; rejected claims leave no trace and the
// caller must fail its construction. Paper mode accepts the three Phi-claim
// forms by dominance of F_5(x+100); toy mode evaluates MaterializedLePhi
// exactly and refuses the schema and subsumption forms (exact evaluation is
// available there instead).
class DominanceOracle {
public:
  explicit DominanceOracle(PhiMode mode);

  const PhiMode& mode() const { return mode_; }

  // value <= Phi(phi_arg)?
  bool materialized_le_phi(const mpz_class& value,
                           const std::string& value_desc,
                           const mpz_class& phi_arg,
                           const std::string& phi_arg_desc);
  // claim: an F_k-expression composite (k <= 4) bounds the left norm and is
  // itself below Phi of the right norm; citation names the bounding lemma
  // and the premise backing the argument comparison.
  bool schema_le_phi(const std::string& claim, const std::string& citation);
  // Left psi-argument is contained in the right one up to summands of
  // materialized total norm extra_norm.
  bool subsumption_le_phi(const std::string& claim, uint64_t extra_norm);
  // Class-membership side condition "no(f) within F_2(g)" for a psi-shaped
  // term whose syntactic short circuit failed. Phi-independent.
  bool f2_side_condition(const std::string& f_desc, const std::string& g_desc);

  const std::vector<OracleUse>& uses() const { return log_; }
  void clear() { log_.clear(); }

private:
  PhiMode mode_;
  std::vector<OracleUse> log_;
};

}  // namespace ordcert
