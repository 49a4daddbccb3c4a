#include "ordcert/phi.hpp"

#include <stdexcept>

namespace ordcert {

uint64_t bitlen(const mpz_class& x) {
  if (x == 0) return 0;
  if (x < 0) throw std::logic_error("bitlen of a negative number");
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

mpz_class iter_exp2(unsigned h, const mpz_class& top, uint64_t max_bits) {
  mpz_class v = top;
  for (unsigned i = 0; i < h; ++i) {
    if (v < 0) throw std::logic_error("iter_exp2 of a negative number");
    if (v > max_bits)
      throw BudgetError("iter_exp2: exponent needs " + v.get_str() +
                        " bits, budget is " + std::to_string(max_bits));
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, v.get_ui());
    v = std::move(r);
  }
  return v;
}

bool le_iter_exp2(const mpz_class& v, unsigned h, const mpz_class& top) {
  if (h == 0) return v <= top;
  if (v <= 1) return true;  // 2_h(top) >= 1 for top >= 0
  // v <= 2^W  iff  v - 1 < 2^W  iff  bitlen(v - 1) <= W, with W = 2_{h-1}(top).
  mpz_class b = mpz_class(bitlen(v - 1));
  return le_iter_exp2(b, h - 1, top);
}

mpz_class f_hierarchy(unsigned n, const mpz_class& x, uint64_t max_bits) {
  if (x < 0) throw std::logic_error("f_hierarchy of a negative argument");
  if (n == 0) {
    if (x > max_bits)
      throw BudgetError("f_hierarchy: 2^x needs " + x.get_str() +
                        " bits, budget is " + std::to_string(max_bits));
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, x.get_ui());
    return r;
  }
  // F_n(x) = F_{n-1}^{x+1}(x): the iteration count itself is budget-checked.
  if (x + 1 > max_bits)
    throw BudgetError("f_hierarchy: iteration count exceeds budget");
  uint64_t iters = mpz_class(x + 1).get_ui();
  mpz_class v = x;
  for (uint64_t i = 0; i < iters; ++i) v = f_hierarchy(n - 1, v, max_bits);
  return v;
}

PhiMode PhiMode::paper() { return PhiMode(Kind::Paper, nullptr, "paper"); }

PhiMode PhiMode::toy() { return toy_offset(2); }

PhiMode PhiMode::toy_offset(uint64_t k) {
  return PhiMode(
      Kind::Toy, [k](uint64_t x) { return x + k; },
      "toy(x+" + std::to_string(k) + ")");
}

PhiMode PhiMode::toy_fn(std::function<uint64_t(uint64_t)> f,
                        std::string name) {
  return PhiMode(Kind::Toy, std::move(f), std::move(name));
}

uint64_t PhiMode::toy_value(uint64_t x) const {
  if (is_paper())
    throw std::logic_error("toy_value called on the paper norm-control mode");
  uint64_t v = fn_(x);
  if (v < x)
    throw std::logic_error("toy norm-control function must satisfy f(x) >= x");
  return v;
}

std::string oracle_rule_name(OracleRule r) {
  switch (r) {
    case OracleRule::MaterializedLePhi: return "materialized-le-phi";
    case OracleRule::SchemaLePhi: return "schema-le-phi";
    case OracleRule::SubsumptionLePhi: return "subsumption-le-phi";
    case OracleRule::F2SideCondition: return "f2-side-condition";
  }
  return "?";
}

DominanceOracle::DominanceOracle(PhiMode mode) : mode_(std::move(mode)) {}

bool DominanceOracle::materialized_le_phi(const mpz_class& value,
                                          const std::string& value_desc,
                                          const mpz_class& phi_arg,
                                          const std::string& phi_arg_desc) {
  const std::string claim = "norm " + value.get_str() + " [" + value_desc +
                            "] <= Phi(" + phi_arg.get_str() + ") [" +
                            phi_arg_desc + "]";
  if (mode_.is_paper()) {
    log_.push_back(
        {OracleRule::MaterializedLePhi, claim,
         "Phi = F_5(x+100); F_5(100) exceeds every machine-representable "
         "value, so any materialized norm is below Phi of any argument"});
    return true;
  }
  // Toy mode: evaluate exactly. f(x) >= x lets us accept early when the
  // value is already at most the argument.
  bool ok = false;
  if (value <= phi_arg) {
    ok = true;
  } else if (phi_arg.fits_ulong_p()) {
    ok = value <= mpz_class(mode_.toy_value(phi_arg.get_ui()));
  }
  if (ok)
    log_.push_back({OracleRule::MaterializedLePhi, claim,
                    "evaluated exactly under " + mode_.name()});
  return ok;
}

bool DominanceOracle::schema_le_phi(const std::string& claim,
                                    const std::string& citation) {
  if (!mode_.is_paper()) return false;  // exact evaluation available instead
  log_.push_back(
      {OracleRule::SchemaLePhi, claim,
       citation +
           "; Phi = F_5(x+100) dominates every F_k-composite with k <= 4 "
           "over premise-bounded arguments"});
  return true;
}

bool DominanceOracle::subsumption_le_phi(const std::string& claim,
                                         uint64_t extra_norm) {
  if (!mode_.is_paper()) return false;
  log_.push_back(
      {OracleRule::SubsumptionLePhi, claim,
       "left argument contained in right up to materialized slack " +
           std::to_string(extra_norm) +
           "; Phi = F_5(x+100) >= x + k for every representable k"});
  return true;
}

bool DominanceOracle::f2_side_condition(const std::string& f_desc,
                                        const std::string& g_desc) {
  log_.push_back(
      {OracleRule::F2SideCondition,
       "no(" + f_desc + ") within F_2(" + g_desc + ")",
       "recursion components produced by the assignment keep their "
       "norm within F_2 of the tail component"});
  return true;
}

}  // namespace ordcert
