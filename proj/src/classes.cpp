#include "ordcert/classes.hpp"

#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "ordcert/cnf.hpp"

namespace ordcert {

namespace {

constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();

// Saturating arithmetic: these bounds only ever feed one-sided
// comparisons, so clamping at the top is sound.
uint64_t sat_add(uint64_t a, uint64_t b) { return a > kMax - b ? kMax : a + b; }

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kMax / b ? kMax : a * b;
}

}  // namespace

std::string class_kind_name(ClassKind kind) {
  switch (kind) {
    case ClassKind::Closed: return "Closed";
    case ClassKind::General: return "General";
    case ClassKind::Binder: return "Binder";
  }
  return "?";
}

std::string ClassViolation::to_string() const {
  return "level " + std::to_string(level) + ": " + reason + " [" +
         subterm.to_string() + "]";
}

std::optional<SymNormBound> sym_norm_upper(const OTerm& h) {
  switch (h.kind()) {
    case OTerm::Kind::One:
    case OTerm::Kind::Omega:
      return SymNormBound{1, {}};
    case OTerm::Kind::Var: {
      SymNormBound b;
      b.var_mults[h.var_base()] = 1;
      return b;
    }
    case OTerm::Kind::Sum: {
      SymNormBound total;
      for (const OTerm& op : h.operands()) {
        auto sub = sym_norm_upper(op);
        if (!sub) return std::nullopt;
        total.finite = sat_add(total.finite, sub->finite);
        for (const auto& [fam, mult] : sub->var_mults)
          total.var_mults[fam] = sat_add(total.var_mults[fam], mult);
      }
      return total;
    }
    case OTerm::Kind::ExpProd: {
      // no(2^f.g) <= 2^{no(f)} * no(g); only a fully finite exponent bound
      // keeps this representable.
      auto f = sym_norm_upper(h.left());
      auto g = sym_norm_upper(h.right());
      if (!f || !g || !f->var_mults.empty() || f->finite >= 63)
        return std::nullopt;
      uint64_t pow = uint64_t{1} << f->finite;
      SymNormBound b;
      b.finite = sat_mul(pow, g->finite);
      for (const auto& [fam, mult] : g->var_mults)
        b.var_mults[fam] = sat_mul(pow, mult);
      return b;
    }
    case OTerm::Kind::Psi:
      // The value is a natural number equal to its own norm, with no
      // syntactic bound short of evaluating.
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<uint64_t> norm_upper_nat(const OTerm& h) {
  auto b = sym_norm_upper(h);
  if (!b || !b->var_mults.empty()) return std::nullopt;
  return b->finite;
}

uint64_t value_lower_nat(const OTerm& h) {
  switch (h.kind()) {
    case OTerm::Kind::One:
    case OTerm::Kind::Var:
      return 1;
    case OTerm::Kind::Omega:
      return 2;
    case OTerm::Kind::Sum: {
      uint64_t total = 0;
      for (const OTerm& op : h.operands())
        total = sat_add(total, value_lower_nat(op));
      return total;
    }
    case OTerm::Kind::ExpProd:
      return sat_mul(2, value_lower_nat(h.right()));
    case OTerm::Kind::Psi:
      // p(f; g) collapses w*f + g, and the collapse of a sum is at least
      // the sum's norm, which exceeds the norm (= value, both finite at
      // level 0) of the tail.
      return sat_add(1, value_lower_nat(h.right()));
  }
  return 1;
}

uint64_t norm_lower_nat(const OTerm& h) {
  switch (h.kind()) {
    case OTerm::Kind::One:
    case OTerm::Kind::Omega:
    case OTerm::Kind::Var:
    case OTerm::Kind::ExpProd:
      // Every value is >= 1, hence so is every norm; w and base-2
      // products can have norm far below their value, so 1 is all that
      // is guaranteed.
      return 1;
    case OTerm::Kind::Sum: {
      uint64_t total = 0;
      for (const OTerm& op : h.operands())
        total = sat_add(total, norm_lower_nat(op));
      return total;
    }
    case OTerm::Kind::Psi:
      // The collapse is a natural number equal to its own norm, bounded
      // below by 1 plus the norm of the tail argument.
      return sat_add(1, norm_lower_nat(h.right()));
  }
  return 1;
}

namespace {

// Additive leaves of g: level-0 variable occurrences are counted per
// family; everything else contributes a lower bound under the chosen
// weighting.
struct SpineTally {
  std::map<TypedVar, uint64_t> var0_leaves;
  uint64_t other_lower = 0;
};

void tally_spine(const OTerm& g, SpineWeight weight, SpineTally& t) {
  switch (g.kind()) {
    case OTerm::Kind::Sum:
      for (const OTerm& op : g.operands()) tally_spine(op, weight, t);
      return;
    case OTerm::Kind::Var:
      if (g.var_index() == 0) {
        t.var0_leaves[g.var_base()] = sat_add(t.var0_leaves[g.var_base()], 1);
        return;
      }
      break;
    default:
      break;
  }
  t.other_lower = sat_add(t.other_lower, weight == SpineWeight::Value
                                             ? value_lower_nat(g)
                                             : norm_lower_nat(g));
}

}  // namespace

bool additive_spine_covers(const OTerm& g, const SymNormBound& bound,
                           SpineWeight weight) {
  SpineTally t;
  tally_spine(g, weight, t);
  // Match each variable demand against a level-0 leaf of the same family;
  // surplus leaves are worth >= 1 each toward the finite demand.
  uint64_t spare = t.other_lower;
  for (const auto& [fam, have] : t.var0_leaves) {
    auto it = bound.var_mults.find(fam);
    uint64_t need = it == bound.var_mults.end() ? 0 : it->second;
    if (have < need) return false;
    spare = sat_add(spare, have - need);
  }
  for (const auto& [fam, need] : bound.var_mults) {
    if (need > 0 && t.var0_leaves.find(fam) == t.var0_leaves.end())
      return false;
  }
  return bound.finite <= spare;
}

namespace {

class MembershipChecker {
 public:
  MembershipChecker(ClassKind kind, const TypedVar* binder,
                    DominanceOracle* oracle, PsiEvaluator* exact,
                    PsiSide side)
      : kind_(kind), binder_(binder), oracle_(oracle), exact_(exact),
        side_(side) {
    if (kind_ == ClassKind::Binder && binder_ == nullptr)
      throw TypeError("class membership: the binder kind needs the "
                      "distinguished variable family");
  }

  std::optional<ClassViolation> check(const OTerm& h, int i) {
    if (i < 0) throw TypeError("class membership: negative level");
    auto key = std::make_pair(h.identity(), i);
    if (ok_.count(key)) return std::nullopt;
    auto result = check_uncached(h, i);
    if (!result) ok_.insert(key);
    return result;
  }

 private:
  std::optional<ClassViolation> check_uncached(const OTerm& h, int i) {
    switch (h.kind()) {
      case OTerm::Kind::One:
        return std::nullopt;
      case OTerm::Kind::Omega:
        if (i >= 1) return std::nullopt;
        return ClassViolation{h, i, "w admits no membership at level 0"};
      case OTerm::Kind::Var: {
        if (kind_ == ClassKind::Closed)
          return ClassViolation{h, i,
                                "the closed class contains no variables"};
        int j = h.var_index();
        if (j == i) return std::nullopt;
        if (j == 0 && i >= 1) {
          // Level raising of the level-0 member x[0].
          if (kind_ == ClassKind::Binder && h.var_base() == *binder_)
            return ClassViolation{
                h, i,
                "level raising needs freedom from the distinguished "
                "family, and this is that family's own level-0 component"};
          return std::nullopt;
        }
        return ClassViolation{
            h, i,
            "a variable indexed " + std::to_string(j) +
                " inhabits level " + std::to_string(j) +
                " only; level raising lifts level-0 members"};
      }
      case OTerm::Kind::Sum: {
        for (const OTerm& op : h.operands())
          if (auto v = check(op, i)) return v;
        return std::nullopt;
      }
      case OTerm::Kind::ExpProd: {
        if (i == 0)
          return ClassViolation{
              h, 0, "base-2 product terms admit no membership at level 0"};
        if (auto v = check(h.left(), i + 1)) return v;
        return check(h.right(), i);
      }
      case OTerm::Kind::Psi: {
        // Membership is established at level 0 and, for i >= 1, raised.
        if (i >= 1 && kind_ == ClassKind::Binder && !h.x_free(*binder_))
          return ClassViolation{
              h, i,
              "level raising needs freedom from the distinguished family, "
              "and this collapse term contains it"};
        if (auto v = check(h.left(), 1)) return v;
        if (auto v = check(h.right(), 0)) return v;
        if (!psi_side_condition(h.left(), h.right()))
          return ClassViolation{
              h, i,
              "norm side condition no(f) within F_2(g) could not be "
              "discharged (no syntactic bound, no exact evaluation, no "
              "oracle)"};
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  bool psi_side_condition(const OTerm& f, const OTerm& g) {
    if (side_ == PsiSide::Assume) return true;
    auto bound = sym_norm_upper(f);
    // A bound without variable demands is itself a 64-bit value, and
    // already F_2(1) = F_1(F_1(1)) towers far beyond 2^64, so any
    // argument value (always >= 1) suffices.
    if (bound && bound->var_mults.empty()) return true;
    if (bound && additive_spine_covers(g, *bound, SpineWeight::Value))
      return true;
    if (exact_ && f.closed() && g.closed()) {
      try {
        // Any norm the evaluator can materialize fits in 64 bits and is
        // dominated by F_2 of any argument value >= 1.
        (void)norm(eval_closed(f, *exact_));
        return true;
      } catch (const BudgetError&) {
        // fall through to the oracle
      }
    }
    if (oracle_) return oracle_->f2_side_condition(f.to_string(), g.to_string());
    return false;
  }

  ClassKind kind_;
  const TypedVar* binder_;
  DominanceOracle* oracle_;
  PsiEvaluator* exact_;
  PsiSide side_;
  std::set<std::pair<const void*, int>> ok_;
};

}  // namespace

std::optional<ClassViolation> class_violation(const OTerm& h, int i,
                                              ClassKind kind,
                                              const TypedVar* binder,
                                              DominanceOracle* oracle,
                                              PsiEvaluator* exact,
                                              PsiSide side) {
  MembershipChecker checker(kind, binder, oracle, exact, side);
  return checker.check(h, i);
}

bool class_membership(const OTerm& h, int i, ClassKind kind,
                      const TypedVar* binder, DominanceOracle* oracle,
                      PsiEvaluator* exact, PsiSide side) {
  return !class_violation(h, i, kind, binder, oracle, exact, side)
              .has_value();
}

std::optional<ClassViolation> vector_class_violation(const OrdinalVector& v,
                                                     ClassKind kind,
                                                     const TypedVar* binder,
                                                     DominanceOracle* oracle,
                                                     PsiEvaluator* exact,
                                                     PsiSide side) {
  MembershipChecker checker(kind, binder, oracle, exact, side);
  for (int i = 0; i <= v.level(); ++i)
    if (auto viol = checker.check(v[i], i)) return viol;
  return std::nullopt;
}

bool vector_in_class(const OrdinalVector& v, ClassKind kind,
                     const TypedVar* binder, DominanceOracle* oracle,
                     PsiEvaluator* exact, PsiSide side) {
  return !vector_class_violation(v, kind, binder, oracle, exact, side)
              .has_value();
}

std::optional<std::string> bounded_norm_violation(const OrdinalVector& v,
                                                  DominanceOracle* oracle,
                                                  PsiEvaluator* exact) {
  if (v.closed() && exact) {
    try {
      uint64_t head = norm(eval_closed(v[0], *exact));
      for (int i = 1; i <= v.level(); ++i) {
        uint64_t ni = norm(eval_closed(v[i], *exact));
        if (ni > head)
          return "component " + std::to_string(i) + " has norm " +
                 std::to_string(ni) + " > " + std::to_string(head) +
                 " = norm of component 0";
      }
      return std::nullopt;
    } catch (const BudgetError&) {
      // fall through to the syntactic rules
    }
  }
  for (int i = 1; i <= v.level(); ++i) {
    auto bound = sym_norm_upper(v[i]);
    if (bound && additive_spine_covers(v[0], *bound, SpineWeight::Norm))
      continue;
    if (oracle &&
        oracle->schema_le_phi(
            "no(" + v[i].to_string() + ") within no(" + v[0].to_string() + ")",
            "bounded norm by construction of the head component"))
      continue;
    return "component " + std::to_string(i) +
           " admits no norm bound below component 0 (no syntactic bound, "
           "no exact evaluation, no oracle)";
  }
  return std::nullopt;
}

bool bounded_norm(const OrdinalVector& v, DominanceOracle* oracle,
                  PsiEvaluator* exact) {
  return !bounded_norm_violation(v, oracle, exact).has_value();
}

}  // namespace ordcert
