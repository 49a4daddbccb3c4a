#include "ordcert/classes.hpp"

#include <vector>

#include "doctest.h"
#include "ordcert/oterm.hpp"
#include "ordcert/phi.hpp"
#include "ordcert/psi.hpp"
#include "ordcert/types.hpp"
#include "ordcert/vector.hpp"

using namespace ordcert;

namespace {

const FiniteType kGround = FiniteType::ground();
const FiniteType kArrow = FiniteType::arrow(kGround, kGround);

TypedVar X() { return TypedVar{"X", kArrow}; }
TypedVar Y() { return TypedVar{"Y", kArrow}; }

const std::vector<ClassKind> kAllKinds{ClassKind::Closed, ClassKind::General,
                                       ClassKind::Binder};

bool member(const OTerm& h, int i, ClassKind kind, const TypedVar* binder,
            DominanceOracle* oracle = nullptr, PsiEvaluator* exact = nullptr) {
  return class_membership(h, i, kind, binder, oracle, exact);
}

}  // namespace

TEST_CASE("constants across kinds and levels") {
  TypedVar x = X();
  for (ClassKind kind : kAllKinds) {
    for (int i = 0; i <= 3; ++i) {
      CHECK(member(OTerm::one(), i, kind, &x));
      CHECK(member(OTerm::omega(), i, kind, &x) == (i >= 1));
    }
  }
  auto viol = class_violation(OTerm::omega(), 0, ClassKind::General);
  REQUIRE(viol.has_value());
  CHECK(viol->level == 0);
  CHECK(viol->subterm == OTerm::omega());
}

TEST_CASE("base-2 products need level at least 1") {
  TypedVar x = X();
  OTerm p = OTerm::exp_prod(OTerm::omega(), OTerm::omega());
  for (ClassKind kind : kAllKinds) {
    CHECK_FALSE(member(p, 0, kind, &x));
    CHECK(member(p, 1, kind, &x));   // exponent at level 2, factor at 1
    CHECK(member(p, 2, kind, &x));
  }
  // A sum containing one is rejected with the product as witness.
  OTerm s = OTerm::sum2(OTerm::one(), p);
  auto viol = class_violation(s, 0, ClassKind::General);
  REQUIRE(viol.has_value());
  CHECK(viol->subterm == p);
}

TEST_CASE("variable membership per kind") {
  TypedVar x = X();
  TypedVar y = Y();
  OTerm x0 = OTerm::var(x, 0);
  OTerm x1 = OTerm::var(x, 1);
  OTerm y0 = OTerm::var(y, 0);

  // The closed class has no variables anywhere.
  CHECK_FALSE(member(x0, 0, ClassKind::Closed, nullptr));
  CHECK_FALSE(member(x0, 2, ClassKind::Closed, nullptr));

  // General: index == level, or the level-0 member raised.
  CHECK(member(x0, 0, ClassKind::General, nullptr));
  CHECK(member(x0, 3, ClassKind::General, nullptr));
  CHECK(member(x1, 1, ClassKind::General, nullptr));
  CHECK_FALSE(member(x1, 0, ClassKind::General, nullptr));
  CHECK_FALSE(member(x1, 2, ClassKind::General, nullptr));

  // Binder relative to X: raising stops at X's own components.
  CHECK(member(x0, 0, ClassKind::Binder, &x));
  CHECK(member(x1, 1, ClassKind::Binder, &x));
  CHECK_FALSE(member(x0, 1, ClassKind::Binder, &x));
  CHECK(member(y0, 1, ClassKind::Binder, &x));
  CHECK(member(y0, 0, ClassKind::Binder, &x));

  // As a consequence, a Binder-class member at level i never contains
  // the binder family below index i.
  OTerm mixed = OTerm::sum2(y0, x0);
  CHECK(member(mixed, 0, ClassKind::Binder, &x));
  CHECK_FALSE(member(mixed, 2, ClassKind::Binder, &x));

  CHECK_THROWS_AS(member(x0, 0, ClassKind::Binder, nullptr), TypeError);
}

TEST_CASE("collapse terms live at level 0 and raise when permitted") {
  TypedVar x = X();
  TypedVar y = Y();
  OTerm p = OTerm::psi_term(OTerm::one(), OTerm::from_nat(2));
  for (ClassKind kind : kAllKinds) {
    CHECK(member(p, 0, kind, &x));
    CHECK(member(p, 2, kind, &x));  // closed, so raising is unconditional
  }
  // Raising a collapse term that mentions the binder family fails.
  OTerm px = OTerm::psi_term(OTerm::var(x, 1), OTerm::var(x, 0));
  CHECK(member(px, 0, ClassKind::General, nullptr));
  CHECK(member(px, 0, ClassKind::Binder, &x));
  CHECK(member(px, 1, ClassKind::General, nullptr));
  CHECK_FALSE(member(px, 1, ClassKind::Binder, &x));
  // Free of the binder family: raising is fine again.
  OTerm py = OTerm::psi_term(OTerm::var(y, 1), OTerm::var(y, 0));
  CHECK(member(py, 1, ClassKind::Binder, &x));
}

TEST_CASE("collapse norm side condition routes") {
  TypedVar x = X();
  TypedVar y = Y();
  // Finite syntactic bound: machine fact, no oracle needed.
  CHECK(member(OTerm::psi_term(OTerm::omega(), OTerm::one()), 0,
               ClassKind::General, nullptr));
  // Exponent norm bounded by the same family's level-0 leaf in the tail.
  OTerm matched = OTerm::psi_term(OTerm::var(x, 1), OTerm::var(x, 0));
  CHECK(member(matched, 0, ClassKind::General, nullptr));
  // Mismatched families: no machine route, so it needs the oracle.
  OTerm mismatched = OTerm::psi_term(OTerm::var(y, 1), OTerm::var(x, 0));
  auto viol = class_violation(mismatched, 0, ClassKind::General);
  REQUIRE(viol.has_value());
  CHECK(viol->reason.find("side condition") != std::string::npos);
  DominanceOracle oracle(PhiMode::paper());
  CHECK(member(mismatched, 0, ClassKind::General, nullptr, &oracle));
  REQUIRE(oracle.uses().size() == 1);
  CHECK(oracle.uses()[0].rule == OracleRule::F2SideCondition);
  // Closed exponent with a collapse inside: no syntactic bound, but an
  // exact evaluator settles it.
  OTerm nested = OTerm::psi_term(OTerm::psi_term(OTerm::one(), OTerm::one()),
                                 OTerm::one());
  CHECK_FALSE(member(nested, 0, ClassKind::General, nullptr));
  PsiEvaluator toy(PhiMode::toy());
  CHECK(member(nested, 0, ClassKind::General, nullptr, nullptr, &toy));
}

TEST_CASE("syntactic norm and value bounds") {
  TypedVar x = X();
  CHECK(norm_upper_nat(OTerm::one()) == 1);
  CHECK(norm_upper_nat(OTerm::omega()) == 1);
  CHECK(norm_upper_nat(OTerm::from_nat(4)) == 4);
  CHECK(norm_upper_nat(OTerm::exp_prod(OTerm::from_nat(2), OTerm::omega())) ==
        4);  // 2^2 * 1
  CHECK_FALSE(norm_upper_nat(OTerm::var(x, 0)).has_value());
  CHECK_FALSE(
      norm_upper_nat(OTerm::psi_term(OTerm::one(), OTerm::one())).has_value());

  auto sym = sym_norm_upper(OTerm::sum2(OTerm::var(x, 1), OTerm::from_nat(3)));
  REQUIRE(sym.has_value());
  CHECK(sym->finite == 3);
  CHECK(sym->var_mults.at(x) == 1);
  // A variable in the exponent defeats the product bound.
  CHECK_FALSE(sym_norm_upper(OTerm::exp_prod(OTerm::var(x, 1), OTerm::one()))
                  .has_value());

  CHECK(value_lower_nat(OTerm::from_nat(3)) == 3);
  CHECK(value_lower_nat(OTerm::psi_term(OTerm::one(), OTerm::from_nat(2))) ==
        3);
  CHECK(value_lower_nat(OTerm::exp_prod(OTerm::omega(), OTerm::from_nat(3))) ==
        6);
  CHECK(value_lower_nat(OTerm::var(x, 1)) == 1);
  // Norm lower bounds collapse w and products to 1.
  CHECK(norm_lower_nat(OTerm::omega()) == 1);
  CHECK(norm_lower_nat(OTerm::exp_prod(OTerm::omega(), OTerm::from_nat(3))) ==
        1);
  CHECK(norm_lower_nat(OTerm::sum2(OTerm::omega(), OTerm::one())) == 2);
}

TEST_CASE("additive spine covering") {
  TypedVar x = X();
  TypedVar y = Y();
  OTerm g = OTerm::sum2(OTerm::var(x, 0), OTerm::one());

  SymNormBound need_var{1, {{x, 1}}};
  CHECK(additive_spine_covers(g, need_var, SpineWeight::Value));
  SymNormBound need_more{2, {{x, 1}}};
  CHECK_FALSE(additive_spine_covers(g, need_more, SpineWeight::Value));
  SymNormBound wrong_family{0, {{y, 1}}};
  CHECK_FALSE(additive_spine_covers(g, wrong_family, SpineWeight::Value));
  // Surplus variable leaves absorb finite demand.
  OTerm g2 = OTerm::sum2(OTerm::var(x, 0), OTerm::var(x, 0));
  SymNormBound fin2{2, {}};
  CHECK(additive_spine_covers(g2, fin2, SpineWeight::Value));
  // Weighting matters: w is worth 2 as a value but only 1 as a norm.
  SymNormBound fin{2, {}};
  CHECK(additive_spine_covers(OTerm::omega(), fin, SpineWeight::Value));
  CHECK_FALSE(additive_spine_covers(OTerm::omega(), fin, SpineWeight::Norm));
}

TEST_CASE("vector membership") {
  TypedVar x = X();
  OrdinalVector rec({OTerm::from_nat(2), OTerm::one(), OTerm::omega()});
  CHECK(vector_in_class(rec, ClassKind::Closed));
  CHECK(vector_in_class(rec, ClassKind::General));
  CHECK(vector_in_class(rec, ClassKind::Binder, &x));

  OrdinalVector varvec({OTerm::var(x, 0), OTerm::var(x, 1)});
  CHECK_FALSE(vector_in_class(varvec, ClassKind::Closed));
  CHECK(vector_in_class(varvec, ClassKind::General));
  CHECK(vector_in_class(varvec, ClassKind::Binder, &x));

  // w at component 0 is the offending subterm.
  OrdinalVector bad({OTerm::omega(), OTerm::one()});
  auto viol = vector_class_violation(bad, ClassKind::General);
  REQUIRE(viol.has_value());
  CHECK(viol->level == 0);
}

TEST_CASE("bounded norm: exact, syntactic, and oracle routes") {
  TypedVar x = X();
  PsiEvaluator toy(PhiMode::toy());

  // Exact route on closed vectors.
  OrdinalVector ok({OTerm::psi_term(OTerm::one(), OTerm::from_nat(2)),
                    OTerm::omega()});
  CHECK(bounded_norm(ok, nullptr, &toy));
  OrdinalVector bad({OTerm::one(), OTerm::from_nat(5)});
  auto why = bounded_norm_violation(bad, nullptr, &toy);
  REQUIRE(why.has_value());
  CHECK(why->find("component 1") != std::string::npos);

  // Syntactic route on open vectors: no oracle, no evaluator.
  OrdinalVector covered(
      {OTerm::sum2(OTerm::var(x, 0), OTerm::one()), OTerm::var(x, 1)});
  CHECK(bounded_norm(covered));
  OrdinalVector uncovered({OTerm::one(), OTerm::var(x, 1)});
  CHECK_FALSE(bounded_norm(uncovered));

  // Oracle route: schema discharge is a paper-mode-only authority.
  DominanceOracle paper(PhiMode::paper());
  CHECK(bounded_norm(uncovered, &paper));
  CHECK_FALSE(paper.uses().empty());
  DominanceOracle toy_oracle(PhiMode::toy());
  CHECK_FALSE(bounded_norm(uncovered, &toy_oracle));

  // Syntactic route also works without any w/product pitfalls: the norm
  // weighting refuses to let w's value 2 justify a bound of 2.
  OrdinalVector omega_head({OTerm::omega(), OTerm::one()});
  CHECK(bounded_norm(omega_head));  // no(1)=1 <= no(w)=1
  OrdinalVector omega_head2({OTerm::omega(), OTerm::from_nat(2)});
  CHECK_FALSE(bounded_norm(omega_head2));  // no(2)=2 > no(w)=1
}
