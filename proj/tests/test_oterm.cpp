#include "ordcert/oterm.hpp"

#include <vector>

#include "doctest.h"
#include "ordcert/cnf.hpp"
#include "ordcert/psi.hpp"

using namespace ordcert;

namespace {

const FiniteType kGround = FiniteType::ground();

OTerm v(const TypedVar& base, int i) { return OTerm::var(base, i); }

}  // namespace

TEST_CASE("printing: leaves and runs of ones") {
  CHECK(OTerm::one().to_string() == "1");
  CHECK(OTerm::omega().to_string() == "w");
  CHECK(OTerm::from_nat(1).to_string() == "1");
  CHECK(OTerm::from_nat(3).to_string() == "3");
  CHECK(OTerm::from_nat(12).to_string() == "12");

  OTerm mixed = OTerm::sum(
      {OTerm::one(), OTerm::omega(), OTerm::one(), OTerm::one()});
  CHECK(mixed.to_string() == "1 + w + 2");

  // Nested grouping is invisible in print: the leaf run is flattened.
  OTerm grouped = OTerm::sum2(OTerm::from_nat(2), OTerm::one());
  CHECK(grouped.to_string() == "3");
}

TEST_CASE("printing: variables, powers, collapses") {
  TypedVar X{"X", FiniteType::arrow(kGround, kGround)};
  CHECK(v(X, 0).to_string() == "x[0]@X");
  CHECK(v(X, 1).to_string() == "x[1]@X");

  CHECK(OTerm::psi_term(OTerm::one(), OTerm::from_nat(2)).to_string() ==
        "p(1; 2)");
  CHECK(OTerm::psi_term(OTerm::one(), OTerm::from_nat(4)).to_string() ==
        "p(1; 4)");
  CHECK(OTerm::exp_prod(OTerm::one(), OTerm::from_nat(2)).to_string() ==
        "2^{1}.2");
  // A sum factor that prints with + needs parentheses; a coalesced run
  // does not.
  OTerm wp1 = OTerm::sum2(OTerm::omega(), OTerm::one());
  CHECK(OTerm::exp_prod(OTerm::from_nat(2), wp1).to_string() ==
        "2^{2}.(w + 1)");
  CHECK(OTerm::psi_term(wp1, v(X, 0)).to_string() == "p(w + 1; x[0]@X)");
}

TEST_CASE("variable component indices are type-bounded") {
  TypedVar n{"N", kGround};
  CHECK_NOTHROW(OTerm::var(n, 0));
  CHECK_THROWS_AS(OTerm::var(n, 1), TypeError);
  CHECK_THROWS_AS(OTerm::var(n, -1), TypeError);
  TypedVar f{"F", FiniteType::arrow(kGround, kGround)};
  CHECK_NOTHROW(OTerm::var(f, 1));
  CHECK_THROWS_AS(OTerm::var(f, 2), TypeError);
}

TEST_CASE("sum construction keeps operands atomic") {
  OTerm a = OTerm::omega();
  OTerm b = OTerm::one();
  OTerm inner = OTerm::sum2(a, b);
  OTerm outer = OTerm::sum({inner, b});
  REQUIRE(outer.kind() == OTerm::Kind::Sum);
  CHECK(outer.operands().size() == 2);
  CHECK(outer.operands()[0] == inner);

  // A one-element sum is the element.
  CHECK(OTerm::sum({a}).same_node(a));
  CHECK_THROWS_AS(OTerm::sum({}), TypeError);
  CHECK_THROWS_AS(OTerm::repeat(a, 0), TypeError);

  OTerm five = OTerm::repeat(b, 5);
  CHECK(five.operands().size() == 5);
  CHECK(five == OTerm::from_nat(5));
}

TEST_CASE("sz counts the binary-tree reading, grouping-invariant") {
  CHECK(OTerm::one().sz() == 1);
  CHECK(OTerm::omega().sz() == 1);
  CHECK(OTerm::from_nat(4).sz() == 7);  // k leaves, k-1 joins

  OTerm flat = OTerm::from_nat(3);
  OTerm grouped = OTerm::sum2(OTerm::from_nat(2), OTerm::one());
  CHECK(flat.sz() == 5);
  CHECK(grouped.sz() == 5);

  OTerm f = OTerm::from_nat(2);  // sz 3
  OTerm g = OTerm::omega();      // sz 1
  CHECK(OTerm::psi_term(f, g).sz() == 5);
  CHECK(OTerm::exp_prod(f, g).sz() == 8);
}

TEST_CASE("szx: x-free operands collapse to one symbol") {
  TypedVar X{"X", kGround};
  TypedVar Y{"Y", kGround};
  OTerm x0 = v(X, 0);
  OTerm y0 = v(Y, 0);

  CHECK(szx(x0, X) == 1);
  CHECK(szx(OTerm::sum2(x0, x0), X) == 3);
  CHECK(szx(y0, X) == 1);
  CHECK(szx(OTerm::omega(), X) == 1);

  // The whole term is x-free: one symbol, whatever its size.
  OTerm big_free = OTerm::exp_prod(OTerm::sum2(y0, y0), OTerm::from_nat(9));
  CHECK(szx(big_free, X) == 1);

  // An x-free group inside an x-containing sum counts one symbol; the
  // same leaves spliced in would count three.
  OTerm grouped = OTerm::sum({x0, OTerm::sum2(y0, y0)});
  CHECK(szx(grouped, X) == 3);
  OTerm spliced = OTerm::sum({x0, y0, y0});
  CHECK(szx(spliced, X) == 5);

  // Left-associated reading: an x-free prefix of a run is a collapsible
  // subtree, a non-prefix x-free stretch is not.
  CHECK(szx(OTerm::sum({y0, y0, x0}), X) == 3);
  CHECK(szx(OTerm::sum({y0, x0, y0}), X) == 5);

  OTerm ep = OTerm::exp_prod(x0, OTerm::sum2(x0, OTerm::one()));
  // 2*szx(x0) + szx(x0 + 1) + 1 = 2 + 3 + 1
  CHECK(szx(ep, X) == 6);
  OTerm ps = OTerm::psi_term(x0, y0);
  CHECK(szx(ps, X) == 3);
}

TEST_CASE("substitution replaces components atomically") {
  TypedVar X{"X", FiniteType::arrow(kGround, kGround)};
  TypedVar Y{"Y", kGround};
  OTerm x0 = v(X, 0);
  OTerm x1 = v(X, 1);
  OTerm y0 = v(Y, 0);

  OTerm h = OTerm::sum({x0, y0, x1});
  std::vector<OTerm> comps = {OTerm::sum2(OTerm::omega(), OTerm::one()),
                              OTerm::from_nat(2)};
  OTerm r = substitute_var(h, X, comps);
  REQUIRE(r.kind() == OTerm::Kind::Sum);
  REQUIRE(r.operands().size() == 3);
  CHECK(r.operands()[0] == comps[0]);  // kept as one operand, not spliced
  CHECK(r.operands()[1] == y0);
  CHECK(r.operands()[2] == comps[1]);
  CHECK(r.to_string() == "w + 1 + x[0]@Y + 2");

  // x-free terms are returned unchanged, sharing the node.
  OTerm free = OTerm::sum2(y0, OTerm::one());
  CHECK(substitute_var(free, X, comps).same_node(free));

  // Missing component index is an error.
  OTerm just_x1 = x1;
  std::vector<OTerm> short_vec = {OTerm::one()};
  CHECK_THROWS_AS(substitute_var(just_x1, X, short_vec), TypeError);

  // Substitution inside grouped sums preserves grouping and hence szx
  // for a later differential variable.
  OTerm grouped = OTerm::sum({y0, OTerm::sum2(x0, x0)});
  std::vector<OTerm> ones = {OTerm::one(), OTerm::one()};
  OTerm after = substitute_var(grouped, X, ones);
  CHECK(after.to_string() == "x[0]@Y + 2");
  CHECK(szx(after, Y) == 3);  // y + (1+1): the group stays one operand
}

TEST_CASE("close_all_vars and as_finite") {
  TypedVar X{"X", kGround};
  OTerm h = OTerm::sum({v(X, 0), OTerm::one(), v(X, 0)});
  OTerm c = close_all_vars(h);
  CHECK(c.closed());
  CHECK(c.to_string() == "3");
  CHECK(as_finite(c) == 3);
  CHECK(!as_finite(OTerm::omega()).has_value());
  CHECK(!as_finite(h).has_value());
  CHECK(as_finite(OTerm::one()) == 1);

  OTerm closed = OTerm::from_nat(2);
  CHECK(close_all_vars(closed).same_node(closed));
}

TEST_CASE("equality and syntactic order") {
  TypedVar X{"X", kGround};
  OTerm a = OTerm::sum({OTerm::one(), OTerm::omega()});
  OTerm b = OTerm::sum({OTerm::one(), OTerm::omega()});
  CHECK(a == b);
  CHECK(!a.same_node(b));
  CHECK(a.hash() == b.hash());

  OTerm c = OTerm::sum({OTerm::omega(), OTerm::one()});
  CHECK(a != c);  // order-sensitive
  CHECK(sort_sums(a) == sort_sums(c));

  // Grouping-sensitive equality.
  CHECK(OTerm::from_nat(3) != OTerm::sum2(OTerm::from_nat(2), OTerm::one()));

  CHECK(OTerm::compare_syntactic(OTerm::one(), OTerm::omega()) < 0);
  CHECK(OTerm::compare_syntactic(OTerm::omega(), v(X, 0)) < 0);
  CHECK(OTerm::compare_syntactic(a, a) == 0);
  CHECK(OTerm::compare_syntactic(v(X, 0), v(X, 0)) == 0);
}

TEST_CASE("closed evaluation: natural sum and product interpretation") {
  PsiEvaluator ev(PhiMode::toy());

  CHECK(eval_closed(OTerm::from_nat(5), ev) == CnfOrdinal::from_nat(5));
  CHECK(eval_closed(OTerm::omega(), ev) == CnfOrdinal::omega());

  // 2^{w + 1}.w = (w*2) natural-times w = w^2*2
  OTerm wp1 = OTerm::sum2(OTerm::omega(), OTerm::one());
  OTerm inner = OTerm::exp_prod(wp1, OTerm::omega());
  CnfOrdinal w2_2 = CnfOrdinal::single(CnfOrdinal::from_nat(2), 2);
  CHECK(eval_closed_psi_free(inner) == w2_2);

  // 2^{2^{w + 1}.w}.1 = 2^(w^2*2) = w^(w*2)
  OTerm outer = OTerm::exp_prod(inner, OTerm::one());
  CnfOrdinal ww2 = CnfOrdinal::omega_pow(
      CnfOrdinal::single(CnfOrdinal::from_nat(1), 2));
  CHECK(eval_closed_psi_free(outer) == ww2);

  // w * (2^{w + 1}.(w + 1)) under the natural product:
  // exp2(w+1) = w*2, (w*2) x (w+1) = w^2*2 + w*2, then w x that
  // = w^3*2 + w^2*2.
  OTerm f = OTerm::exp_prod(wp1, wp1);
  CnfOrdinal fval = eval_closed_psi_free(f);
  CnfOrdinal expect = nat_sum(CnfOrdinal::single(CnfOrdinal::from_nat(2), 2),
                              CnfOrdinal::single(CnfOrdinal::from_nat(1), 2));
  CHECK(fval == expect);
  CnfOrdinal wf = nat_prod(CnfOrdinal::omega(), fval);
  CHECK(wf == nat_sum(CnfOrdinal::single(CnfOrdinal::from_nat(3), 2),
                      CnfOrdinal::single(CnfOrdinal::from_nat(2), 2)));

  // p(f; g) evaluates psi(w*f + g): check against the evaluator directly.
  OTerm p = OTerm::psi_term(OTerm::one(), OTerm::from_nat(2));
  CnfOrdinal arg = nat_sum(CnfOrdinal::omega(), CnfOrdinal::from_nat(2));
  CHECK(eval_closed(p, ev) == CnfOrdinal::from_nat(ev.eval(arg)));
  CHECK_THROWS_AS(eval_closed_psi_free(p), TypeError);

  TypedVar X{"X", kGround};
  OTerm open = OTerm::sum2(v(X, 0), OTerm::one());
  CHECK_THROWS_AS(eval_closed(open, ev), TypeError);
  // Shared-node memoization: a wide repeated sum evaluates quickly.
  OTerm wide = OTerm::repeat(OTerm::psi_term(OTerm::one(), OTerm::one()),
                             50000);
  CHECK(eval_closed(wide, ev) ==
        CnfOrdinal::from_nat(50000 *
                             ev.eval(nat_sum(CnfOrdinal::omega(),
                                             CnfOrdinal::from_nat(1)))));
}
