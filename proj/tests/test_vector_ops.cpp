#include "ordcert/vector_ops.hpp"

#include <vector>

#include "doctest.h"
#include "ordcert/classes.hpp"
#include "ordcert/oterm.hpp"
#include "ordcert/types.hpp"
#include "ordcert/vector.hpp"

using namespace ordcert;

namespace {

const FiniteType kGround = FiniteType::ground();
const FiniteType kArrow = FiniteType::arrow(kGround, kGround);

TypedVar ground_var() { return TypedVar{"X", kGround}; }
TypedVar arrow_var() { return TypedVar{"X", kArrow}; }
TypedVar other_var() { return TypedVar{"Y", kGround}; }

}  // namespace

TEST_CASE("box level-0 tail") {
  OrdinalVector f({OTerm::one(), OTerm::one()});
  OrdinalVector g({OTerm::one()});
  CHECK(box(f, g).to_string() == "<p(1; 2), 1>");

  OrdinalVector rec({OTerm::from_nat(2), OTerm::one(), OTerm::omega()});
  CHECK(box(rec, g).to_string() == "<p(1; 3), 1, w>");

  CHECK_THROWS_AS(box(g, f), TypeError);
  CHECK_THROWS_AS(box(f, f), TypeError);
}

TEST_CASE("box with a level-1 right argument") {
  OrdinalVector f({OTerm::one(), OTerm::one(), OTerm::one()});
  OrdinalVector g({OTerm::one(), OTerm::one()});
  OrdinalVector r = box(f, g);
  // component 2 copied; component 1 = 2^{1}.(1+1); component 0 collapses
  // with the level summand n=1 appended.
  CHECK(r.to_string() == "<p(2^{1}.2; 3), 2^{1}.2, 1>");
  // The collapse tail keeps its operands atomic: f0, g0, then n ones.
  CHECK(r[0].right().operands().size() == 3);
}

TEST_CASE("head factor Sx") {
  TypedVar xg = ground_var();
  OrdinalVector v({OTerm::var(xg, 0)});
  CHECK(Sx(v, xg) == 2);  // 2^1 * szx(x0)

  TypedVar xa = arrow_var();
  OrdinalVector w({OTerm::sum2(OTerm::var(xa, 0), OTerm::one()),
                   OTerm::var(xa, 1)});
  // n = 2, szx(x0 + 1) = 3, szx(x1) = 1.
  CHECK(Sx(w, xa) == 16);

  // x-free components all collapse to one unit each.
  OrdinalVector c({OTerm::from_nat(7), OTerm::omega()});
  CHECK(Sx(c, xg) == 4);
}

TEST_CASE("partial differential: x-free and variable clauses") {
  TypedVar x = ground_var();
  CHECK(dop_partial(x, 0, OTerm::var(x, 0)).to_string() == "<1, 1>");
  CHECK(dop_partial(x, 0, OTerm::one()).to_string() == "<2, 1>");
  CHECK(dop_partial(x, 1, OTerm::omega()).to_string() == "<1, w + 1>");
  // Levels beyond the family vector leave every component at 1.
  TypedVar y = other_var();
  CHECK(dop_partial(x, 2, OTerm::sum2(OTerm::var(y, 0), OTerm::omega()))
            .to_string() == "<1, 1>");
}

TEST_CASE("partial differential: sum fold with prefix collapse") {
  TypedVar x = ground_var();
  OTerm h = OTerm::sum2(OTerm::one(), OTerm::var(x, 0));
  OrdinalVector d = dop_partial(x, 0, h);
  CHECK(d.to_string() == "<4, 3>");

  // Three operands with an x-free prefix of length two: the prefix is
  // one atomic group, so the fold runs once.
  TypedVar y = other_var();
  OTerm h3 = OTerm::sum({OTerm::var(y, 0), OTerm::one(), OTerm::var(x, 0)});
  OrdinalVector d3 = dop_partial(x, 0, h3);
  // d(prefix) = <prefix+1, 1>; fold once with <1,1> and ones. The display
  // flattens the one-leaves, the structure keeps the group atomic.
  CHECK(d3.to_string() == "<x[0]@Y + 4, 3>");
  CHECK(d3[0].operands().size() == 3);

  // No x-free prefix: the fold starts from the first operand.
  OTerm h4 = OTerm::sum({OTerm::var(x, 0), OTerm::one()});
  CHECK(dop_partial(x, 0, h4).to_string() == "<4, 3>");
}

TEST_CASE("partial differential: product and collapse clauses") {
  TypedVar x = arrow_var();  // n = 2
  OTerm h = OTerm::exp_prod(OTerm::omega(), OTerm::var(x, 1));
  OrdinalVector d = dop_partial(x, 1, h);
  // df = <1, 1, w+1> doubled, dg = <1,1,1>, plus ones.
  CHECK(d.to_string() == "<4, 4, w + 1 + w + 3>");

  TypedVar xg = ground_var();
  OTerm hp = OTerm::psi_term(OTerm::omega(), OTerm::var(xg, 0));
  OrdinalVector dp = dop_partial(xg, 0, hp);
  CHECK(dp.to_string() == "<p(w; 1), w + 2>");

  // The first argument is closed to ones before re-wrapping. It lives at
  // level 1, so only index-1 components of the family may occur in it.
  OTerm hx = OTerm::psi_term(OTerm::sum2(OTerm::var(x, 1), OTerm::omega()),
                             OTerm::var(x, 0));
  OrdinalVector dx = dop_partial(x, 0, hx);
  CHECK(dx[0].left().to_string() == "1 + w");
}

TEST_CASE("partial differential: domain validation") {
  TypedVar x = ground_var();
  CHECK_THROWS_AS(
      dop_partial(x, 0, OTerm::exp_prod(OTerm::omega(), OTerm::omega())),
      ClassError);
  CHECK_THROWS_AS(dop_partial(x, 1, OTerm::var(x, 0)), ClassError);
  try {
    dop_partial(x, 0, OTerm::sum2(OTerm::one(), OTerm::omega()));
    CHECK(false);
  } catch (const ClassError& e) {
    CHECK(e.violation().subterm == OTerm::omega());
  }
}

TEST_CASE("full differential") {
  TypedVar x = ground_var();
  OrdinalVector v({OTerm::var(x, 0)});
  OrdinalVector d = dop(x, v);
  CHECK(d.to_string() == "<2, 1>");
  CHECK(d.x_free(x));

  // Abstraction vector for the identity at ground type: d + ones.
  CHECK(vec_add(d, OrdinalVector({OTerm::one()})).to_string() == "<3, 1>");

  // A level-2 input against a ground family: components above n copied.
  OrdinalVector tall({OTerm::var(x, 0), OTerm::one(), OTerm::omega()});
  OrdinalVector dt = dop(x, tall);
  CHECK(dt.level() == 2);
  CHECK(dt[2] == OTerm::omega());
  CHECK(dt.x_free(x));
  // Component 0: Sx = 2*(1+1+1) = 6 copies of (d0 x0)0 = 1.
  CHECK(dt[0].to_string() == "6");
  // Component 1 sums the three partials' component 1.
  CHECK(dt[1].operands().size() == 3);
}

TEST_CASE("indexed subterm groups") {
  TypedVar x = ground_var();
  TypedVar y = other_var();
  OTerm x0 = OTerm::var(x, 0);
  OTerm y0 = OTerm::var(y, 0);

  // The binder family itself contributes nothing at any pair.
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) {
      auto s = subx_sets(x0, x, i, j);
      CHECK(s.t.empty());
      CHECK(s.sub.empty());
    }

  // x-free terms are atomic: present exactly on the diagonal.
  OTerm free_term = OTerm::sum2(y0, OTerm::omega());
  auto diag = subx_sets(free_term, x, 1, 1);
  CHECK(diag.t == std::set<OTerm>{free_term});
  CHECK(diag.sub == std::set<OTerm>{free_term});
  CHECK(subx_sets(free_term, x, 0, 1).t.empty());
  CHECK(subx_sets(free_term, x, 1, 0).sub.empty());  // i > j

  // Prefix groups under the left-associated reading.
  OTerm run = OTerm::sum({y0, y0, x0});
  auto s = subx_sets(run, x, 0, 0);
  OTerm prefix = OTerm::sum({y0, y0});
  CHECK(s.t == std::set<OTerm>{prefix});
  CHECK(s.sub == std::set<OTerm>({prefix, run}));

  // A leading binder occurrence leaves later operands as their own
  // maximal groups.
  OTerm run2 = OTerm::sum({x0, y0});
  auto s2 = subx_sets(run2, x, 0, 0);
  CHECK(s2.t == std::set<OTerm>{y0});
  CHECK(s2.sub == std::set<OTerm>({y0, run2}));

  // Exponent positions descend one level up.
  TypedVar xa = arrow_var();
  OTerm hp = OTerm::psi_term(OTerm::var(xa, 1), OTerm::one());
  auto s00 = subx_sets(hp, xa, 0, 0);
  CHECK(s00.t == std::set<OTerm>{OTerm::one()});
  CHECK(s00.sub == std::set<OTerm>({OTerm::one(), hp}));
  CHECK(subx_sets(hp, xa, 0, 1).t.empty());

  OTerm he = OTerm::exp_prod(OTerm::var(xa, 1), OTerm::omega());
  auto s11 = subx_sets(he, xa, 1, 1);
  CHECK(s11.t == std::set<OTerm>{OTerm::omega()});
  CHECK(s11.sub == std::set<OTerm>({OTerm::omega(), he}));
}

TEST_CASE("size bound for partial differentials") {
  TypedVar x = arrow_var();
  std::vector<OTerm> samples{
      OTerm::var(x, 0),
      OTerm::sum2(OTerm::one(), OTerm::var(x, 0)),
      OTerm::sum({OTerm::var(x, 0), OTerm::var(x, 0), OTerm::one()}),
      OTerm::psi_term(OTerm::omega(), OTerm::var(x, 0)),
      OTerm::psi_term(OTerm::sum2(OTerm::var(x, 1), OTerm::omega()),
                      OTerm::sum2(OTerm::var(x, 0), OTerm::one())),
  };
  for (const OTerm& h : samples) {
    OrdinalVector d = dop_partial(x, 0, h);
    for (int j = 0; j <= d.level(); ++j) {
      CHECK(d[j].sz() <= 4 * h.sz());
    }
    CHECK(d.x_free(x));
  }
}
