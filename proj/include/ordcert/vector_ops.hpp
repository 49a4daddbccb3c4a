#pragma once

#include <cstdint>
#include <set>

#include "ordcert/classes.hpp"
#include "ordcert/oterm.hpp"
#include "ordcert/types.hpp"
#include "ordcert/vector.hpp"

namespace ordcert {

// box(f, g) for level(f) = m > n = level(g): the vector of level m with
//
//   component 0       p((f box g)_1 ; f_0 + g_0 + n)   (the n summand is
//                                                       dropped when n=0)
//   components 1..n   2^{(f box g)_{i+1}} . (f_i + g_i)
//   components n+1..m copied from f.
//
// Construction only; no simplification and no class or norm checking.
// Throws TypeError when the level precondition fails.
OrdinalVector box(const OrdinalVector& f, const OrdinalVector& g);

// Head factor of the differential operator: 2^{lv(x)+1} times the sum of
// the szx counts of the components. Throws BudgetError on overflow.
uint64_t Sx(const OrdinalVector& v, const TypedVar& x);

// Partial differential of h at level i with respect to the family of x:
// a vector of level lv(x)+1, built by the five clauses
//
//   x-free h          component j = 1, except h + 1 at j = i
//   h = x_i           all components 1
//   sums              left fold: d(q + p) = dq + dp + all-ones
//   2^f.g (i >= 1)    2 df + dg + all-ones, with f taken at level i+1
//   p(f; g) (i = 0)   component 0: p(f with the family closed to ones;
//                     (dg)_0); component j >= 1: (df)_j + (dg)_j
//
// where the sum fold first collapses the longest x-free prefix of the
// operand run into one atomic group, mirroring the szx count. The input
// must be a member of the binder class at level i (psi side conditions
// assumed); offending subterms are reported via ClassError.
OrdinalVector dop_partial(const TypedVar& x, int i, const OTerm& h);

// Full differential: level max(lv(x)+1, level(v)), with
//
//   component 0            Sx(v) copies of (dop_partial(x,0,v_0))_0
//   components 1..lv(x)+1  sums of the partials' components
//   components above       copied from v.
//
// The result never mentions the family of x. Same domain checking as
// dop_partial. Throws BudgetError when the head factor is too large to
// materialize as a flat sum.
OrdinalVector dop(const TypedVar& x, const OrdinalVector& v);

// Indexed families of subterm groups of h relative to the family of x,
// under the left-associated binary reading of operand runs:
//
//   t:   maximal x-free groups whose class level inside h is j
//   sub: t together with every x-containing group at level j
//
// built by the recursion: an x-free h contributes {h} exactly when i = j;
// a variable of the binder family contributes nothing; sums descend at
// the same level through prefix groups; 2^f.g and p(f; g) descend into f
// at level i+1 and g at level i, contributing {h} at i = j. Both sets
// are empty whenever i > j. Defined structurally on every term; callers
// pass class members.
struct SubxSets {
  std::set<OTerm> t;
  std::set<OTerm> sub;
};

SubxSets subx_sets(const OTerm& h, const TypedVar& x, int i, int j);

}  // namespace ordcert
