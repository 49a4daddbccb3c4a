#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ordcert/oterm.hpp"
#include "ordcert/phi.hpp"
#include "ordcert/psi.hpp"
#include "ordcert/types.hpp"
#include "ordcert/vector.hpp"

namespace ordcert {

// Level-indexed term classes. All three share the clauses
//
//   1 at every level; w at levels >= 1; sums componentwise; 2^f.g at level
//   i >= 1 from f at i+1 and g at i; p(f; g) at level 0 from f at 1 and g
//   at 0 under the norm side condition no(f) <= F_2(g); and a level-raising
//   clause lifting level-0 members to every level >= 1.
//
// They differ in how variables and the level-raising clause are handled:
//
//   Closed:  no variables at all; level raising is unconditional.
//   General: x[i]@Y is a member at level i; level raising is unconditional.
//   Binder:  like General, but relative to a distinguished variable family
//            (the binder): level raising applies to terms free of that
//            family only.  Members at level i consequently never contain
//            an occurrence x[j]@binder with j < i.
enum class ClassKind : uint8_t { Closed, General, Binder };

std::string class_kind_name(ClassKind kind);

// Witness against membership: the offending subterm, the level at which it
// was required, and a human-readable reason.
struct ClassViolation {
  OTerm subterm;
  int level = 0;
  std::string reason;

  std::string to_string() const;
};

// Symbolic upper bound on the norm of a term's value, uniform in the
// substitution: the claim is
//
//   no(h{all families := closed bounded-norm vectors}) <= finite
//        + sum over families F of var_mults[F] * (value substituted for
//          the level-0 component of F)
//
// Soundness uses only that norms are additive over sums, that
// no(2^a) <= 2^{no(a)} and no(a.b) <= no(a)*no(b), and that a bounded-norm
// substitution keeps no(x[j]) <= x[0] for every index j of one family.
// Psi subterms have no such syntactic bound, hence the optional.
struct SymNormBound {
  uint64_t finite = 0;
  std::map<TypedVar, uint64_t> var_mults;
};

std::optional<SymNormBound> sym_norm_upper(const OTerm& h);

// Purely finite norm bound: sym_norm_upper with no variable demands.
std::optional<uint64_t> norm_upper_nat(const OTerm& h);

// Lower bound on the value of h under every admissible substitution
// (every closed value is >= 1, and p(f; g) >= 1 + g). Saturating.
uint64_t value_lower_nat(const OTerm& h);

// Lower bound on the norm of h's value under every admissible
// substitution. Coincides with value_lower_nat on level-0 shapes, but
// stays sound on w and base-2 products, whose values exceed their norms.
uint64_t norm_lower_nat(const OTerm& h);

// Leaf weighting for additive_spine_covers: compare the bound against a
// lower bound on g's value (for F_2-argument positions) or on g's norm
// (for bounded-norm claims).
enum class SpineWeight : uint8_t { Value, Norm };

// Does the additive spine of g absorb the bound? Each level-0 variable
// leaf of g absorbs one matching variable demand; every remaining leaf
// (including surplus variable leaves) is worth at least its lower bound
// under the chosen weighting toward the finite demand.
bool additive_spine_covers(const OTerm& g, const SymNormBound& bound,
                           SpineWeight weight);

// Raised by operators whose domain is one of the classes when handed a
// term outside it.
class ClassError : public TypeError {
 public:
  explicit ClassError(const ClassViolation& v)
      : TypeError("class violation at " + v.to_string()), violation_(v) {}

  const ClassViolation& violation() const { return violation_; }

 private:
  ClassViolation violation_;
};

// Whether the psi norm side condition participates in a membership
// check. Operators defined on the classes (the box/differential layer)
// validate their domains structurally and assume the side condition,
// which their callers establish separately; full checks verify it.
enum class PsiSide : uint8_t { Verify, Assume };

// Decide membership of h in the level-i class. `binder` names the
// distinguished family for ClassKind::Binder (required there, ignored
// otherwise). The psi norm side condition is discharged in this order:
// syntactic bound on no(f) absorbed by g's additive spine (machine fact;
// covers every bound without variable demands, since F_2(1) already
// exceeds every 64-bit value), exact evaluation when f and g are closed
// and `exact` is given, and finally the dominance oracle (logged). With
// no route available the side condition counts as a violation.
std::optional<ClassViolation> class_violation(const OTerm& h, int i,
                                              ClassKind kind,
                                              const TypedVar* binder = nullptr,
                                              DominanceOracle* oracle = nullptr,
                                              PsiEvaluator* exact = nullptr,
                                              PsiSide side = PsiSide::Verify);

bool class_membership(const OTerm& h, int i, ClassKind kind,
                      const TypedVar* binder = nullptr,
                      DominanceOracle* oracle = nullptr,
                      PsiEvaluator* exact = nullptr,
                      PsiSide side = PsiSide::Verify);

// A vector is in the class when component i is a member at level i.
std::optional<ClassViolation> vector_class_violation(
    const OrdinalVector& v, ClassKind kind, const TypedVar* binder = nullptr,
    DominanceOracle* oracle = nullptr, PsiEvaluator* exact = nullptr,
    PsiSide side = PsiSide::Verify);

bool vector_in_class(const OrdinalVector& v, ClassKind kind,
                     const TypedVar* binder = nullptr,
                     DominanceOracle* oracle = nullptr,
                     PsiEvaluator* exact = nullptr,
                     PsiSide side = PsiSide::Verify);

// Bounded norm: no(v_i) <= no(v_0) for every component. Closed vectors
// with an exact evaluator are decided exactly. Otherwise each component
// needs a syntactic norm bound absorbed by the additive spine of v_0
// (sound for substitutions by closed bounded-norm vectors, the domain of
// the comparison relation), or an oracle discharge citing the
// construction lemma that produced the vector. Returns a reason for the
// first failing component, or nothing when the bound holds.
std::optional<std::string> bounded_norm_violation(
    const OrdinalVector& v, DominanceOracle* oracle = nullptr,
    PsiEvaluator* exact = nullptr);

bool bounded_norm(const OrdinalVector& v, DominanceOracle* oracle = nullptr,
                  PsiEvaluator* exact = nullptr);

}  // namespace ordcert
