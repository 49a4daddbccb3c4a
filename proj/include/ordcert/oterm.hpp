#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ordcert/cnf.hpp"
#include "ordcert/psi.hpp"
#include "ordcert/types.hpp"

namespace ordcert {

// Symbolic ordinal terms: the expression language whose closed instances
// evaluate to CnfOrdinals. Grammar:
//
//   h ::= 1 | w | x[i]@X | h + ... + h | 2^{f}.g | p(f; g)
//
// where p(f; g) denotes the collapsed value psi(w*f + g) (the leading w*
// is part of the constructor, not a separate node), 2^{f}.g denotes the
// base-2 power 2^f multiplied by g, and x[i]@X is component i of the
// variable vector attached to the term variable X (0 <= i <= lv(type)+?,
// see var()). There is no literal zero: finite values are sums of 1s.
//
// Sums are n-ary nodes whose operands are kept ATOMIC: constructing a sum
// never splices a nested sum operand into the surrounding operand list,
// and substitution never splices a replacement into the sum it lands in.
// Grouping is semantically relevant: the x-measured size szx collapses any
// x-free operand to 1 whatever its internal shape, so the differential
// operators commute with substitution only if grouping survives both.
// Plain sz is grouping-invariant, so size accounting is unaffected.
//
// Nodes are immutable and shared; copying an OTerm is cheap.
class OTerm {
public:
  enum class Kind : uint8_t { One, Omega, Var, Sum, ExpProd, Psi };

  OTerm() = default;  // empty handle; most operations require non-empty

  static OTerm one();
  static OTerm omega();
  // Component i of the vector for variable base. Requires
  // 0 <= i <= type_level(base.type): a term variable of type s carries a
  // variable vector of level lv(s).
  static OTerm var(const TypedVar& base, int index);
  // n-ary sum of the given operands, each kept atomic. A single operand is
  // returned unchanged; an empty list is rejected (there is no zero).
  static OTerm sum(std::vector<OTerm> operands);
  static OTerm sum2(const OTerm& a, const OTerm& b);
  // k-fold sum h + ... + h (k >= 1 copies).
  static OTerm repeat(const OTerm& h, uint64_t k);
  // 2^{f}.g
  static OTerm exp_prod(const OTerm& f, const OTerm& g);
  // p(f; g), the collapse psi(w*f + g).
  static OTerm psi_term(const OTerm& f, const OTerm& g);
  // k as a sum of k ones (k >= 1).
  static OTerm from_nat(uint64_t k);

  bool empty() const { return !node_; }
  Kind kind() const;

  // Sum accessors.
  const std::vector<OTerm>& operands() const;  // pre: kind() == Sum
  // ExpProd / Psi accessors.
  const OTerm& left() const;   // f of 2^{f}.g or p(f; g)
  const OTerm& right() const;  // g of 2^{f}.g or p(f; g)
  // Var accessors.
  const TypedVar& var_base() const;
  int var_index() const;

  // Structural equality (grouping-sensitive), with hash and pointer
  // shortcuts.
  bool operator==(const OTerm& o) const;
  bool operator!=(const OTerm& o) const { return !(*this == o); }
  // Total syntactic order: kind rank, then contents lexicographically.
  // Returns -1/0/1.
  static int compare_syntactic(const OTerm& a, const OTerm& b);
  bool operator<(const OTerm& o) const {
    return compare_syntactic(*this, o) < 0;
  }

  bool same_node(const OTerm& o) const { return node_ == o.node_; }
  // Stable address of the shared node, usable as a memoization key for as
  // long as any handle to the node is alive. Null for empty handles.
  const void* identity() const { return node_.get(); }
  size_t hash() const;

  // Number of symbol occurrences counted on the binary-tree reading: leaves
  // count 1, a binary sum or a p(f; g) adds 1 to the operand total, and
  // 2^{f}.g counts 2 sz(f) + sz(g) + 1. An n-ary sum contributes
  // (operand count - 1) joins, which equals every binary regrouping.
  uint64_t sz() const;

  // Distinct variable bases occurring in the term.
  const std::set<TypedVar>& vars() const;
  bool closed() const { return vars().empty(); }
  // True when no component x[j]@base occurs, for any j.
  bool x_free(const TypedVar& base) const {
    return vars().count(base) == 0;
  }

  std::string to_string() const;

private:
  struct Node;
  explicit OTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static OTerm make_sum_raw(std::vector<OTerm> operands);

  const Node& n() const;
  std::shared_ptr<const Node> node_;

  friend OTerm substitute_var(const OTerm&, const TypedVar&,
                              std::span<const OTerm>);
  friend OTerm close_all_vars(const OTerm&);
  friend uint64_t szx(const OTerm&, const TypedVar&);
  friend OTerm sort_sums(const OTerm&);
};

// The x-measured size: x-free terms and the components x[i] themselves
// count 1; otherwise a sum counts per its left-associated binary reading
// (an x-free prefix of the operand run collapses to one symbol, every
// later operand adds its count plus a join), 2^{f}.g counts
// 2 szx(f) + szx(g) + 1, and p(f; g) counts szx(f) + szx(g) + 1.
uint64_t szx(const OTerm& h, const TypedVar& base);

// Replace every occurrence of x[i]@base by components[i], keeping each
// replacement atomic (no sum splicing). components must cover every index
// occurring in h; indices are bounds-checked.
OTerm substitute_var(const OTerm& h, const TypedVar& base,
                     std::span<const OTerm> components);

// Replace every variable component of every base by 1.
OTerm close_all_vars(const OTerm& h);

// Recursively sort sum operand lists by the syntactic order. Used by
// property tests to compare terms up to sum reordering; the operators
// themselves never reorder.
OTerm sort_sums(const OTerm& h);

// If h is a pure sum of ones (or the constant 1), its value.
std::optional<uint64_t> as_finite(const OTerm& h);

// Evaluate a closed term. + is the natural (Hessenberg) sum, the product
// in both 2^{f}.g and the implicit w*f of p(f; g) is the natural product,
// and p is the collapsing function computed by ev. Throws TypeError if h
// has variables; propagates BudgetError from ev.
CnfOrdinal eval_closed(const OTerm& h, PsiEvaluator& ev);

// Evaluate a closed term that contains no p(f; g) node, without a psi
// evaluator. Throws TypeError if h has variables or a Psi node.
CnfOrdinal eval_closed_psi_free(const OTerm& h);

}  // namespace ordcert

template <>
struct std::hash<ordcert::OTerm> {
  size_t operator()(const ordcert::OTerm& t) const { return t.hash(); }
};
