#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ordcert/types.hpp"

namespace ordcert {

enum class TermKind { Var, Zero, Succ, CaseD, Rec, RecApplied, App, Lam };

// Parse-tree address: a string over {'1','2'}.
//   Lam:         "1" -> body
//   App:         "1" -> function, "2" -> argument
//   RecApplied:  addressed like the application (R t): "1" -> R, "2" -> t
using Address = std::string;

class Term {
public:
  Term() = default;

  static Term var(const TypedVar& v);
  static Term zero();
  static Term succ();
  static Term case_d(const FiniteType& tau);
  static Term rec(const FiniteType& tau);
  static Term rec_applied(const FiniteType& tau, const Term& t);
  static Term app(const Term& fun, const Term& arg);
  static Term lam(const TypedVar& binder, const Term& body);

  bool empty() const { return node_ == nullptr; }
  TermKind kind() const { return node_->kind; }
  const FiniteType& type() const { return node_->type; }
  const TypedVar& var_of() const { return node_->var; }
  const FiniteType& tau_of() const { return node_->tau; }
  Term fun() const { return Term(node_->a); }   // App
  Term arg() const { return Term(node_->b); }   // App
  Term body() const { return Term(node_->a); }  // Lam
  Term rec_arg() const { return Term(node_->a); }  // RecApplied

  bool is_prime() const;       // Var/Zero/Succ/CaseD/Rec
  bool is_abstraction() const { return node_->kind == TermKind::Lam; }
  uint64_t lh() const { return node_->lh; }
  bool in_T() const { return !node_->has_rec_applied; }

  // pointer identity (fast path for sharing-aware walks)
  bool same_node(const Term& o) const { return node_ == o.node_; }
  bool operator==(const Term& o) const;  // structural, names included
  bool operator!=(const Term& o) const { return !(*this == o); }

private:
  struct Node {
    TermKind kind;
    FiniteType type;
    TypedVar var;    // Var payload, Lam binder
    FiniteType tau;  // CaseD / Rec / RecApplied type parameter
    std::shared_ptr<const Node> a, b;
    uint64_t lh;
    bool has_rec_applied;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node&& n);
  std::shared_ptr<const Node> node_;
};

class AddressError : public std::runtime_error {
public:
  AddressError(const std::string& msg, const Address& failed_prefix)
      : std::runtime_error(msg + " (failed at address prefix \"" +
                           failed_prefix + "\")"),
        prefix(failed_prefix) {}
  Address prefix;
};

class CaptureError : public std::runtime_error {
public:
  CaptureError(const std::string& msg, const Address& binder_address)
      : std::runtime_error(msg), binder(binder_address) {}
  Address binder;
};

Term subterm_at(const Term& t, const Address& a);
// Replace the subterm at `a`; type of the replacement must match.
Term replace_at(const Term& t, const Address& a, const Term& sub);

std::set<TypedVar> free_vars(const Term& t);
std::set<TypedVar> bound_vars(const Term& t);
bool occurs_free(const Term& t, const TypedVar& x);

// Addresses of the free occurrences of x in t, in lexicographic order.
std::vector<Address> free_occurrence_addresses(const Term& t,
                                               const TypedVar& x);

// Every binder is bound at most once in every subterm and no variable
// occurs both free and bound in any subterm.
bool is_well_named(const Term& t);

// t{x := s}; throws CaptureError if some binder of t lies in s's free
// variables (the blunt variable condition BV(t) cap FV(s) = empty,
// restricted to binders above a free occurrence of x).
Term substitute(const Term& t, const TypedVar& x, const Term& s);

bool alpha_equiv(const Term& a, const Term& b);

// Renames only violating binders, using fresh names; identity on terms
// that are already well named.
Term make_well_named(const Term& t, FreshNameSource& fresh);

// Rename bound variables so that no binder of `t` lies in `avoid`
// (and binders stay pairwise distinct). Free variables are untouched.
Term rename_binders_avoiding(const Term& t, const std::set<TypedVar>& avoid,
                             FreshNameSource& fresh);

// One name at two types anywhere in the term is a Church-style violation.
void check_consistent_naming(const Term& t);

// Maximum type level over all subterms (including the term itself).
int max_subterm_level(const Term& t);
// Maximum type level of recursor constants occurring (0 if none).
int max_recursor_level(const Term& t);

// Numeral helpers: numeral(m) builds S^m 0.
Term numeral(uint64_t m);
// If t is S^m 0 returns m.
std::optional<uint64_t> as_numeral(const Term& t);

}  // namespace ordcert
