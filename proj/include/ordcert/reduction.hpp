#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ordcert/term.hpp"

namespace ordcert {

// Redex rules (first six) and the derived context closures. Steps always
// record the rule applied at the redex itself; the context closure is
// implied by the redex address.
enum class RuleKind { D0, DS, R, R0, RS, Beta, AppRCtx, AppLCtx, AppRecCtx, XiCtx };

std::string rule_name(RuleKind r);

struct ReductionStep {
  Term source;
  Address redex;
  RuleKind rule;  // one of D0..Beta
  Term target;
};

// A reduction sequence; terms.size() == steps.size() + 1. steps[i].source
// == terms[i] and steps[i].target is alpha-equivalent to terms[i+1]
// (equal for raw sequences).
struct ReductionChain {
  std::vector<Term> terms;
  std::vector<ReductionStep> steps;

  static ReductionChain singleton(const Term& t) { return {{t}, {}}; }
  void push(const ReductionStep& s, const Term& normalized_target);
  const Term& last() const { return terms.back(); }
};

bool valid_chain(const ReductionChain& c);

// If the root of t is a redex, returns the rule and the contractum.
// Beta redexes violating the variable condition are renamed first.
std::optional<std::pair<RuleKind, Term>> contract_root(const Term& t,
                                                       FreshNameSource& fresh);

// All one-step reducts, redex addresses in lexicographic order (1 < 2).
std::vector<ReductionStep> one_step_reducts(const Term& t,
                                            FreshNameSource& fresh);

// First redex in address order, if any (leftmost-outermost).
std::optional<ReductionStep> first_step(const Term& t, FreshNameSource& fresh);
bool is_normal_form(const Term& t);

enum class Strategy { LeftmostOutermost, RightmostInnermost, Random };

std::optional<ReductionStep> pick_step(const Term& t, Strategy s,
                                       std::mt19937_64& rng,
                                       FreshNameSource& fresh);

// Reduce with the given strategy for at most max_steps steps; stops early
// at a normal form. The chain is raw (targets taken verbatim).
ReductionChain reduce_sequence(const Term& t, Strategy s, uint64_t seed,
                               uint64_t max_steps, FreshNameSource& fresh);

// Erase every RecApplied in favor of the plain applied recursor.
Term collapse_rec(const Term& t);

// Project a primed-calculus sequence onto the unprimed one: R-steps are
// erased, every term is collapsed, addresses and rules are preserved.
ReductionChain project_chain(const ReductionChain& c);

// Embed an unprimed sequence by inserting R-steps in front of recursor
// contractions (at most doubles the length). project_chain(embed_chain(c))
// returns c verbatim; requires beta steps that need no renaming.
ReductionChain embed_chain(const ReductionChain& c, FreshNameSource& fresh);

struct TreeCaps {
  uint64_t max_nodes = 100000;
  uint64_t max_depth = 10000;
};

struct TreeSummary {
  uint64_t height = 0;
  uint64_t node_count = 0;
  uint64_t normal_form_count = 0;
  bool truncated = false;
};

// Exhaustive reduction tree (children = all one-step reducts); counts
// tree nodes, not alpha-classes. Normal forms are counted modulo alpha.
TreeSummary explore_reduction_tree(const Term& t, const TreeCaps& caps,
                                   FreshNameSource& fresh);

// Alpha-invariant canonical key (binders renumbered in traversal order).
std::string alpha_canonical_key(const Term& t);

// Leftmost-outermost normalization of a closed ground term to a numeral.
uint64_t numeral_value(const Term& t, uint64_t max_steps,
                       FreshNameSource& fresh);

}  // namespace ordcert
