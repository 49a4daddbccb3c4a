#include "ordcert/reduction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ordcert/term_io.hpp"

namespace ordcert {

std::string rule_name(RuleKind r) {
  switch (r) {
    case RuleKind::D0: return "D0";
    case RuleKind::DS: return "DS";
    case RuleKind::R: return "R";
    case RuleKind::R0: return "R0";
    case RuleKind::RS: return "RS";
    case RuleKind::Beta: return "Beta";
    case RuleKind::AppRCtx: return "AppR_ctx";
    case RuleKind::AppLCtx: return "AppL_ctx";
    case RuleKind::AppRecCtx: return "AppRec_ctx";
    case RuleKind::XiCtx: return "Xi_ctx";
  }
  return "?";
}

void ReductionChain::push(const ReductionStep& s,
                          const Term& normalized_target) {
  steps.push_back(s);
  terms.push_back(normalized_target);
}

bool valid_chain(const ReductionChain& c) {
  if (c.terms.size() != c.steps.size() + 1) return false;
  for (size_t i = 0; i < c.steps.size(); ++i) {
    if (!(c.steps[i].source == c.terms[i])) return false;
    if (!alpha_equiv(c.steps[i].target, c.terms[i + 1])) return false;
  }
  return true;
}

namespace {

std::optional<Term> match_succ_arg(const Term& t) {
  if (t.kind() == TermKind::App && t.fun().kind() == TermKind::Succ)
    return t.arg();
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<RuleKind, Term>> contract_root(
    const Term& t, FreshNameSource& fresh) {
  if (t.kind() != TermKind::App) return std::nullopt;
  Term f = t.fun();
  Term a = t.arg();

  // (R)  R s |> R^s
  if (f.kind() == TermKind::Rec)
    return std::make_pair(RuleKind::R, Term::rec_applied(f.tau_of(), a));

  // (beta)
  if (f.kind() == TermKind::Lam) {
    std::set<TypedVar> afree = free_vars(a);
    std::set<TypedVar> fbound = bound_vars(f.body());
    fbound.insert(f.var_of());
    bool clash = false;
    for (const TypedVar& v : fbound)
      if (afree.count(v)) { clash = true; break; }
    Term abs = f;
    if (clash) abs = rename_binders_avoiding(f, afree, fresh);
    return std::make_pair(RuleKind::Beta,
                          substitute(abs.body(), abs.var_of(), a));
  }

  if (f.kind() == TermKind::App) {
    Term g = f.fun();
    // (R^0)  R^0 A B |> B      (R^S)  R^{S s} A B |> A s (R^s A B)
    if (g.kind() == TermKind::RecApplied) {
      Term n = g.rec_arg();
      Term A = f.arg();
      if (n.kind() == TermKind::Zero) return std::make_pair(RuleKind::R0, a);
      if (auto m = match_succ_arg(n)) {
        Term rm = Term::rec_applied(g.tau_of(), *m);
        Term tgt = Term::app(Term::app(A, *m),
                             Term::app(Term::app(rm, A), a));
        return std::make_pair(RuleKind::RS, tgt);
      }
      return std::nullopt;
    }
    // (D_0)  D 0 A B |> A      (D_S)  D (S s) A B |> B
    if (g.kind() == TermKind::App && g.fun().kind() == TermKind::CaseD) {
      Term n = g.arg();
      Term A = f.arg();
      if (n.kind() == TermKind::Zero) return std::make_pair(RuleKind::D0, A);
      if (match_succ_arg(n)) return std::make_pair(RuleKind::DS, a);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

void collect_redexes(const Term& root, const Term& t, Address& addr,
                     FreshNameSource& fresh, std::vector<ReductionStep>& out,
                     bool stop_at_first) {
  if (stop_at_first && !out.empty()) return;
  if (auto m = contract_root(t, fresh)) {
    out.push_back({root, addr, m->first, replace_at(root, addr, m->second)});
    if (stop_at_first) return;
  }
  switch (t.kind()) {
    case TermKind::App:
      addr.push_back('1');
      collect_redexes(root, t.fun(), addr, fresh, out, stop_at_first);
      addr.back() = '2';
      collect_redexes(root, t.arg(), addr, fresh, out, stop_at_first);
      addr.pop_back();
      return;
    case TermKind::Lam:
      addr.push_back('1');
      collect_redexes(root, t.body(), addr, fresh, out, stop_at_first);
      addr.pop_back();
      return;
    case TermKind::RecApplied:
      addr.push_back('2');
      collect_redexes(root, t.rec_arg(), addr, fresh, out, stop_at_first);
      addr.pop_back();
      return;
    default:
      return;
  }
}

}  // namespace

std::vector<ReductionStep> one_step_reducts(const Term& t,
                                            FreshNameSource& fresh) {
  std::vector<ReductionStep> out;
  Address addr;
  collect_redexes(t, t, addr, fresh, out, false);
  return out;
}

std::optional<ReductionStep> first_step(const Term& t,
                                        FreshNameSource& fresh) {
  std::vector<ReductionStep> out;
  Address addr;
  collect_redexes(t, t, addr, fresh, out, true);
  if (out.empty()) return std::nullopt;
  return out.front();
}

namespace {

bool has_redex(const Term& t) {
  // redex detection never needs fresh names
  FreshNameSource scratch(1u << 20);
  return first_step(t, scratch).has_value();
}

}  // namespace

bool is_normal_form(const Term& t) { return !has_redex(t); }

std::optional<ReductionStep> pick_step(const Term& t, Strategy s,
                                       std::mt19937_64& rng,
                                       FreshNameSource& fresh) {
  if (s == Strategy::LeftmostOutermost) return first_step(t, fresh);
  std::vector<ReductionStep> all = one_step_reducts(t, fresh);
  if (all.empty()) return std::nullopt;
  if (s == Strategy::RightmostInnermost) return all.back();
  std::uniform_int_distribution<size_t> d(0, all.size() - 1);
  return all[d(rng)];
}

ReductionChain reduce_sequence(const Term& t, Strategy s, uint64_t seed,
                               uint64_t max_steps, FreshNameSource& fresh) {
  ReductionChain c = ReductionChain::singleton(t);
  std::mt19937_64 rng(seed);
  for (uint64_t i = 0; i < max_steps; ++i) {
    auto step = pick_step(c.last(), s, rng, fresh);
    if (!step) break;
    c.push(*step, step->target);
  }
  return c;
}

Term collapse_rec(const Term& t) {
  switch (t.kind()) {
    case TermKind::RecApplied:
      return Term::app(Term::rec(t.tau_of()), collapse_rec(t.rec_arg()));
    case TermKind::App:
      return Term::app(collapse_rec(t.fun()), collapse_rec(t.arg()));
    case TermKind::Lam:
      return Term::lam(t.var_of(), collapse_rec(t.body()));
    default:
      return t;
  }
}

ReductionChain project_chain(const ReductionChain& c) {
  ReductionChain out;
  if (c.terms.empty()) return out;
  out.terms.push_back(collapse_rec(c.terms.front()));
  for (size_t i = 0; i < c.steps.size(); ++i) {
    const ReductionStep& s = c.steps[i];
    Term src = collapse_rec(s.source);
    Term tgt = collapse_rec(s.target);
    if (s.rule == RuleKind::R) {
      if (!(src == tgt))
        throw std::logic_error("projection: R-step does not collapse away");
      continue;
    }
    out.steps.push_back({out.terms.back(), s.redex, s.rule, tgt});
    out.terms.push_back(collapse_rec(c.terms[i + 1]));
  }
  return out;
}

ReductionChain embed_chain(const ReductionChain& c, FreshNameSource& fresh) {
  ReductionChain out;
  if (c.terms.empty()) return out;
  Term p = c.terms.front();
  if (!p.in_T())
    throw std::invalid_argument("embedding expects a sequence over T");
  out.terms.push_back(p);
  for (const ReductionStep& s : c.steps) {
    if (s.rule == RuleKind::R0 || s.rule == RuleKind::RS) {
      // the applied recursor sits at redex address + "11"
      Address rec_addr = s.redex + "11";
      Term sub = subterm_at(p, rec_addr);
      if (sub.kind() == TermKind::App &&
          sub.fun().kind() == TermKind::Rec) {
        Term primed = replace_at(
            p, rec_addr, Term::rec_applied(sub.fun().tau_of(), sub.arg()));
        out.push({p, rec_addr, RuleKind::R, primed}, primed);
        p = primed;
      }
    }
    auto m = contract_root(subterm_at(p, s.redex), fresh);
    if (!m || m->first != s.rule)
      throw std::logic_error("embedding: rule does not replay at " +
                             (s.redex.empty() ? std::string("<root>")
                                              : s.redex));
    Term next = replace_at(p, s.redex, m->second);
    out.push({p, s.redex, s.rule, next}, next);
    p = next;
  }
  return out;
}

namespace {

void canon_walk(const Term& t, std::map<TypedVar, std::string>& env,
                uint64_t& counter, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = env.find(t.var_of());
      if (it != env.end())
        out += it->second;
      else
        out += t.var_of().name + ":" + t.var_of().type.to_string();
      return;
    }
    case TermKind::Zero: out += "0"; return;
    case TermKind::Succ: out += "S"; return;
    case TermKind::CaseD: out += "D[" + t.tau_of().to_string() + "]"; return;
    case TermKind::Rec: out += "R[" + t.tau_of().to_string() + "]"; return;
    case TermKind::RecApplied:
      out += "R^{";
      canon_walk(t.rec_arg(), env, counter, out);
      out += "}[" + t.tau_of().to_string() + "]";
      return;
    case TermKind::App:
      out += "(";
      canon_walk(t.fun(), env, counter, out);
      out += " ";
      canon_walk(t.arg(), env, counter, out);
      out += ")";
      return;
    case TermKind::Lam: {
      std::string name = "b" + std::to_string(counter++);
      out += "\\" + name + ":" + t.var_of().type.to_string() + ".";
      auto it = env.find(t.var_of());
      std::optional<std::string> saved;
      if (it != env.end()) saved = it->second;
      env[t.var_of()] = name;
      canon_walk(t.body(), env, counter, out);
      if (saved)
        env[t.var_of()] = *saved;
      else
        env.erase(t.var_of());
      return;
    }
  }
}

}  // namespace

std::string alpha_canonical_key(const Term& t) {
  std::map<TypedVar, std::string> env;
  uint64_t counter = 0;
  std::string out;
  canon_walk(t, env, counter, out);
  return out;
}

TreeSummary explore_reduction_tree(const Term& t, const TreeCaps& caps,
                                   FreshNameSource& fresh) {
  TreeSummary sum;
  std::set<std::string> normal_forms;
  std::deque<std::pair<Term, uint64_t>> queue;
  queue.emplace_back(t, 0);
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    ++sum.node_count;
    sum.height = std::max(sum.height, depth);
    if (sum.node_count >= caps.max_nodes) {
      sum.truncated = true;
      break;
    }
    if (depth >= caps.max_depth) {
      sum.truncated = true;
      continue;
    }
    std::vector<ReductionStep> steps = one_step_reducts(cur, fresh);
    if (steps.empty()) {
      normal_forms.insert(alpha_canonical_key(cur));
      continue;
    }
    for (const ReductionStep& s : steps) queue.emplace_back(s.target, depth + 1);
  }
  sum.normal_form_count = normal_forms.size();
  return sum;
}

uint64_t numeral_value(const Term& t, uint64_t max_steps,
                       FreshNameSource& fresh) {
  if (!t.type().is_ground())
    throw TypeError("value is defined for ground-type terms only");
  if (!free_vars(t).empty())
    throw TypeError("value is defined for closed terms only");
  Term cur = t;
  for (uint64_t i = 0; i <= max_steps; ++i) {
    auto step = first_step(cur, fresh);
    if (!step) {
      auto m = as_numeral(cur);
      if (!m)
        throw std::logic_error("normal form is not a numeral: " +
                               print_term(cur));
      return *m;
    }
    cur = step->target;
  }
  throw BudgetError("normalization exceeded " + std::to_string(max_steps) +
                    " steps");
}

}  // namespace ordcert
