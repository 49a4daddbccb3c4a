#include "ordcert/term.hpp"

#include <algorithm>

namespace ordcert {

namespace {

FiniteType case_d_type(const FiniteType& tau) {
  // o -> tau -> tau -> tau
  return FiniteType::arrow(
      FiniteType::ground(),
      FiniteType::arrow(tau, FiniteType::arrow(tau, tau)));
}

FiniteType step_type(const FiniteType& tau) {
  // o -> tau -> tau
  return FiniteType::arrow(FiniteType::ground(), FiniteType::arrow(tau, tau));
}

FiniteType rec_type(const FiniteType& tau) {
  // o -> (o -> tau -> tau) -> tau -> tau
  return FiniteType::arrow(FiniteType::ground(),
                           FiniteType::arrow(step_type(tau),
                                             FiniteType::arrow(tau, tau)));
}

FiniteType rec_applied_type(const FiniteType& tau) {
  // (o -> tau -> tau) -> tau -> tau
  return FiniteType::arrow(step_type(tau), FiniteType::arrow(tau, tau));
}

}  // namespace

Term Term::make(Node&& n) {
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::var(const TypedVar& v) {
  return make({TermKind::Var, v.type, v, FiniteType(), nullptr, nullptr, 1,
               false});
}

Term Term::zero() {
  return make({TermKind::Zero, FiniteType::ground(), TypedVar{}, FiniteType(),
               nullptr, nullptr, 1, false});
}

Term Term::succ() {
  return make({TermKind::Succ,
               FiniteType::arrow(FiniteType::ground(), FiniteType::ground()),
               TypedVar{}, FiniteType(), nullptr, nullptr, 1, false});
}

Term Term::case_d(const FiniteType& tau) {
  return make({TermKind::CaseD, case_d_type(tau), TypedVar{}, tau, nullptr,
               nullptr, 1, false});
}

Term Term::rec(const FiniteType& tau) {
  return make({TermKind::Rec, rec_type(tau), TypedVar{}, tau, nullptr, nullptr,
               1, false});
}

Term Term::rec_applied(const FiniteType& tau, const Term& t) {
  if (!t.type().is_ground())
    throw TypeError("recursor argument must have ground type, got " +
                    t.type().to_string());
  return make({TermKind::RecApplied, rec_applied_type(tau), TypedVar{}, tau,
               t.node_, nullptr, 1 + t.lh(), true});
}

Term Term::app(const Term& fun, const Term& arg) {
  if (!fun.type().is_arrow())
    throw TypeError("cannot apply a term of ground type");
  if (fun.type().arg() != arg.type())
    throw TypeError("argument type mismatch: expected " +
                    fun.type().arg().to_string() + ", got " +
                    arg.type().to_string());
  return make({TermKind::App, fun.type().res(), TypedVar{}, FiniteType(),
               fun.node_, arg.node_, fun.lh() + arg.lh(),
               fun.node_->has_rec_applied || arg.node_->has_rec_applied});
}

Term Term::lam(const TypedVar& binder, const Term& body) {
  return make({TermKind::Lam, FiniteType::arrow(binder.type, body.type()),
               binder, FiniteType(), body.node_, nullptr, body.lh() + 1,
               body.node_->has_rec_applied});
}

bool Term::is_prime() const {
  switch (node_->kind) {
    case TermKind::Var:
    case TermKind::Zero:
    case TermKind::Succ:
    case TermKind::CaseD:
    case TermKind::Rec:
      return true;
    default:
      return false;
  }
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case TermKind::Var:
      return node_->var == o.node_->var;
    case TermKind::Zero:
    case TermKind::Succ:
      return true;
    case TermKind::CaseD:
    case TermKind::Rec:
      return node_->tau == o.node_->tau;
    case TermKind::RecApplied:
      return node_->tau == o.node_->tau && rec_arg() == o.rec_arg();
    case TermKind::App:
      return fun() == o.fun() && arg() == o.arg();
    case TermKind::Lam:
      return node_->var == o.node_->var && body() == o.body();
  }
  return false;
}

Term subterm_at(const Term& t, const Address& a) {
  Term cur = t;
  for (size_t i = 0; i < a.size(); ++i) {
    char c = a[i];
    Address prefix = a.substr(0, i + 1);
    if (c != '1' && c != '2')
      throw AddressError("address digits must be 1 or 2", prefix);
    switch (cur.kind()) {
      case TermKind::App:
        cur = (c == '1') ? cur.fun() : cur.arg();
        break;
      case TermKind::Lam:
        if (c == '2') throw AddressError("abstraction has no child 2", prefix);
        cur = cur.body();
        break;
      case TermKind::RecApplied:
        if (c == '1') {
          if (i + 1 != a.size())
            throw AddressError("recursor constant has no children", prefix);
          return Term::rec(cur.tau_of());
        }
        cur = cur.rec_arg();
        break;
      default:
        throw AddressError("prime term has no children", prefix);
    }
  }
  return cur;
}

Term replace_at(const Term& t, const Address& a, const Term& sub) {
  if (a.empty()) {
    if (sub.type() != t.type())
      throw TypeError("replacement changes type from " +
                      t.type().to_string() + " to " + sub.type().to_string());
    return sub;
  }
  char c = a[0];
  Address rest = a.substr(1);
  switch (t.kind()) {
    case TermKind::App:
      if (c == '1') return Term::app(replace_at(t.fun(), rest, sub), t.arg());
      return Term::app(t.fun(), replace_at(t.arg(), rest, sub));
    case TermKind::Lam:
      if (c == '2') throw AddressError("abstraction has no child 2", a);
      return Term::lam(t.var_of(), replace_at(t.body(), rest, sub));
    case TermKind::RecApplied:
      if (c == '1')
        throw AddressError("cannot replace inside a recursor constant", a);
      return Term::rec_applied(t.tau_of(), replace_at(t.rec_arg(), rest, sub));
    default:
      throw AddressError("prime term has no children", a);
  }
}

namespace {

void collect_free(const Term& t, std::set<TypedVar>& shadow,
                  std::set<TypedVar>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (!shadow.count(t.var_of())) out.insert(t.var_of());
      return;
    case TermKind::App:
      collect_free(t.fun(), shadow, out);
      collect_free(t.arg(), shadow, out);
      return;
    case TermKind::Lam: {
      bool inserted = shadow.insert(t.var_of()).second;
      collect_free(t.body(), shadow, out);
      if (inserted) shadow.erase(t.var_of());
      return;
    }
    case TermKind::RecApplied:
      collect_free(t.rec_arg(), shadow, out);
      return;
    default:
      return;
  }
}

void collect_bound(const Term& t, std::set<TypedVar>& out) {
  switch (t.kind()) {
    case TermKind::App:
      collect_bound(t.fun(), out);
      collect_bound(t.arg(), out);
      return;
    case TermKind::Lam:
      out.insert(t.var_of());
      collect_bound(t.body(), out);
      return;
    case TermKind::RecApplied:
      collect_bound(t.rec_arg(), out);
      return;
    default:
      return;
  }
}

}  // namespace

std::set<TypedVar> free_vars(const Term& t) {
  std::set<TypedVar> shadow, out;
  collect_free(t, shadow, out);
  return out;
}

std::set<TypedVar> bound_vars(const Term& t) {
  std::set<TypedVar> out;
  collect_bound(t, out);
  return out;
}

bool occurs_free(const Term& t, const TypedVar& x) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.var_of() == x;
    case TermKind::App:
      return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    case TermKind::Lam:
      return t.var_of() != x && occurs_free(t.body(), x);
    case TermKind::RecApplied:
      return occurs_free(t.rec_arg(), x);
    default:
      return false;
  }
}

namespace {

void collect_occurrences(const Term& t, const TypedVar& x, Address& cur,
                         std::vector<Address>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (t.var_of() == x) out.push_back(cur);
      return;
    case TermKind::App:
      cur.push_back('1');
      collect_occurrences(t.fun(), x, cur, out);
      cur.back() = '2';
      collect_occurrences(t.arg(), x, cur, out);
      cur.pop_back();
      return;
    case TermKind::Lam:
      if (t.var_of() == x) return;
      cur.push_back('1');
      collect_occurrences(t.body(), x, cur, out);
      cur.pop_back();
      return;
    case TermKind::RecApplied:
      cur.push_back('2');
      collect_occurrences(t.rec_arg(), x, cur, out);
      cur.pop_back();
      return;
    default:
      return;
  }
}

}  // namespace

std::vector<Address> free_occurrence_addresses(const Term& t,
                                               const TypedVar& x) {
  std::vector<Address> out;
  Address cur;
  collect_occurrences(t, x, cur, out);
  return out;
}

namespace {

// well-named <=> all binders pairwise distinct and disjoint from every
// free variable of the whole term
bool well_named_walk(const Term& t, std::set<TypedVar>& binders,
                     bool& duplicate) {
  switch (t.kind()) {
    case TermKind::App:
      return well_named_walk(t.fun(), binders, duplicate) &&
             well_named_walk(t.arg(), binders, duplicate);
    case TermKind::Lam:
      if (!binders.insert(t.var_of()).second) {
        duplicate = true;
        return false;
      }
      return well_named_walk(t.body(), binders, duplicate);
    case TermKind::RecApplied:
      return well_named_walk(t.rec_arg(), binders, duplicate);
    default:
      return true;
  }
}

}  // namespace

bool is_well_named(const Term& t) {
  std::set<TypedVar> binders;
  bool duplicate = false;
  if (!well_named_walk(t, binders, duplicate)) return false;
  for (const TypedVar& fv : free_vars(t))
    if (binders.count(fv)) return false;
  return true;
}

namespace {

Term substitute_walk(const Term& t, const TypedVar& x, const Term& s,
                     const std::set<TypedVar>& s_free, Address& cur) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.var_of() == x ? s : t;
    case TermKind::App: {
      cur.push_back('1');
      Term f = substitute_walk(t.fun(), x, s, s_free, cur);
      cur.back() = '2';
      Term a = substitute_walk(t.arg(), x, s, s_free, cur);
      cur.pop_back();
      return Term::app(f, a);
    }
    case TermKind::Lam: {
      if (t.var_of() == x) return t;
      if (!occurs_free(t.body(), x)) return t;
      if (s_free.count(t.var_of()))
        throw CaptureError("variable condition violated: binder " +
                               t.var_of().to_string() +
                               " occurs free in the substituted term",
                           cur);
      cur.push_back('1');
      Term b = substitute_walk(t.body(), x, s, s_free, cur);
      cur.pop_back();
      return Term::lam(t.var_of(), b);
    }
    case TermKind::RecApplied: {
      cur.push_back('2');
      Term r = substitute_walk(t.rec_arg(), x, s, s_free, cur);
      cur.pop_back();
      return Term::rec_applied(t.tau_of(), r);
    }
    default:
      return t;
  }
}

}  // namespace

Term substitute(const Term& t, const TypedVar& x, const Term& s) {
  if (x.type != s.type())
    throw TypeError("substitution type mismatch for " + x.to_string());
  std::set<TypedVar> s_free = free_vars(s);
  Address cur;
  return substitute_walk(t, x, s, s_free, cur);
}

namespace {

bool alpha_walk(const Term& a, const Term& b,
                std::map<TypedVar, TypedVar>& ab,
                std::map<TypedVar, TypedVar>& ba) {
  if (a.same_node(b) && ab.empty()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      auto it = ab.find(a.var_of());
      if (it != ab.end()) return it->second == b.var_of();
      // free occurrence: must be identical and not the image of a binder
      if (ba.count(b.var_of())) return false;
      return a.var_of() == b.var_of();
    }
    case TermKind::Zero:
    case TermKind::Succ:
      return true;
    case TermKind::CaseD:
    case TermKind::Rec:
      return a.tau_of() == b.tau_of();
    case TermKind::RecApplied:
      return a.tau_of() == b.tau_of() &&
             alpha_walk(a.rec_arg(), b.rec_arg(), ab, ba);
    case TermKind::App:
      return alpha_walk(a.fun(), b.fun(), ab, ba) &&
             alpha_walk(a.arg(), b.arg(), ab, ba);
    case TermKind::Lam: {
      if (a.var_of().type != b.var_of().type) return false;
      auto save_ab = ab.find(a.var_of()) != ab.end()
                         ? std::optional<TypedVar>(ab[a.var_of()])
                         : std::nullopt;
      auto save_ba = ba.find(b.var_of()) != ba.end()
                         ? std::optional<TypedVar>(ba[b.var_of()])
                         : std::nullopt;
      ab[a.var_of()] = b.var_of();
      ba[b.var_of()] = a.var_of();
      bool ok = alpha_walk(a.body(), b.body(), ab, ba);
      if (save_ab)
        ab[a.var_of()] = *save_ab;
      else
        ab.erase(a.var_of());
      if (save_ba)
        ba[b.var_of()] = *save_ba;
      else
        ba.erase(b.var_of());
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equiv(const Term& a, const Term& b) {
  if (a.type() != b.type()) return false;
  std::map<TypedVar, TypedVar> ab, ba;
  return alpha_walk(a, b, ab, ba);
}

namespace {

Term rename_walk(const Term& t, std::set<std::string>& used,
                 std::map<TypedVar, std::vector<TypedVar>>& env,
                 FreshNameSource& fresh) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = env.find(t.var_of());
      if (it != env.end() && !it->second.empty())
        return Term::var(it->second.back());
      return t;
    }
    case TermKind::App: {
      Term f = rename_walk(t.fun(), used, env, fresh);
      Term a = rename_walk(t.arg(), used, env, fresh);
      return Term::app(f, a);
    }
    case TermKind::RecApplied:
      return Term::rec_applied(t.tau_of(),
                               rename_walk(t.rec_arg(), used, env, fresh));
    case TermKind::Lam: {
      TypedVar binder = t.var_of();
      if (used.count(binder.name)) {
        std::string nn;
        do {
          nn = fresh.fresh(binder.name);
        } while (used.count(nn));
        binder = TypedVar{nn, binder.type};
      }
      used.insert(binder.name);
      env[t.var_of()].push_back(binder);
      Term b = rename_walk(t.body(), used, env, fresh);
      env[t.var_of()].pop_back();
      return Term::lam(binder, b);
    }
    default:
      return t;
  }
}

}  // namespace

Term make_well_named(const Term& t, FreshNameSource& fresh) {
  if (is_well_named(t)) return t;
  std::set<std::string> used;
  for (const TypedVar& v : free_vars(t)) used.insert(v.name);
  std::map<TypedVar, std::vector<TypedVar>> env;
  return rename_walk(t, used, env, fresh);
}

Term rename_binders_avoiding(const Term& t, const std::set<TypedVar>& avoid,
                             FreshNameSource& fresh) {
  std::set<std::string> used;
  for (const TypedVar& v : avoid) used.insert(v.name);
  for (const TypedVar& v : free_vars(t)) used.insert(v.name);
  std::map<TypedVar, std::vector<TypedVar>> env;
  return rename_walk(t, used, env, fresh);
}

namespace {

void naming_walk(const Term& t, std::map<std::string, FiniteType>& seen) {
  auto add = [&seen](const TypedVar& v) {
    auto [it, inserted] = seen.emplace(v.name, v.type);
    if (!inserted && it->second != v.type)
      throw TypeError("variable " + v.name + " used at two types: " +
                      it->second.to_string() + " and " + v.type.to_string());
  };
  switch (t.kind()) {
    case TermKind::Var:
      add(t.var_of());
      return;
    case TermKind::App:
      naming_walk(t.fun(), seen);
      naming_walk(t.arg(), seen);
      return;
    case TermKind::Lam:
      add(t.var_of());
      naming_walk(t.body(), seen);
      return;
    case TermKind::RecApplied:
      naming_walk(t.rec_arg(), seen);
      return;
    default:
      return;
  }
}

}  // namespace

void check_consistent_naming(const Term& t) {
  std::map<std::string, FiniteType> seen;
  naming_walk(t, seen);
}

int max_subterm_level(const Term& t) {
  int lv = t.type().level();
  switch (t.kind()) {
    case TermKind::App:
      lv = std::max(lv, max_subterm_level(t.fun()));
      lv = std::max(lv, max_subterm_level(t.arg()));
      break;
    case TermKind::Lam:
      lv = std::max(lv, max_subterm_level(t.body()));
      break;
    case TermKind::RecApplied:
      lv = std::max(lv, max_subterm_level(t.rec_arg()));
      break;
    default:
      break;
  }
  return lv;
}

int max_recursor_level(const Term& t) {
  switch (t.kind()) {
    case TermKind::Rec:
    case TermKind::RecApplied:
      return std::max(t.tau_of().level() + 2,
                      t.kind() == TermKind::RecApplied
                          ? max_recursor_level(t.rec_arg())
                          : 0);
    case TermKind::App:
      return std::max(max_recursor_level(t.fun()),
                      max_recursor_level(t.arg()));
    case TermKind::Lam:
      return max_recursor_level(t.body());
    default:
      return 0;
  }
}

Term numeral(uint64_t m) {
  Term t = Term::zero();
  Term s = Term::succ();
  for (uint64_t i = 0; i < m; ++i) t = Term::app(s, t);
  return t;
}

std::optional<uint64_t> as_numeral(const Term& t) {
  uint64_t m = 0;
  Term cur = t;
  while (cur.kind() == TermKind::App) {
    if (cur.fun().kind() != TermKind::Succ) return std::nullopt;
    ++m;
    cur = cur.arg();
  }
  if (cur.kind() != TermKind::Zero) return std::nullopt;
  return m;
}

}  // namespace ordcert
