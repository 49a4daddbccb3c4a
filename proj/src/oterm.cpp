#include "ordcert/oterm.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace ordcert {

namespace {

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw BudgetError("ordinal term size exceeds 64-bit accounting");
  }
  return r;
}

uint64_t checked_mul(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw BudgetError("ordinal term size exceeds 64-bit accounting");
  }
  return r;
}

size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

struct OTerm::Node {
  Kind kind;
  TypedVar var;  // Var only
  int index = 0;  // Var only
  std::vector<OTerm> operands;  // Sum only, size >= 2
  OTerm lhs, rhs;  // ExpProd / Psi
  uint64_t sz = 0;
  size_t hash = 0;
  std::set<TypedVar> vars;
};

const OTerm::Node& OTerm::n() const {
  if (!node_) throw TypeError("operation on empty ordinal term");
  return *node_;
}

OTerm OTerm::one() {
  static const std::shared_ptr<const Node> n = [] {
    auto m = std::make_shared<Node>();
    m->kind = Kind::One;
    m->sz = 1;
    m->hash = hash_combine(0x51, static_cast<size_t>(Kind::One));
    return m;
  }();
  return OTerm(n);
}

OTerm OTerm::omega() {
  static const std::shared_ptr<const Node> n = [] {
    auto m = std::make_shared<Node>();
    m->kind = Kind::Omega;
    m->sz = 1;
    m->hash = hash_combine(0x51, static_cast<size_t>(Kind::Omega));
    return m;
  }();
  return OTerm(n);
}

OTerm OTerm::var(const TypedVar& base, int index) {
  int lv = type_level(base.type);
  if (index < 0 || index > lv) {
    throw TypeError("variable vector component " + std::to_string(index) +
                    " out of range for " + base.to_string() + " (level " +
                    std::to_string(lv) + ")");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = base;
  n->index = index;
  n->sz = 1;
  size_t h = hash_combine(0x52, static_cast<size_t>(Kind::Var));
  h = hash_combine(h, std::hash<TypedVar>()(base));
  h = hash_combine(h, static_cast<size_t>(index));
  n->hash = h;
  n->vars.insert(base);
  return OTerm(std::move(n));
}

OTerm OTerm::make_sum_raw(std::vector<OTerm> operands) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  uint64_t sz = operands.size() - 1;  // joins
  size_t h = hash_combine(0x53, static_cast<size_t>(Kind::Sum));
  for (const OTerm& t : operands) {
    sz = checked_add(sz, t.sz());
    h = hash_combine(h, t.hash());
    const auto& vs = t.vars();
    n->vars.insert(vs.begin(), vs.end());
  }
  n->sz = sz;
  n->hash = h;
  n->operands = std::move(operands);
  return OTerm(std::move(n));
}

OTerm OTerm::sum(std::vector<OTerm> operands) {
  if (operands.empty()) {
    throw TypeError("empty sum (the term language has no zero)");
  }
  for (const OTerm& t : operands) t.n();  // reject empty handles
  if (operands.size() == 1) return operands[0];
  return make_sum_raw(std::move(operands));
}

OTerm OTerm::sum2(const OTerm& a, const OTerm& b) { return sum({a, b}); }

OTerm OTerm::repeat(const OTerm& h, uint64_t k) {
  if (k == 0) throw TypeError("empty repetition (no zero)");
  if (k == 1) return h;
  return make_sum_raw(std::vector<OTerm>(k, h));
}

OTerm OTerm::exp_prod(const OTerm& f, const OTerm& g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExpProd;
  n->sz = checked_add(checked_add(checked_mul(2, f.sz()), g.sz()), 1);
  size_t h = hash_combine(0x54, static_cast<size_t>(Kind::ExpProd));
  h = hash_combine(h, f.hash());
  h = hash_combine(h, g.hash());
  n->hash = h;
  n->vars = f.vars();
  const auto& gv = g.vars();
  n->vars.insert(gv.begin(), gv.end());
  n->lhs = f;
  n->rhs = g;
  return OTerm(std::move(n));
}

OTerm OTerm::psi_term(const OTerm& f, const OTerm& g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Psi;
  n->sz = checked_add(checked_add(f.sz(), g.sz()), 1);
  size_t h = hash_combine(0x55, static_cast<size_t>(Kind::Psi));
  h = hash_combine(h, f.hash());
  h = hash_combine(h, g.hash());
  n->hash = h;
  n->vars = f.vars();
  const auto& gv = g.vars();
  n->vars.insert(gv.begin(), gv.end());
  n->lhs = f;
  n->rhs = g;
  return OTerm(std::move(n));
}

OTerm OTerm::from_nat(uint64_t k) { return repeat(one(), k); }

OTerm::Kind OTerm::kind() const { return n().kind; }

const std::vector<OTerm>& OTerm::operands() const {
  const Node& nd = n();
  if (nd.kind != Kind::Sum) throw TypeError("operands() on a non-sum");
  return nd.operands;
}

const OTerm& OTerm::left() const {
  const Node& nd = n();
  if (nd.kind != Kind::ExpProd && nd.kind != Kind::Psi) {
    throw TypeError("left() on a term without arguments");
  }
  return nd.lhs;
}

const OTerm& OTerm::right() const {
  const Node& nd = n();
  if (nd.kind != Kind::ExpProd && nd.kind != Kind::Psi) {
    throw TypeError("right() on a term without arguments");
  }
  return nd.rhs;
}

const TypedVar& OTerm::var_base() const {
  const Node& nd = n();
  if (nd.kind != Kind::Var) throw TypeError("var_base() on a non-variable");
  return nd.var;
}

int OTerm::var_index() const {
  const Node& nd = n();
  if (nd.kind != Kind::Var) throw TypeError("var_index() on a non-variable");
  return nd.index;
}

bool OTerm::operator==(const OTerm& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash || node_->kind != o.node_->kind ||
      node_->sz != o.node_->sz) {
    return false;
  }
  switch (node_->kind) {
    case Kind::One:
    case Kind::Omega:
      return true;
    case Kind::Var:
      return node_->var == o.node_->var && node_->index == o.node_->index;
    case Kind::Sum: {
      if (node_->operands.size() != o.node_->operands.size()) return false;
      for (size_t i = 0; i < node_->operands.size(); ++i) {
        if (node_->operands[i] != o.node_->operands[i]) return false;
      }
      return true;
    }
    case Kind::ExpProd:
    case Kind::Psi:
      return node_->lhs == o.node_->lhs && node_->rhs == o.node_->rhs;
  }
  return false;
}

int OTerm::compare_syntactic(const OTerm& a, const OTerm& b) {
  if (a.node_ == b.node_) return 0;
  const Node& x = a.n();
  const Node& y = b.n();
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  switch (x.kind) {
    case Kind::One:
    case Kind::Omega:
      return 0;
    case Kind::Var: {
      if (x.var != y.var) return x.var < y.var ? -1 : 1;
      if (x.index != y.index) return x.index < y.index ? -1 : 1;
      return 0;
    }
    case Kind::Sum: {
      size_t k = std::min(x.operands.size(), y.operands.size());
      for (size_t i = 0; i < k; ++i) {
        int c = compare_syntactic(x.operands[i], y.operands[i]);
        if (c != 0) return c;
      }
      if (x.operands.size() != y.operands.size()) {
        return x.operands.size() < y.operands.size() ? -1 : 1;
      }
      return 0;
    }
    case Kind::ExpProd:
    case Kind::Psi: {
      int c = compare_syntactic(x.lhs, y.lhs);
      if (c != 0) return c;
      return compare_syntactic(x.rhs, y.rhs);
    }
  }
  return 0;
}

size_t OTerm::hash() const { return node_ ? node_->hash : 0; }

uint64_t OTerm::sz() const { return n().sz; }

const std::set<TypedVar>& OTerm::vars() const { return n().vars; }

namespace {

// Append the display leaves of h (flattening nested sums) to out.
void collect_display_leaves(const OTerm& h, std::vector<OTerm>& out) {
  if (h.kind() == OTerm::Kind::Sum) {
    for (const OTerm& op : h.operands()) collect_display_leaves(op, out);
  } else {
    out.push_back(h);
  }
}

}  // namespace

std::string OTerm::to_string() const {
  const Node& nd = n();
  switch (nd.kind) {
    case Kind::One:
      return "1";
    case Kind::Omega:
      return "w";
    case Kind::Var:
      return "x[" + std::to_string(nd.index) + "]@" + nd.var.name;
    case Kind::Sum: {
      std::vector<OTerm> leaves;
      collect_display_leaves(*this, leaves);
      std::string out;
      size_t i = 0;
      while (i < leaves.size()) {
        if (!out.empty()) out += " + ";
        if (leaves[i].kind() == Kind::One) {
          uint64_t run = 0;
          while (i < leaves.size() && leaves[i].kind() == Kind::One) {
            ++run;
            ++i;
          }
          out += std::to_string(run);
        } else {
          out += leaves[i].to_string();
          ++i;
        }
      }
      return out;
    }
    case Kind::ExpProd: {
      std::string g = nd.rhs.to_string();
      if (g.find(" + ") != std::string::npos) g = "(" + g + ")";
      return "2^{" + nd.lhs.to_string() + "}." + g;
    }
    case Kind::Psi:
      return "p(" + nd.lhs.to_string() + "; " + nd.rhs.to_string() + ")";
  }
  return "";
}

uint64_t szx(const OTerm& h, const TypedVar& base) {
  if (h.x_free(base)) return 1;
  const auto& nd = h.n();
  switch (nd.kind) {
    case OTerm::Kind::Var:
      return 1;  // some component x[i]@base
    case OTerm::Kind::Sum: {
      // Left-associated binary reading: the collapsible x-free subtrees of
      // an operand run are exactly its prefixes, so the longest x-free
      // prefix counts one symbol and each later operand adds its own count
      // plus a join.
      const auto& ops = nd.operands;
      size_t start = 0;
      while (start < ops.size() && ops[start].x_free(base)) ++start;
      uint64_t total;
      if (start == 0) {
        total = szx(ops[0], base);
        start = 1;
      } else {
        total = 1;  // the x-free prefix ops[0..start)
      }
      for (size_t l = start; l < ops.size(); ++l) {
        total = checked_add(total, checked_add(szx(ops[l], base), 1));
      }
      return total;
    }
    case OTerm::Kind::ExpProd:
      return checked_add(
          checked_add(checked_mul(2, szx(nd.lhs, base)), szx(nd.rhs, base)),
          1);
    case OTerm::Kind::Psi:
      return checked_add(checked_add(szx(nd.lhs, base), szx(nd.rhs, base)),
                         1);
    default:
      return 1;  // unreachable: One/Omega are x-free
  }
}

OTerm substitute_var(const OTerm& h, const TypedVar& base,
                     std::span<const OTerm> components) {
  if (h.x_free(base)) return h;
  const auto& nd = h.n();
  switch (nd.kind) {
    case OTerm::Kind::Var: {
      if (static_cast<size_t>(nd.index) >= components.size()) {
        throw TypeError("substitution vector has no component " +
                        std::to_string(nd.index) + " for " +
                        base.to_string());
      }
      return components[nd.index];
    }
    case OTerm::Kind::Sum: {
      std::vector<OTerm> ops;
      ops.reserve(nd.operands.size());
      for (const OTerm& op : nd.operands) {
        ops.push_back(substitute_var(op, base, components));
      }
      return OTerm::make_sum_raw(std::move(ops));
    }
    case OTerm::Kind::ExpProd:
      return OTerm::exp_prod(substitute_var(nd.lhs, base, components),
                             substitute_var(nd.rhs, base, components));
    case OTerm::Kind::Psi:
      return OTerm::psi_term(substitute_var(nd.lhs, base, components),
                             substitute_var(nd.rhs, base, components));
    default:
      return h;  // unreachable: One/Omega are x-free
  }
}

OTerm close_all_vars(const OTerm& h) {
  if (h.closed()) return h;
  const auto& nd = h.n();
  switch (nd.kind) {
    case OTerm::Kind::Var:
      return OTerm::one();
    case OTerm::Kind::Sum: {
      std::vector<OTerm> ops;
      ops.reserve(nd.operands.size());
      for (const OTerm& op : nd.operands) ops.push_back(close_all_vars(op));
      return OTerm::make_sum_raw(std::move(ops));
    }
    case OTerm::Kind::ExpProd:
      return OTerm::exp_prod(close_all_vars(nd.lhs), close_all_vars(nd.rhs));
    case OTerm::Kind::Psi:
      return OTerm::psi_term(close_all_vars(nd.lhs), close_all_vars(nd.rhs));
    default:
      return h;
  }
}

OTerm sort_sums(const OTerm& h) {
  const auto& nd = h.n();
  switch (nd.kind) {
    case OTerm::Kind::Sum: {
      std::vector<OTerm> ops;
      ops.reserve(nd.operands.size());
      for (const OTerm& op : nd.operands) ops.push_back(sort_sums(op));
      std::sort(ops.begin(), ops.end());
      return OTerm::make_sum_raw(std::move(ops));
    }
    case OTerm::Kind::ExpProd:
      return OTerm::exp_prod(sort_sums(nd.lhs), sort_sums(nd.rhs));
    case OTerm::Kind::Psi:
      return OTerm::psi_term(sort_sums(nd.lhs), sort_sums(nd.rhs));
    default:
      return h;
  }
}

std::optional<uint64_t> as_finite(const OTerm& h) {
  switch (h.kind()) {
    case OTerm::Kind::One:
      return 1;
    case OTerm::Kind::Sum: {
      uint64_t total = 0;
      for (const OTerm& op : h.operands()) {
        auto v = as_finite(op);
        if (!v) return std::nullopt;
        total = checked_add(total, *v);
      }
      return total;
    }
    default:
      return std::nullopt;
  }
}

namespace {

// Memoized on node identity so shared subterms (k-fold sums, reused
// sub-vectors) evaluate once.
CnfOrdinal eval_rec(const OTerm& h, PsiEvaluator* ev,
                    std::unordered_map<const void*, CnfOrdinal>& memo) {
  auto it = memo.find(h.identity());
  if (it != memo.end()) return it->second;
  CnfOrdinal result;
  switch (h.kind()) {
    case OTerm::Kind::One:
      result = CnfOrdinal::from_nat(1);
      break;
    case OTerm::Kind::Omega:
      result = CnfOrdinal::omega();
      break;
    case OTerm::Kind::Var:
      throw TypeError("evaluating open ordinal term: " + h.to_string());
    case OTerm::Kind::Sum: {
      for (const OTerm& op : h.operands()) {
        result = nat_sum(result, eval_rec(op, ev, memo));
      }
      break;
    }
    case OTerm::Kind::ExpProd:
      result = nat_prod(exp2(eval_rec(h.left(), ev, memo)),
                        eval_rec(h.right(), ev, memo));
      break;
    case OTerm::Kind::Psi: {
      if (ev == nullptr) {
        throw TypeError("collapse node in a psi-free evaluation: " +
                        h.to_string());
      }
      CnfOrdinal arg = nat_sum(
          nat_prod(CnfOrdinal::omega(), eval_rec(h.left(), ev, memo)),
          eval_rec(h.right(), ev, memo));
      result = CnfOrdinal::from_nat(ev->eval(arg));
      break;
    }
  }
  memo.emplace(h.identity(), result);
  return result;
}

}  // namespace

CnfOrdinal eval_closed(const OTerm& h, PsiEvaluator& ev) {
  if (!h.closed()) {
    throw TypeError("evaluating open ordinal term: " + h.to_string());
  }
  std::unordered_map<const void*, CnfOrdinal> memo;
  return eval_rec(h, &ev, memo);
}

CnfOrdinal eval_closed_psi_free(const OTerm& h) {
  if (!h.closed()) {
    throw TypeError("evaluating open ordinal term: " + h.to_string());
  }
  std::unordered_map<const void*, CnfOrdinal> memo;
  return eval_rec(h, nullptr, memo);
}

}  // namespace ordcert
