#include "ordcert/vector_ops.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace ordcert {

namespace {

constexpr uint64_t kMaxHeadFactor = uint64_t{1} << 20;

uint64_t checked_add(uint64_t a, uint64_t b) {
  if (a > std::numeric_limits<uint64_t>::max() - b)
    throw BudgetError("differential head factor overflows");
  return a + b;
}

uint64_t checked_shl(uint64_t a, unsigned bits) {
  if (bits >= 64 || a > (std::numeric_limits<uint64_t>::max() >> bits))
    throw BudgetError("differential head factor overflows");
  return a << bits;
}

void require_binder_member(const OTerm& h, int i, const TypedVar& x) {
  if (auto viol = class_violation(h, i, ClassKind::Binder, &x, nullptr,
                                  nullptr, PsiSide::Assume))
    throw ClassError(*viol);
}

}  // namespace

OrdinalVector box(const OrdinalVector& f, const OrdinalVector& g) {
  int m = f.level();
  int n = g.level();
  if (m <= n)
    throw TypeError("box needs level(f) > level(g); got " +
                    std::to_string(m) + " and " + std::to_string(n));
  std::vector<OTerm> comps(static_cast<size_t>(m) + 1, OTerm::one());
  for (int i = m; i > n; --i) comps[i] = f[i];
  for (int i = n; i >= 1; --i)
    comps[i] = OTerm::exp_prod(comps[i + 1], OTerm::sum2(f[i], g[i]));
  std::vector<OTerm> tail{f[0], g[0]};
  for (int k = 0; k < n; ++k) tail.push_back(OTerm::one());
  comps[0] = OTerm::psi_term(comps[1], OTerm::sum(std::move(tail)));
  return OrdinalVector(std::move(comps));
}

uint64_t Sx(const OrdinalVector& v, const TypedVar& x) {
  unsigned n = static_cast<unsigned>(type_level(x.type)) + 1;
  uint64_t total = 0;
  for (int i = 0; i <= v.level(); ++i)
    total = checked_add(total, szx(v[i], x));
  return checked_shl(total, n);
}

namespace {

// The vector for an x-free term under the partial differential.
OrdinalVector xfree_partial(const OTerm& h, int i, int n) {
  std::vector<OTerm> comps;
  comps.reserve(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    comps.push_back(j == i ? OTerm::sum2(h, OTerm::one()) : OTerm::one());
  return OrdinalVector(std::move(comps));
}

OrdinalVector partial_rec(const TypedVar& x, int i, const OTerm& h, int n) {
  if (h.x_free(x)) return xfree_partial(h, i, n);
  switch (h.kind()) {
    case OTerm::Kind::Var:
      // Not x-free and a variable: the binder family's own component at
      // this level.
      return OrdinalVector::ones(n);
    case OTerm::Kind::Sum: {
      const auto& ops = h.operands();
      size_t s = 0;
      while (s < ops.size() && ops[s].x_free(x)) ++s;
      OrdinalVector acc = OrdinalVector::ones(n);  // overwritten below
      size_t start;
      if (s == 0) {
        acc = partial_rec(x, i, ops[0], n);
        start = 1;
      } else {
        std::vector<OTerm> prefix(ops.begin(),
                                  ops.begin() + static_cast<long>(s));
        acc = xfree_partial(OTerm::sum(std::move(prefix)), i, n);
        start = s;
      }
      for (size_t l = start; l < ops.size(); ++l) {
        OrdinalVector part = partial_rec(x, i, ops[l], n);
        std::vector<OTerm> comps;
        comps.reserve(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j)
          comps.push_back(OTerm::sum({acc[j], part[j], OTerm::one()}));
        acc = OrdinalVector(std::move(comps));
      }
      return acc;
    }
    case OTerm::Kind::ExpProd: {
      OrdinalVector df = partial_rec(x, i + 1, h.left(), n);
      OrdinalVector dg = partial_rec(x, i, h.right(), n);
      std::vector<OTerm> comps;
      comps.reserve(static_cast<size_t>(n) + 1);
      for (int j = 0; j <= n; ++j)
        comps.push_back(
            OTerm::sum({df[j], df[j], dg[j], OTerm::one()}));
      return OrdinalVector(std::move(comps));
    }
    case OTerm::Kind::Psi: {
      OrdinalVector df = partial_rec(x, 1, h.left(), n);
      OrdinalVector dg = partial_rec(x, 0, h.right(), n);
      std::vector<OTerm> ones(static_cast<size_t>(type_level(x.type)) + 1,
                              OTerm::one());
      OTerm f_closed = substitute_var(h.left(), x, ones);
      std::vector<OTerm> comps;
      comps.reserve(static_cast<size_t>(n) + 1);
      comps.push_back(OTerm::psi_term(f_closed, dg[0]));
      for (int j = 1; j <= n; ++j)
        comps.push_back(OTerm::sum2(df[j], dg[j]));
      return OrdinalVector(std::move(comps));
    }
    case OTerm::Kind::One:
    case OTerm::Kind::Omega:
      break;  // always x-free; unreachable
  }
  throw TypeError("partial differential: unreachable shape");
}

}  // namespace

OrdinalVector dop_partial(const TypedVar& x, int i, const OTerm& h) {
  if (i < 0) throw TypeError("partial differential: negative level");
  require_binder_member(h, i, x);
  return partial_rec(x, i, h, type_level(x.type) + 1);
}

OrdinalVector dop(const TypedVar& x, const OrdinalVector& v) {
  int n = type_level(x.type) + 1;
  int m = v.level();
  int l = std::max(n, m);
  for (int i = 0; i <= m; ++i) require_binder_member(v[i], i, x);

  std::vector<OrdinalVector> parts;
  parts.reserve(static_cast<size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) parts.push_back(partial_rec(x, i, v[i], n));

  uint64_t factor = Sx(v, x);
  if (factor > kMaxHeadFactor)
    throw BudgetError("differential head factor " + std::to_string(factor) +
                      " too large to materialize");

  std::vector<OTerm> comps;
  comps.reserve(static_cast<size_t>(l) + 1);
  comps.push_back(OTerm::repeat(parts[0][0], factor));
  for (int j = 1; j <= n; ++j) {
    std::vector<OTerm> run;
    run.reserve(static_cast<size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) run.push_back(parts[static_cast<size_t>(i)][j]);
    comps.push_back(OTerm::sum(std::move(run)));
  }
  for (int j = n + 1; j <= l; ++j) comps.push_back(v[j]);
  return OrdinalVector(std::move(comps));
}

namespace {

SubxSets subx_rec(const OTerm& h, const TypedVar& x, int i, int j) {
  SubxSets out;
  if (i > j) return out;
  if (h.x_free(x)) {
    if (i == j) {
      out.t.insert(h);
      out.sub.insert(h);
    }
    return out;
  }
  switch (h.kind()) {
    case OTerm::Kind::Var:
      return out;  // the binder family's own component
    case OTerm::Kind::Sum: {
      const auto& ops = h.operands();
      std::vector<OTerm> prefix(ops.begin(), ops.end() - 1);
      SubxSets left = subx_rec(OTerm::sum(std::move(prefix)), x, i, j);
      SubxSets right = subx_rec(ops.back(), x, i, j);
      out.t = std::move(left.t);
      out.t.insert(right.t.begin(), right.t.end());
      out.sub = std::move(left.sub);
      out.sub.insert(right.sub.begin(), right.sub.end());
      if (i == j) out.sub.insert(h);
      return out;
    }
    case OTerm::Kind::ExpProd:
    case OTerm::Kind::Psi: {
      SubxSets left = subx_rec(h.left(), x, i + 1, j);
      SubxSets right = subx_rec(h.right(), x, i, j);
      out.t = std::move(left.t);
      out.t.insert(right.t.begin(), right.t.end());
      out.sub = std::move(left.sub);
      out.sub.insert(right.sub.begin(), right.sub.end());
      if (i == j) out.sub.insert(h);
      return out;
    }
    case OTerm::Kind::One:
    case OTerm::Kind::Omega:
      break;  // always x-free; unreachable
  }
  return out;
}

}  // namespace

SubxSets subx_sets(const OTerm& h, const TypedVar& x, int i, int j) {
  if (i < 0 || j < 0)
    throw TypeError("indexed subterm sets: negative level");
  return subx_rec(h, x, i, j);
}

}  // namespace ordcert
