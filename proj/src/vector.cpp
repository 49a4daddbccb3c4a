#include "ordcert/vector.hpp"

#include <algorithm>

namespace ordcert {

OrdinalVector::OrdinalVector(std::vector<OTerm> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw TypeError("ordinal vectors are nonempty");
  }
  for (const OTerm& h : components_) {
    if (h.empty()) throw TypeError("empty component in ordinal vector");
  }
}

OrdinalVector OrdinalVector::ones(int level) {
  if (level < 0) throw TypeError("negative vector level");
  return OrdinalVector(
      std::vector<OTerm>(static_cast<size_t>(level) + 1, OTerm::one()));
}

int OrdinalVector::level() const {
  if (empty()) throw TypeError("level() of empty vector");
  return static_cast<int>(components_.size()) - 1;
}

const OTerm& OrdinalVector::operator[](size_t i) const {
  if (i >= components_.size()) {
    throw TypeError("vector component " + std::to_string(i) +
                    " beyond level " +
                    std::to_string(components_.size() - 1));
  }
  return components_[i];
}

bool OrdinalVector::operator==(const OrdinalVector& o) const {
  return components_ == o.components_;
}

bool OrdinalVector::closed() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const OTerm& h) { return h.closed(); });
}

bool OrdinalVector::x_free(const TypedVar& base) const {
  return std::all_of(components_.begin(), components_.end(),
                     [&](const OTerm& h) { return h.x_free(base); });
}

std::set<TypedVar> OrdinalVector::vars() const {
  std::set<TypedVar> out;
  for (const OTerm& h : components_) {
    const auto& vs = h.vars();
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

std::string OrdinalVector::to_string() const {
  std::string out = "<";
  for (size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) out += ", ";
    out += components_[i].to_string();
  }
  out += ">";
  return out;
}

OrdinalVector vec_add(const OrdinalVector& v, const OrdinalVector& w) {
  size_t common = std::min(v.size(), w.size());
  std::vector<OTerm> comps;
  comps.reserve(std::max(v.size(), w.size()));
  for (size_t i = 0; i < common; ++i) {
    comps.push_back(OTerm::sum2(v[i], w[i]));
  }
  const OrdinalVector& longer = v.size() >= w.size() ? v : w;
  for (size_t i = common; i < longer.size(); ++i) {
    comps.push_back(longer[i]);
  }
  return OrdinalVector(std::move(comps));
}

OrdinalVector vec_restrict(const OrdinalVector& v, int i) {
  if (i < 0 || i > v.level()) {
    throw TypeError("restriction to level " + std::to_string(i) +
                    " out of range for vector of level " +
                    std::to_string(v.level()));
  }
  std::vector<OTerm> comps(v.components().begin(),
                           v.components().begin() + i + 1);
  return OrdinalVector(std::move(comps));
}

OrdinalVector vec_substitute(const OrdinalVector& v, const TypedVar& base,
                             const OrdinalVector& w) {
  if (w.level() != type_level(base.type)) {
    throw TypeError("substitution vector for " + base.to_string() +
                    " must have level " +
                    std::to_string(type_level(base.type)) + ", got " +
                    std::to_string(w.level()));
  }
  std::vector<OTerm> comps;
  comps.reserve(v.size());
  for (const OTerm& h : v.components()) {
    comps.push_back(substitute_var(h, base, w.components()));
  }
  return OrdinalVector(std::move(comps));
}

OrdinalVector vec_close_all(const OrdinalVector& v) {
  std::vector<OTerm> comps;
  comps.reserve(v.size());
  for (const OTerm& h : v.components()) {
    comps.push_back(close_all_vars(h));
  }
  return OrdinalVector(std::move(comps));
}

}  // namespace ordcert
