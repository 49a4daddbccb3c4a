#pragma once

#include <set>
#include <string>
#include <vector>

#include "ordcert/oterm.hpp"
#include "ordcert/types.hpp"

namespace ordcert {

// A vector of ordinal terms <h0, ..., hn> of level n = component count - 1.
// Vectors are nonempty; components beyond the level read as 0 in
// comparisons (handled by the comparison layer — there is no zero term).
class OrdinalVector {
public:
  OrdinalVector() = default;  // empty handle
  explicit OrdinalVector(std::vector<OTerm> components);

  // <1, ..., 1> of the given level (level + 1 components).
  static OrdinalVector ones(int level);

  bool empty() const { return components_.empty(); }
  int level() const;
  size_t size() const { return components_.size(); }
  const OTerm& operator[](size_t i) const;
  const std::vector<OTerm>& components() const { return components_; }

  bool operator==(const OrdinalVector& o) const;
  bool operator!=(const OrdinalVector& o) const { return !(*this == o); }

  bool closed() const;
  bool x_free(const TypedVar& base) const;
  std::set<TypedVar> vars() const;

  std::string to_string() const;  // <h0, h1, ...>

private:
  std::vector<OTerm> components_;
};

// Componentwise sum; the level is the larger level, extra components are
// copied from the longer vector. Operand order v then w in every sum.
OrdinalVector vec_add(const OrdinalVector& v, const OrdinalVector& w);

// The prefix <h0, ..., hi>. Requires i <= level(v).
OrdinalVector vec_restrict(const OrdinalVector& v, int i);

// Replace the components of base's variable vector inside every component
// of v by the components of w. Requires level(w) == lv(base's vector),
// i.e. the type level of base.
OrdinalVector vec_substitute(const OrdinalVector& v, const TypedVar& base,
                             const OrdinalVector& w);

// Replace every variable component of every base by 1 in all components.
OrdinalVector vec_close_all(const OrdinalVector& v);

}  // namespace ordcert
