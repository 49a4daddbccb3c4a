#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace ordcert {

// Finite simple types: the ground type o and right-nested arrows.
// Immutable, structurally shared; equality is structural.
class FiniteType {
public:
  FiniteType() : node_(nullptr) {}  // ground

  static FiniteType ground() { return FiniteType(); }
  static FiniteType arrow(const FiniteType& arg, const FiniteType& res);

  bool is_ground() const { return node_ == nullptr; }
  bool is_arrow() const { return node_ != nullptr; }
  const FiniteType& arg() const;
  const FiniteType& res() const;

  // lv(o)=0, lv(a->b)=max(lv(a)+1, lv(b))
  int level() const;

  bool operator==(const FiniteType& other) const;
  bool operator!=(const FiniteType& other) const { return !(*this == other); }
  // total order for use as map keys
  bool operator<(const FiniteType& other) const;

  std::string to_string() const;
  size_t hash() const;

private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct FiniteType::Node {
  FiniteType arg;
  FiniteType res;
  int level;
};

inline int FiniteType::level() const { return node_ ? node_->level : 0; }

int type_level(const FiniteType& t);

class TypeError : public std::runtime_error {
public:
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// A typed variable. Names determine types within one analysis session
// (Church style); the well-typedness check rejects one name at two types.
struct TypedVar {
  std::string name;
  FiniteType type;

  bool operator==(const TypedVar& o) const {
    return name == o.name && type == o.type;
  }
  bool operator!=(const TypedVar& o) const { return !(*this == o); }
  bool operator<(const TypedVar& o) const {
    if (name != o.name) return name < o.name;
    return type < o.type;
  }
  std::string to_string() const { return name + ":" + type.to_string(); }
};

// Session-scoped source of fresh variable names. Names carry an integer
// suffix; fresh = current max + 1. Parsing observes names so that freshly
// generated names never collide with anything already read.
class FreshNameSource {
public:
  FreshNameSource() : next_(1) {}
  explicit FreshNameSource(uint64_t start) : next_(start) {}

  // Next fresh name with the given base (digits stripped from the base).
  std::string fresh(const std::string& base = "v");

  // Record an existing name so future fresh names stay clear of it.
  void observe(const std::string& name);

  uint64_t peek() const { return next_.load(); }

private:
  std::atomic<uint64_t> next_;
};

}  // namespace ordcert

template <>
struct std::hash<ordcert::FiniteType> {
  size_t operator()(const ordcert::FiniteType& t) const { return t.hash(); }
};

template <>
struct std::hash<ordcert::TypedVar> {
  size_t operator()(const ordcert::TypedVar& v) const {
    return std::hash<std::string>()(v.name) ^ (v.type.hash() * 1315423911u);
  }
};
