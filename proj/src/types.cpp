#include "ordcert/types.hpp"

#include <algorithm>
#include <cctype>

namespace ordcert {

FiniteType FiniteType::arrow(const FiniteType& arg, const FiniteType& res) {
  FiniteType t;
  int lv = std::max(arg.level() + 1, res.level());
  t.node_ = std::make_shared<Node>(Node{arg, res, lv});
  return t;
}

const FiniteType& FiniteType::arg() const {
  if (!node_) throw TypeError("ground type has no argument");
  return node_->arg;
}

const FiniteType& FiniteType::res() const {
  if (!node_) throw TypeError("ground type has no result");
  return node_->res;
}

bool FiniteType::operator==(const FiniteType& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->level != other.node_->level) return false;
  return node_->arg == other.node_->arg && node_->res == other.node_->res;
}

bool FiniteType::operator<(const FiniteType& other) const {
  if (node_ == other.node_) return false;
  if (!node_) return other.node_ != nullptr;
  if (!other.node_) return false;
  if (node_->arg < other.node_->arg) return true;
  if (other.node_->arg < node_->arg) return false;
  return node_->res < other.node_->res;
}

std::string FiniteType::to_string() const {
  if (is_ground()) return "o";
  // arrows are right associative; one pair of parentheses wraps each
  // maximal arrow chain
  std::string inner;
  const FiniteType* cur = this;
  while (true) {
    const FiniteType& a = cur->arg();
    inner += a.is_arrow() ? a.to_string() : "o";
    inner += " -> ";
    if (cur->res().is_arrow()) {
      cur = &cur->res();
    } else {
      inner += "o";
      break;
    }
  }
  return "(" + inner + ")";
}

size_t FiniteType::hash() const {
  if (!node_) return 0x9e3779b9;
  size_t h = node_->arg.hash() * 31 + node_->res.hash() * 131 + 7;
  return h;
}

int type_level(const FiniteType& t) { return t.level(); }

std::string FreshNameSource::fresh(const std::string& base) {
  std::string b = base;
  while (!b.empty() && std::isdigit(static_cast<unsigned char>(b.back())))
    b.pop_back();
  if (b.empty()) b = "v";
  uint64_t n = next_.fetch_add(1);
  return b + std::to_string(n);
}

void FreshNameSource::observe(const std::string& name) {
  size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  if (i == name.size()) return;  // no numeric suffix
  // avoid overflow on absurd suffixes
  if (name.size() - i > 18) return;
  uint64_t suffix = std::stoull(name.substr(i));
  uint64_t cur = next_.load();
  while (cur <= suffix &&
         !next_.compare_exchange_weak(cur, suffix + 1)) {
  }
}

}  // namespace ordcert
