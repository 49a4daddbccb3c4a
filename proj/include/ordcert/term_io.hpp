#pragma once

#include <string>

#include "ordcert/term.hpp"

namespace ordcert {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)),
        position(pos) {}
  size_t position;
};

// Surface syntax:
//   terms   0 | S | D[tau] | R[tau] | R^{t}[tau] | x | x:tau
//           | t u  (left associative application) | \x:tau. t | (t)
//   types   o | (s -> t)   with -> right associative
// Bound occurrences are printed bare, free occurrences annotated, so
// parse(print(t)) == t structurally.
Term parse_term(const std::string& text, FreshNameSource* observe = nullptr);
FiniteType parse_type(const std::string& text);

std::string print_term(const Term& t);
std::string print_type(const FiniteType& t);

}  // namespace ordcert
