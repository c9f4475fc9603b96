#pragma once

#include <stdexcept>
#include <string_view>

#include "nevlab/exactfield/exact_func.hpp"

namespace nevlab::exact {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rational expression in u (and y in the elliptic model).  Accepts + - * / ^,
/// parentheses, integers, √d or sqrt(d), and e^z / exp(z) as synonyms for u.
ExactFunc parse_expr(std::string_view text, const Model& model);

Poly parse_poly(std::string_view text);

/// Inverse of ExactFunc::canonical().
ExactFunc parse_canonical(std::string_view text);

}  // namespace nevlab::exact
