#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nevlab/exactfield/exact_func.hpp"

namespace nevlab::exact {

/// A finite set of places described by a monic squarefree locus L(u).
///   Plain  - every place over the roots of L (both sheets in the elliptic model)
///   Sheet  - in the elliptic model, the single place over each root where y = Y(u)
///   Branch - ramification points (L divides the curve polynomial)
///   AtInfinity - the place(s) over u = infinity (elliptic model only)
struct PlaceSet {
  enum class Kind { Plain, Sheet, Branch, AtInfinity };
  Kind kind = Kind::Plain;
  Poly locus{1};
  Poly sheet;     // Y mod locus, Sheet only
  int fibre = 1;  // places per root of the locus: 2 for Plain sets on the curve

  bool empty() const { return kind != Kind::AtInfinity && locus.degree() <= 0; }
  /// Number of places contained.
  int count() const;
  std::string str() const;
};

struct DivisorTerm {
  PlaceSet places;
  int order = 0;
};

/// Divisor of a nonzero function on the curve (elliptic) or on C* (exp model,
/// where u = 0 and u = infinity are not points of the domain).
struct Divisor {
  std::vector<DivisorTerm> terms;

  std::vector<DivisorTerm> zeros() const;
  std::vector<DivisorTerm> poles() const;  // orders reported positive
  /// Sum of orders weighted by place counts; zero on a complete curve.
  int degree() const;
};

Divisor divisor(const ExactFunc& f);

/// A shared value: finite coefficient or infinity.
struct ExactValue {
  bool infinite = false;
  Coeff value;

  static ExactValue inf() { return {true, Coeff(0)}; }
  static ExactValue finite(Coeff c) { return {false, std::move(c)}; }
  std::string str() const { return infinite ? "inf" : value.str(); }
  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// Inverse of a modulo m; throws std::domain_error if not coprime.
Poly inverse_mod(const Poly& a, const Poly& m);

/// Zero divisor of f - a (pole divisor of f for a = infinity), orders positive.
std::vector<DivisorTerm> value_points(const ExactFunc& f, const ExactValue& a);

struct SharedPoint {
  PlaceSet places;
  int mult_f = 0;  // 0: not an a-point of f
  int mult_g = 0;
};

struct MultPattern {
  ExactValue value;
  std::vector<SharedPoint> points;
  bool shared = false;
  bool cm = false;
  bool attained = false;

  /// (mult_f, mult_g) -> number of places.
  std::map<std::pair<int, int>, int> histogram() const;
  std::string str() const;
};

MultPattern sharing_report(const ExactFunc& f, const ExactFunc& g, const ExactValue& a);

/// Split loci with rational roots into single-point place sets (display aid).
std::vector<SharedPoint> split_rational(const std::vector<SharedPoint>& pts);

}  // namespace nevlab::exact
