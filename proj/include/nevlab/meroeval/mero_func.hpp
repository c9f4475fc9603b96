#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nevlab/exactfield/divisor.hpp"
#include "nevlab/exactfield/exact_func.hpp"
#include "nevlab/meroeval/numpoly.hpp"

namespace nevlab::mero {

using cplx = std::complex<double>;

/// A function could not be evaluated at the requested point (e.g. branch tracking gave up).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value and first two derivatives.  For pole == true the numbers are meaningless.
struct Jet {
  cplx v;
  cplx d1;
  cplx d2;
  bool pole = false;
};

/// Jet of 1/f from the jet of f.
Jet reciprocal(const Jet& j);

/// Extended complex value: finite a or infinity.
struct ExtValue {
  bool inf = false;
  cplx a;
  std::string label;
  std::optional<exact::Coeff> exact;  // finite values known exactly

  static ExtValue infinity() { return {true, 0.0, "inf", std::nullopt}; }
  static ExtValue finite(cplx a, std::string label = "");
  static ExtValue from_exact(const exact::ExactValue& v);
};

struct PoleSite {
  cplx z;
  int order = 1;
};

/// Parallelogram {origin + s e1 + t e2 : 0 <= s, t <= 1}.
struct Box {
  cplx origin;
  cplx e1;
  cplx e2;

  static Box square(cplx centre, double half) {
    return {centre - cplx(half, half), cplx(2 * half, 0), cplx(0, 2 * half)};
  }
  cplx at(double s, double t) const { return origin + s * e1 + t * e2; }
  std::array<double, 2> coords(cplx z) const;
  bool contains(cplx z, double margin = 0.0) const;
  /// Smallest box with the same axes grown by the given fraction on every side.
  Box grown(double frac) const;
  double diameter() const { return std::max(std::abs(e1 + e2), std::abs(e1 - e2)); }
};

/// Stateful evaluator that walks along a path (needed for branch tracking).
class Cursor {
 public:
  virtual ~Cursor() = default;
  virtual cplx position() const = 0;
  virtual const Jet& jet() const = 0;
  /// Jet at z reached from the current position, or nullopt if the step is too long.
  virtual std::optional<Jet> probe(cplx z) = 0;
  /// Move to the last successfully probed point.
  virtual void commit() = 0;
};

class MeroFunc {
 public:
  virtual ~MeroFunc() = default;

  virtual Jet eval(cplx z) const = 0;
  /// Jet of 1/f; override when a stabler form exists.
  virtual Jet eval_reciprocal(cplx z) const { return reciprocal(eval(z)); }
  virtual std::unique_ptr<Cursor> cursor(cplx z0) const;
  /// Poles of f in the box with their orders.
  virtual std::vector<PoleSite> poles_in(const Box& box) const = 0;
  /// Absolute rounding noise of the value f(z) whose jet is j.
  virtual double noise(cplx z, const Jet& j) const;
  /// Period pair (2 omega1, 2 omega2) for elliptic functions.
  virtual std::optional<std::array<cplx, 2>> periods() const { return std::nullopt; }
  virtual bool is_constant() const { return false; }
  virtual std::string describe() const = 0;
  /// f - a as a function of its own when an exact form avoids the cancellation of
  /// evaluating f and subtracting; null otherwise.
  virtual std::shared_ptr<const MeroFunc> minus(const exact::Coeff&) const { return nullptr; }
};

using MeroPtr = std::shared_ptr<const MeroFunc>;

/// f^# = |f'|/(1+|f|^2), via 1/f where |f| > 1.
double spherical_derivative(const MeroFunc& f, cplx z);
double spherical_derivative(const Jet& j);

/// Cursor that simply re-evaluates a stateless function.
class PlainCursor : public Cursor {
 public:
  PlainCursor(const MeroFunc& f, cplx z0) : f_(f), z_(z0), jet_(f.eval(z0)) {}
  cplx position() const override { return z_; }
  const Jet& jet() const override { return jet_; }
  std::optional<Jet> probe(cplx z) override;
  void commit() override;

 private:
  const MeroFunc& f_;
  cplx z_;
  Jet jet_;
  cplx pz_;
  Jet pjet_;
};

/// R(e^z) for an ExpModel element R.
class RationalOfExp : public MeroFunc {
 public:
  explicit RationalOfExp(exact::ExactFunc r, std::string name = "");

  const exact::ExactFunc& exact() const { return r_; }
  Jet eval(cplx z) const override;
  Jet eval_reciprocal(cplx z) const override;
  std::vector<PoleSite> poles_in(const Box& box) const override;
  double noise(cplx z, const Jet& j) const override;
  bool is_constant() const override { return r_.is_constant(); }
  std::string describe() const override;
  std::shared_ptr<const MeroFunc> minus(const exact::Coeff& a) const override;

 private:
  exact::ExactFunc r_;
  std::string name_;
  CFunc f0_, f1_, f2_;
  std::optional<std::array<CFunc, 3>> inv_;
  std::vector<std::pair<std::vector<cplx>, int>> pole_u_;  // u-roots of den factors, order
};

/// Solutions of e^z = u in the box.
std::vector<cplx> exp_preimages(cplx u, const Box& box);

}  // namespace nevlab::mero
