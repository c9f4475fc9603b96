#include "nevlab/theorems/exact_checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>


namespace nevlab::thm {

namespace {

std::string value_list(const std::vector<ExactValue>& v, const std::array<int, 4>& p) {
  std::ostringstream os;
  os << "(" << v[p[0]].str() << ", " << v[p[1]].str() << ", " << v[p[2]].str() << ", " << v[p[3]].str() << ")";
  return os.str();
}

void require_four_distinct(const std::vector<ExactValue>& v) {
  if (v.size() != 4) throw PreconditionError("four shared values expected");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (v[i] == v[j]) throw PreconditionError("shared values must be distinct");
}

/// Exact view of an ExtValue, if it has one.
std::optional<ExactValue> exact_of(const mero::ExtValue& a) {
  if (a.inf) return ExactValue::inf();
  if (a.exact) return ExactValue::finite(*a.exact);
  return std::nullopt;
}

/// Moebius involution fixing c and d, applied to w (numerically).
mero::cplx involution(mero::cplx w, const mero::ExtValue& c, const mero::ExtValue& d, bool& w_inf) {
  if (c.inf || d.inf) {
    const mero::cplx m = c.inf ? d.a : c.a;
    if (w_inf) return 0.0;  // infinity stays fixed
    return 2.0 * m - w;
  }
  const mero::cplx s = c.a + d.a, p = c.a * d.a;
  if (w_inf) {
    w_inf = false;
    return s / 2.0;
  }
  mero::cplx den = 2.0 * w - s;
  if (den == 0.0) {
    w_inf = true;
    return 0.0;
  }
  return (s * w - 2.0 * p) / den;
}

double chordal(mero::cplx a, bool a_inf, mero::cplx b, bool b_inf) {
  if (a_inf && b_inf) return 0.0;
  if (a_inf) return 1.0 / std::sqrt(1.0 + std::norm(b));
  if (b_inf) return 1.0 / std::sqrt(1.0 + std::norm(a));
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

}  // namespace

std::optional<Coeff> cross_ratio(const ExactValue& a, const ExactValue& b, const ExactValue& c, const ExactValue& d) {
  std::vector<ExactValue> v{a, b, c, d};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (v[i] == v[j]) return std::nullopt;
  // each factor (x - y) with an infinite entry is dropped; one factor of the numerator and one
  // of the denominator contain the infinite value
  auto diff = [](const ExactValue& x, const ExactValue& y) {
    return (x.infinite || y.infinite) ? Coeff(1) : x.value - y.value;
  };
  return diff(a, c) * diff(b, d) / (diff(a, d) * diff(b, c));
}

bool is_harmonic(const std::vector<ExactValue>& v) {
  if (v.size() != 4) return false;
  auto cr = cross_ratio(v[0], v[1], v[2], v[3]);
  return cr && *cr == Coeff(-1);
}

std::vector<std::array<int, 4>> pairings() {
  return {{0, 1, 2, 3}, {2, 3, 0, 1}, {0, 2, 1, 3}, {1, 3, 0, 2}, {0, 3, 1, 2}, {1, 2, 0, 3}};
}

CheckResult check_four_value_conclusion(const ExactFunc& f, const ExactFunc& g, const std::vector<ExactValue>& values) {
  if (f == g) throw PreconditionError("the Four-Value theorem concerns distinct functions");
  if (f.is_constant() || g.is_constant()) throw PreconditionError("non-constant functions required");
  require_four_distinct(values);
  CheckResult out;
  out.name = "four-value conclusion";
  out.status = Status::fails;
  for (const auto& p : pairings()) {
    const auto &a1 = values[p[0]], &a2 = values[p[1]], &c = values[p[2]], &d = values[p[3]];
    auto cr = cross_ratio(a1, a2, c, d);
    std::string head = value_list(values, p) + ": cross-ratio " + cr->str();
    if (!(*cr == Coeff(-1))) {
      out.witness.push_back(head);
      continue;
    }
    ExactFunc m;
    if (c.infinite || d.infinite) {
      const Coeff& fixed = c.infinite ? d.value : c.value;
      m = ExactFunc::constant(f.model(), fixed * Coeff(2)) - f;
    } else {
      Coeff s = c.value + d.value, pr = c.value * d.value;
      m = (f * s - ExactFunc::constant(f.model(), pr * Coeff(2))) / (f * Coeff(2) - ExactFunc::constant(f.model(), s));
    }
    bool same = m == g;
    out.witness.push_back(head + "; M(f) = " + m.str() + (same ? " = g" : " != g"));
    if (same) out.status = Status::holds;
  }
  return out;
}

CheckResult check_four_value_conclusion(const mero::MeroFunc& f, const mero::MeroFunc& g,
                                        const std::vector<mero::ExtValue>& values,
                                        const std::vector<mero::cplx>& samples_in) {
  if (&f == &g) throw PreconditionError("the Four-Value theorem concerns distinct functions");
  if (f.is_constant() || g.is_constant()) throw PreconditionError("non-constant functions required");
  if (values.size() != 4) throw PreconditionError("four shared values expected");
  std::vector<mero::cplx> samples = samples_in;
  if (samples.empty())
    for (int k = 0; k < 16; ++k) samples.push_back({0.37 + 0.113 * k, 0.23 + 0.071 * k * std::sqrt(k + 1.0)});

  std::vector<std::optional<ExactValue>> ex;
  for (const auto& a : values) ex.push_back(exact_of(a));
  CheckResult out;
  out.name = "four-value conclusion";
  out.status = Status::fails;
  out.note = "numeric";
  for (const auto& p : pairings()) {
    const auto &a1 = values[p[0]], &a2 = values[p[1]], &c = values[p[2]], &d = values[p[3]];
    std::string head = "(" + a1.label + ", " + a2.label + ", " + c.label + ", " + d.label + ")";
    bool harmonic;
    if (ex[p[0]] && ex[p[1]] && ex[p[2]] && ex[p[3]]) {
      auto cr = cross_ratio(*ex[p[0]], *ex[p[1]], *ex[p[2]], *ex[p[3]]);
      if (!cr) throw PreconditionError("shared values must be distinct");
      harmonic = *cr == Coeff(-1);
      head += ": cross-ratio " + cr->str();
    } else {
      // numerical cross-ratio, all four finite here unless one is infinity
      auto diff = [](const mero::ExtValue& x, const mero::ExtValue& y) -> mero::cplx {
        return (x.inf || y.inf) ? 1.0 : x.a - y.a;
      };
      mero::cplx cr = diff(a1, c) * diff(a2, d) / (diff(a1, d) * diff(a2, c));
      harmonic = std::abs(cr + 1.0) < 1e-12;
      std::ostringstream os;
      os << ": cross-ratio ~ " << cr.real() << (cr.imag() < 0 ? "" : "+") << cr.imag() << "i";
      head += os.str();
    }
    if (!harmonic) {
      out.witness.push_back(head);
      continue;
    }
    double worst_dist = 0.0;
    for (auto z : samples) {
      auto jf = f.eval(z), jg = g.eval(z);
      bool inf = jf.pole;
      mero::cplx w = involution(jf.v, c, d, inf);
      worst_dist = std::max(worst_dist, chordal(w, inf, jg.v, jg.pole));
    }
    bool same = worst_dist < 1e-8;
    std::ostringstream os;
    os << head << "; max chordal |M(f) - g| = " << worst_dist;
    out.witness.push_back(os.str());
    if (same) out.status = Status::holds;
  }
  return out;
}

mpq_class defekt_factor(int ell) {
  if (ell <= 4) throw std::invalid_argument("l > 4 required");
  mpq_class v(mpz_class((2 * ell + 1) * (ell + 2)), mpz_class(ell - 4));
  v.canonicalize();
  return v;
}

DefektMin minimize_defekt(int lmax) {
  if (lmax < 5) throw std::invalid_argument("lmax >= 5 required");
  DefektMin best{5, defekt_factor(5)};
  for (int l = 6; l <= lmax; ++l) {
    mpq_class v = defekt_factor(l);
    if (v < best.value) best = {l, v};
  }
  return best;
}

CheckResult check_defekt_constants() {
  CheckResult out;
  out.name = "defekt constants";
  auto m = minimize_defekt();
  mpq_class at5 = defekt_factor(5);
  bool shape = true;
  for (int l = 5; l < 20; ++l) {
    bool down = defekt_factor(l + 1) < defekt_factor(l);
    if (down != (l + 1 <= m.ell)) shape = false;
  }
  out.witness.push_back("min over l of (2l+1)(l+2)/(l-4) = " + m.value.get_str() + " at l = " + std::to_string(m.ell));
  out.witness.push_back("l = 5: " + at5.get_str());
  out.witness.push_back(std::string("strictly decreasing then increasing on 5..20: ") + (shape ? "yes" : "no"));
  out.status = (m.ell == 9 && m.value == mpq_class(209, 5) && at5 == 77 && shape) ? Status::holds : Status::fails;
  return out;
}

}  // namespace nevlab::thm
