#include "nevlab/nevanlinna/contour.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace nevlab::nev {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// z(t), z'(t), z''(t) on [0, 1].
struct Piece {
  std::function<cplx(double)> z;
  std::function<cplx(double)> dz;
  std::function<cplx(double)> ddz;
};

struct Sample {
  cplx z;
  Jet h;
  cplx g;   // h'/h
  cplx gp;  // (h'/h)'
};

class Walker {
 public:
  Walker(const MeroFunc& f, const ExtValue& a, cplx z0, double tol) : f_(f), a_(a), tol_(tol), cur_(open(f, z0)) {
    auto s = sample(z0, cur_->jet());
    if (!s) throw ContourError("contour starts on a zero or pole");
    last_ = *s;
    res_.min_snr = last_snr_ = snr(last_, cur_->jet());
    res_.evaluations = 1;
  }

  void run(const Piece& p) {
    double t = 0.0, dt = 1.0 / 64;
    while (t < 1.0) {
      double t1 = std::min(1.0, t + dt);
      cplx z1 = p.z(t1);
      bool ok = false;
      auto jf = cur_->probe(z1);
      ++res_.evaluations;
      std::optional<Sample> s1;
      if (jf) s1 = sample(z1, *jf);
      cplx step_int = 0.0, step_mom = 0.0;
      if (s1) {
        double h = t1 - t;
        cplx zp0 = p.dz(t), zp1 = p.dz(t1), zpp0 = p.ddz(t), zpp1 = p.ddz(t1);
        cplx G0 = last_.g * zp0, G1 = s1->g * zp1;
        cplx D0 = last_.gp * zp0 * zp0 + last_.g * zpp0, D1 = s1->gp * zp1 * zp1 + s1->g * zpp1;
        step_int = 0.5 * h * (G0 + G1) + h * h / 12.0 * (D0 - D1);
        cplx M0 = last_.z * G0, M1 = s1->z * G1;
        cplx E0 = (last_.g + last_.z * last_.gp) * zp0 * zp0 + last_.z * last_.g * zpp0;
        cplx E1 = (s1->g + s1->z * s1->gp) * zp1 * zp1 + s1->z * s1->g * zpp1;
        step_mom = 0.5 * h * (M0 + M1) + h * h / 12.0 * (E0 - E1);
        cplx dlog = std::log(s1->h.v / last_.h.v);
        // rounding in h limits how well dlog itself is known
        double floor = 8.0 / last_snr_ + 8.0 / snr(*s1, *jf);
        ok = std::abs(dlog.imag()) <= 0.5 && std::abs(step_int - dlog) <= tol_ * (1e-3 + std::abs(dlog)) + floor &&
             std::isfinite(std::abs(step_mom));
        if (ok) arg_sum_ += dlog.imag();
      }
      if (!ok) {
        dt *= 0.5;
        if (dt < 1e-13) throw ContourError("contour passes through a zero or pole of f - a");
        continue;
      }
      cur_->commit();
      res_.integral += step_int;
      res_.moment += step_mom;
      last_snr_ = snr(*s1, *jf);
      res_.min_snr = std::min(res_.min_snr, last_snr_);
      last_ = *s1;
      t = t1;
      dt = std::min(0.25, dt * 1.6);
    }
  }

  ContourResult finish() {
    res_.winding = static_cast<int>(std::lround(arg_sum_ / (2 * M_PI)));
    return res_;
  }

 private:
  static std::unique_ptr<mero::Cursor> open(const MeroFunc& f, cplx z0) {
    try {
      return f.cursor(z0);
    } catch (const mero::EvalError& e) {
      throw ContourError(e.what());
    }
  }

  std::optional<Sample> sample(cplx z, const Jet& jf) const {
    if (jf.pole && !a_.inf) return std::nullopt;
    Jet h = value_jet(jf, a_);
    if (h.pole || h.v == 0.0 || !std::isfinite(std::abs(h.v)) || !std::isfinite(std::abs(h.d2))) return std::nullopt;
    cplx g = h.d1 / h.v;
    return Sample{z, h, g, h.d2 / h.v - g * g};
  }

  double snr(const Sample& s, const Jet& jf) const {
    double n = value_noise(f_.noise(s.z, jf), jf, a_);
    return n > 0 ? std::abs(s.h.v) / n : std::numeric_limits<double>::infinity();
  }

  const MeroFunc& f_;
  ExtValue a_;
  double tol_;
  std::unique_ptr<mero::Cursor> cur_;
  Sample last_{};
  ContourResult res_;
  double arg_sum_ = 0.0;
  double last_snr_ = 0.0;
};

}  // namespace

double ContourResult::integrality_gap() const {
  return std::abs(integral / cplx(0, 2 * M_PI) - static_cast<double>(winding));
}

Jet value_jet(const Jet& f, const ExtValue& a) {
  if (a.inf) return mero::reciprocal(f);
  if (f.pole) return f;
  return {f.v - a.a, f.d1, f.d2, false};
}

double value_noise(double f_noise, const Jet& f, const ExtValue& a) {
  if (a.inf) return f.pole ? 0.0 : f_noise / std::norm(f.v);
  return f_noise + 4 * kEps * std::abs(a.a);
}

ContourResult integrate_polygon(const MeroFunc& f, const ExtValue& a, const std::vector<cplx>& v, double rel_tol) {
  Walker w(f, a, v.front(), rel_tol);
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx p = v[i], q = v[(i + 1) % v.size()];
    w.run({[=](double t) { return p + t * (q - p); }, [=](double) { return q - p; }, [](double) { return cplx(0.0); }});
  }
  return w.finish();
}

ContourResult integrate_circle(const MeroFunc& f, const ExtValue& a, cplx c, double r, double rel_tol) {
  Walker w(f, a, c + r, rel_tol);
  const double tp = 2 * M_PI;
  // four quarter arcs keep the parameter steps comparable to the polygon case
  for (int k = 0; k < 4; ++k) {
    double th0 = tp * k / 4.0;
    double span = tp / 4.0;
    w.run({[=](double t) { return c + std::polar(r, th0 + span * t); },
           [=](double t) { return cplx(0, span) * std::polar(r, th0 + span * t); },
           [=](double t) { return -span * span * std::polar(r, th0 + span * t); }});
  }
  return w.finish();
}

}  // namespace nevlab::nev
