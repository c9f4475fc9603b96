#include "nevlab/meroeval/triple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nevlab::mero {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::array<double, 2> coords_in(cplx z, cplx p1, cplx p2) {
  double det = p1.real() * p2.imag() - p2.real() * p1.imag();
  return {(z.real() * p2.imag() - p2.real() * z.imag()) / det, (p1.real() * z.imag() - z.real() * p1.imag()) / det};
}

double separation(const std::array<cplx, 3>& w) {
  return std::min({std::abs(w[0] - w[1]), std::abs(w[1] - w[2]), std::abs(w[0] - w[2])});
}

using Perm = std::array<int, 3>;

Perm compose(const Perm& a, const Perm& b) { return {a[static_cast<std::size_t>(b[0])], a[static_cast<std::size_t>(b[1])], a[static_cast<std::size_t>(b[2])]}; }

Perm power(const Perm& p, long e) {
  Perm out{0, 1, 2};
  long n = ((e % 6) + 6) % 6;  // permutations of three letters have order dividing 6
  for (long i = 0; i < n; ++i) out = compose(p, out);
  return out;
}

}  // namespace

exact::Coeff triple_alpha(bool plus) {
  return exact::Coeff(mpq_class(1, 2), mpq_class(plus ? 1 : -1, 2), -3);
}

TripleSystem::TripleSystem(exact::Coeff alpha, CurveParam u_curve)
    : alpha_exact_(std::move(alpha)), alpha_(alpha_exact_.to_complex()), curve_(std::move(u_curve)) {
  exact::Coeff cube = alpha_exact_ * alpha_exact_ * alpha_exact_;
  if (!(cube == exact::Coeff(-1)) || alpha_exact_ == exact::Coeff(-1))
    throw std::invalid_argument("alpha must satisfy alpha^3 = -1, alpha != -1");
  auto [p1, p2] = curve_.periods();
  hmax_ = 0.05 * std::min(std::abs(p1), std::abs(p2));

  // base point: best separated roots on a coarse grid of the u cell
  const int grid = 12;
  double best = -1.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      cplx z = ((i + 0.37) / grid) * p1 + ((j + 0.41) / grid) * p2;
      State s = fresh_state(z);
      if (s.u.pole || std::abs(s.u.v) > 4.0) continue;  // stay away from the poles of u
      double sc = 1.0 + std::max({std::abs(s.w[0]), std::abs(s.w[1]), std::abs(s.w[2])});
      double q = separation(s.w) / sc;
      if (q > best) {
        best = q;
        base_ = s;
      }
    }
  std::sort(base_.w.begin(), base_.w.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });

  // monodromy of the u periods acting on the labels
  auto monodromy = [&](cplx per) {
    State s = base_;
    track(s, base_.z + per);
    Perm pi{};
    for (int k = 0; k < 3; ++k) {
      int arg = 0;
      for (int j = 1; j < 3; ++j)
        if (std::abs(s.w[static_cast<std::size_t>(k)] - base_.w[static_cast<std::size_t>(j)]) <
            std::abs(s.w[static_cast<std::size_t>(k)] - base_.w[static_cast<std::size_t>(arg)]))
          arg = j;
      if (std::abs(s.w[static_cast<std::size_t>(k)] - base_.w[static_cast<std::size_t>(arg)]) >
          1e-6 * (1.0 + std::abs(base_.w[static_cast<std::size_t>(arg)])))
        throw TrackingError("monodromy does not return to the base roots");
      pi[static_cast<std::size_t>(k)] = arg;
    }
    return pi;
  };
  Perm m1 = monodromy(p1), m2 = monodromy(p2);

  // kernel lattice {(m, n) : m1^m m2^n = id}
  std::vector<std::array<long, 2>> ker;
  for (long m = -6; m <= 6; ++m)
    for (long n = -6; n <= 6; ++n)
      if ((m || n) && compose(power(m1, m), power(m2, n)) == Perm{0, 1, 2}) ker.push_back({m, n});
  auto len = [&](const std::array<long, 2>& v) {
    return std::abs(static_cast<double>(v[0]) * p1 + static_cast<double>(v[1]) * p2);
  };
  std::sort(ker.begin(), ker.end(), [&](const auto& a, const auto& b) { return len(a) < len(b); });
  std::array<long, 2> v1 = ker.front(), v2{0, 0};
  long index = 0;
  for (const auto& v : ker) {
    long det = std::labs(v1[0] * v[1] - v1[1] * v[0]);
    if (det != 0 && (index == 0 || det < index)) {
      index = det;
      v2 = v;
    }
  }
  cplx q1 = static_cast<double>(v1[0]) * p1 + static_cast<double>(v1[1]) * p2;
  cplx q2 = static_cast<double>(v2[0]) * p1 + static_cast<double>(v2[1]) * p2;
  if ((q2 / q1).imag() < 0) q2 = -q2;
  periods_ = {q1, q2};

  // u poles inside one branch cell and the branch orders there
  std::vector<cplx> reps;
  for (long m = 0; m < 6; ++m)
    for (long n = 0; n < 6; ++n) {
      cplx p = static_cast<double>(m) * p1 + static_cast<double>(n) * p2;
      bool known = false;
      for (cplx r : reps) {
        auto [a, b] = coords_in(p - r, q1, q2);
        if (std::abs(a - std::round(a)) < 1e-6 && std::abs(b - std::round(b)) < 1e-6) known = true;
      }
      if (!known) reps.push_back(p);
    }
  const double rho = 1e-4 * std::abs(p1);
  const cplx dir(0.6, 0.8);
  for (cplx p : reps) {
    auto w1 = branches(p + rho * dir);
    auto w2 = branches(p + 2.0 * rho * dir);
    for (int k = 0; k < 3; ++k) {
      double ratio = std::abs(w1[static_cast<std::size_t>(k)]) / std::abs(w2[static_cast<std::size_t>(k)]);
      int ord = static_cast<int>(std::lround(std::log2(ratio)));
      if (ord > 0) {
        auto [a, b] = coords_in(p, q1, q2);
        cplx pc = p - std::floor(a + 1e-9) * q1 - std::floor(b + 1e-9) * q2;
        cell_poles_[static_cast<std::size_t>(k)].push_back({pc, ord});
      }
    }
  }
}

std::array<cplx, 4> TripleSystem::coefficients(cplx u) const {
  cplx ab = std::conj(alpha_);
  return {1.0, 3.0 * (ab + 1.0) * u * u + 6.0 * u, -6.0 * u * u - 3.0 * (alpha_ + 1.0) * u, -u * u * u};
}

std::array<cplx, 3> TripleSystem::roots_at(cplx u) const {
  auto c = coefficients(u);
  auto rs = roots(CPoly(std::vector<cplx>{c[3], c[2], c[1], c[0]}));
  return {rs[0], rs[1], rs[2]};
}

Jet TripleSystem::branch_jet(cplx w, const Jet& u) const {
  cplx ab = std::conj(alpha_);
  cplx x = u.v;
  cplx p = 3.0 * (ab + 1.0) * x * x + 6.0 * x, dp = 6.0 * (ab + 1.0) * x + 6.0, ddp = 6.0 * (ab + 1.0);
  cplx q = -6.0 * x * x - 3.0 * (alpha_ + 1.0) * x, dq = -12.0 * x - 3.0 * (alpha_ + 1.0), ddq = -12.0;
  cplx dr = -3.0 * x * x, ddr = -6.0 * x;
  cplx fw = 3.0 * w * w + 2.0 * p * w + q;
  cplx fu = dp * w * w + dq * w + dr;
  cplx fww = 6.0 * w + 2.0 * p, fwu = 2.0 * dp * w + dq, fuu = ddp * w * w + ddq * w + ddr;
  cplx w1 = -fu * u.d1 / fw;
  cplx w2 = -(fww * w1 * w1 + 2.0 * fwu * w1 * u.d1 + fuu * u.d1 * u.d1 + fu * u.d2) / fw;
  return {w, w1, w2, false};
}

double TripleSystem::root_noise(cplx w, cplx u) const {
  auto c = coefficients(u);
  double aw = std::abs(w);
  double scale = aw * aw * aw + std::abs(c[1]) * aw * aw + std::abs(c[2]) * aw + std::abs(c[3]);
  cplx fw = 3.0 * w * w + 2.0 * c[1] * w + c[2];
  // u itself comes from wp and is only good to about 1e-13 relative
  cplx ab = std::conj(alpha_);
  cplx fu = (6.0 * (ab + 1.0) * u + 6.0) * w * w + (-12.0 * u - 3.0 * (alpha_ + 1.0)) * w - 3.0 * u * u;
  return (64 * kEps * scale + 1e-13 * (1 + std::abs(u)) * std::abs(fu)) / std::abs(fw);
}

TripleSystem::State TripleSystem::fresh_state(cplx z) const {
  State s{z, curve_.u_jet(z), {}};
  if (!s.u.pole) s.w = roots_at(s.u.v);
  return s;
}

bool TripleSystem::step_path(State& s, cplx to) const {
  double h = hmax_;
  int steps = 0;
  while (s.z != to) {
    if (++steps > 200000) return false;
    cplx rem = to - s.z;
    bool last = std::abs(rem) <= h;
    cplx dz = last ? rem : rem * (h / std::abs(rem));
    cplx z1 = last ? to : s.z + dz;
    Jet u1 = curve_.u_jet(z1);
    bool ok = !u1.pole && std::isfinite(std::abs(u1.v));
    std::array<cplx, 3> w1{};
    if (ok) {
      auto c = coefficients(u1.v);
      std::array<cplx, 3> pred{};
      for (std::size_t k = 0; k < 3; ++k) {
        Jet j = branch_jet(s.w[k], s.u);
        pred[k] = j.v + j.d1 * dz + 0.5 * j.d2 * dz * dz;
        cplx w = pred[k];
        bool conv = false;
        for (int it = 0; it < 12 && ok; ++it) {
          cplx f = ((w + c[1]) * w + c[2]) * w + c[3];
          cplx fw = (3.0 * w + 2.0 * c[1]) * w + c[2];
          if (fw == 0.0) {
            ok = false;
            break;
          }
          cplx step = f / fw;
          w -= step;
          double tol = 1e-15 * (1.0 + std::abs(w));
          // near clustered roots the step cannot drop below the rounding floor of f / f_w
          double aw = std::abs(w);
          double floor = 64 * kEps * (((aw + std::abs(c[1])) * aw + std::abs(c[2])) * aw + std::abs(c[3])) / std::abs(fw);
          if (std::abs(step) <= tol || (it >= 3 && std::abs(step) <= std::max(1e3 * tol, floor))) {
            conv = true;
            break;
          }
        }
        ok = ok && conv && std::isfinite(std::abs(w));
        w1[k] = w;
      }
      if (ok) {
        for (std::size_t k = 0; k < 3; ++k) {
          double near = std::min(std::abs(w1[k] - w1[(k + 1) % 3]), std::abs(w1[k] - w1[(k + 2) % 3]));
          if (!(std::abs(w1[k] - pred[k]) < 0.2 * near)) ok = false;
        }
      }
    }
    if (!ok) {
      h *= 0.5;
      if (h < 1e-12 * hmax_) return false;
      continue;
    }
    s = {z1, u1, w1};
    h = std::min(hmax_, 1.5 * h);
  }
  return true;
}

void TripleSystem::track(State& s, cplx to) const {
  State start = s;
  if (step_path(s, to)) return;
  cplx d = to - start.z;
  cplx mid = start.z + 0.5 * d;
  for (double off : {0.23, -0.29, 0.47, -0.53, 0.11, -0.13}) {
    s = start;
    cplx way = mid + cplx(0, off) * d;
    if (step_path(s, way) && step_path(s, to)) return;
  }
  s = start;
  throw TrackingError("branch continuation failed");
}

TripleSystem::State TripleSystem::state_at(cplx z, cplx* offset) const {
  cplx d = z - base_.z;
  cplx lat = 0.0;
  if (periods_[0] != 0.0) {
    auto [a, b] = coords_in(d, periods_[0], periods_[1]);
    lat = std::round(a) * periods_[0] + std::round(b) * periods_[1];
  }
  if (offset) *offset = lat;
  State s = base_;
  track(s, z - lat);
  return s;
}

std::array<cplx, 3> TripleSystem::branches(cplx z) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (curve_.u_jet(z).pole) return {cplx(inf, 0), cplx(inf, 0), cplx(inf, 0)};
  return state_at(z).w;
}

std::array<cplx, 3> triple_branches(const TripleSystem& sys, cplx z) { return sys.branches(z); }

TriplePtr make_triple(const exact::Coeff& alpha) {
  using exact::Poly;
  // 4u(u+1)(u+alpha)
  Poly p = Poly(4) * Poly::x() * Poly::linear_root(exact::Coeff(-1)) * Poly::linear_root(-alpha);
  return std::make_shared<TripleSystem>(alpha, CurveParam::from_model(exact::Model::elliptic(p)));
}

namespace {

class TripleCursor : public Cursor {
 public:
  TripleCursor(const TripleSystem& sys, int k, cplx z0) : sys_(sys), k_(static_cast<std::size_t>(k)) {
    state_ = sys.state_at(z0, &offset_);
    jet_ = jet_of(state_);
  }
  cplx position() const override { return state_.z + offset_; }
  const Jet& jet() const override { return jet_; }
  std::optional<Jet> probe(cplx z) override {
    pending_ = state_;
    try {
      sys_.track(pending_, z - offset_);
    } catch (const TrackingError&) {
      return std::nullopt;
    }
    pjet_ = jet_of(pending_);
    return pjet_;
  }
  void commit() override {
    state_ = pending_;
    jet_ = pjet_;
  }

 private:
  Jet jet_of(const TripleSystem::State& s) const {
    if (s.u.pole) return {0.0, 0.0, 0.0, true};
    return sys_.branch_jet(s.w[k_], s.u);
  }

  const TripleSystem& sys_;
  std::size_t k_;
  cplx offset_ = 0.0;
  TripleSystem::State state_, pending_;
  Jet jet_, pjet_;
};

}  // namespace

TripleBranch::TripleBranch(TriplePtr sys, int index) : sys_(std::move(sys)), k_(index) {
  if (index < 0 || index > 2) throw std::invalid_argument("branch index must be 0, 1 or 2");
}

Jet TripleBranch::eval(cplx z) const {
  if (sys_->u_curve().u_jet(z).pole) return {0.0, 0.0, 0.0, true};
  cplx off;
  auto s = sys_->state_at(z, &off);
  if (s.u.pole) return {0.0, 0.0, 0.0, true};
  return sys_->branch_jet(s.w[static_cast<std::size_t>(k_)], s.u);
}

std::unique_ptr<Cursor> TripleBranch::cursor(cplx z0) const { return std::make_unique<TripleCursor>(*sys_, k_, z0); }

std::vector<PoleSite> TripleBranch::poles_in(const Box& box) const {
  return periodic_sites(sys_->cell_poles(k_), sys_->periods(), box);
}

double TripleBranch::noise(cplx z, const Jet& j) const {
  Jet u = sys_->u_curve().u_jet(z);
  if (u.pole) return 64 * kEps * std::abs(j.v);
  return sys_->root_noise(j.v, u.v);
}

std::string TripleBranch::describe() const {
  return "branch " + std::to_string(k_) + " of the triple with alpha = " + sys_->alpha_exact().str();
}

}  // namespace nevlab::mero
