#include "nevlab/nevanlinna/functionals.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "nevlab/nevanlinna/parallel.hpp"
#include "nevlab/nevanlinna/profile.hpp"

namespace nevlab::nev {

namespace {

constexpr double kAtOrigin = 1e-12;

/// Jets of f at c + rho e^{i theta_k}, theta_k = 2 pi (k + shift) / n, walked with a cursor.
std::vector<Jet> trace_circle(const MeroFunc& f, double rho, int n, double shift) {
  std::vector<Jet> out(static_cast<std::size_t>(n));
  auto at = [&](double k) { return std::polar(rho, 2 * M_PI * (k + shift) / n); };
  auto cur = f.cursor(at(0));
  out[0] = cur->jet();
  for (int k = 1; k < n; ++k) {
    // walk in sub-steps along the arc when the cursor refuses the full step
    double pos = k - 1, step = 1.0;
    while (pos < k) {
      double nxt = std::min<double>(k, pos + step);
      if (auto j = cur->probe(at(nxt))) {
        cur->commit();
        pos = nxt;
        step = std::min(1.0, step * 2);
      } else {
        step *= 0.5;
        if (step < 1e-9) throw ContourError("cannot walk along the circle |z| = " + format_double(rho));
      }
    }
    out[static_cast<std::size_t>(k)] = cur->jet();
  }
  return out;
}

double sharp_sq_sum(const std::vector<Jet>& js) {
  double s = 0.0;
  for (const auto& j : js) {
    double v = mero::spherical_derivative(j);
    s += v * v;
  }
  return s;
}

/// S(rho) = int_0^{2 pi} f#(rho e^{i theta})^2 d theta by doubling trapezoid.
double sharp_circle_integral(const MeroFunc& f, double rho, const TOptions& opt) {
  int n = 64;
  while (n < (1 << opt.max_angular_log2) && 2 * M_PI * rho / n > 0.05) n *= 2;
  double sum = sharp_sq_sum(trace_circle(f, rho, n, 0.0));
  double prev = 2 * M_PI * sum / n;
  int agree = 0;
  while (n < (1 << opt.max_angular_log2)) {
    sum += sharp_sq_sum(trace_circle(f, rho, n, 0.5));
    n *= 2;
    double cur = 2 * M_PI * sum / n;
    bool ok = std::abs(cur - prev) <= opt.angular_tol * std::abs(cur) + 1e-300;
    prev = cur;
    if (ok && ++agree >= 2) break;
    if (!ok) agree = 0;
  }
  return prev;
}

/// Constant term that turns T0 into the spherical form m + N.
double t_constant(const MeroFunc& f, double rmin) {
  double eps = std::min(0.1, rmin / 4);
  auto poles = f.poles_in(Box::square(0.0, eps));
  int p = 0;
  double dist = eps;
  for (const auto& s : poles) {
    if (std::abs(s.z) < kAtOrigin)
      p = s.order;
    else
      dist = std::min(dist, std::abs(s.z));
  }
  if (p == 0) {
    Jet j = f.eval(0.0);
    return 0.5 * std::log1p(std::norm(j.v));
  }
  // leading Laurent coefficient c_{-p} = mean of z^p f(z) on a small circle
  double rho = dist / 4;
  const int n = 128;
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) {
    cplx z = std::polar(rho, 2 * M_PI * (k + 0.5) / n);
    acc += std::pow(z, p) * f.eval(z).v;
  }
  return std::log(std::abs(acc / static_cast<double>(n)));
}

}  // namespace

std::vector<double> geometric_grid(double rmin, double rmax, int count) {
  if (!(rmin > 0) || !(rmax > rmin) || count < 2) throw std::invalid_argument("grid needs 0 < rmin < rmax and count >= 2");
  std::vector<double> g(static_cast<std::size_t>(count));
  double q = std::log(rmax / rmin) / (count - 1);
  for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = rmin * std::exp(q * k);
  g.front() = rmin;
  g.back() = rmax;
  return g;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty r grid");
  if (!(grid.front() > 0)) throw std::invalid_argument("r grid must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("r grid must be strictly increasing");
}

unsigned worker_threads() {
  if (const char* s = std::getenv("NEVLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return static_cast<unsigned>(v);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

double integrated_count(const std::vector<APoint>& pts, double r, bool distinct) {
  double s = 0.0;
  for (const auto& p : pts) {
    double a = std::abs(p.z);
    if (a > r) continue;
    double w = distinct ? 1.0 : static_cast<double>(p.mult);
    s += w * (a < kAtOrigin ? std::log(r) : std::log(r / a));
  }
  return s;
}

CountingSeries counting_from(const APointList& pts, const std::vector<double>& grid) {
  check_grid(grid);
  if (grid.back() > pts.r) throw std::invalid_argument("a-point list does not cover the grid");
  CountingSeries c;
  for (double r : grid) {
    c.N.push_back(integrated_count(pts.points, r, false));
    c.Nbar.push_back(integrated_count(pts.points, r, true));
  }
  return c;
}

CountingSeries counting_N(const MeroFunc& f, const ExtValue& a, const std::vector<double>& grid,
                          const LocateOptions& opt) {
  check_grid(grid);
  return counting_from(locate_apoints(f, a, grid.back(), opt), grid);
}

Proximity proximity_m(const MeroFunc& f, const ExtValue& a, double r, double tol) {
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  // f - a from the exact difference where available: f -> a along a direction loses all digits otherwise
  mero::MeroPtr shifted = !a.inf && a.exact ? f.minus(*a.exact) : nullptr;
  auto integrand = [&](double th) {
    cplx z = std::polar(r, th);
    if (shifted) {
      Jet j = shifted->eval(z);
      if (j.pole) return 0.0;
      double d = std::abs(j.v);
      return d == 0.0 ? 745.0 : std::max(0.0, -std::log(d));
    }
    Jet j = f.eval(z);
    if (a.inf) return j.pole ? 745.0 : std::max(0.0, std::log(std::abs(j.v)));
    if (j.pole) return 0.0;
    double d = std::abs(j.v - a.a);
    return d == 0.0 ? 745.0 : std::max(0.0, -std::log(d));
  };
  int pieces = std::max(8, static_cast<int>(std::ceil(2 * M_PI * r / 0.5)));
  double h = 2 * M_PI / pieces;
  Proximity out;
  for (int k = 0; k < pieces; ++k) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, k * h, (k + 1) * h, 12,
                                                                           1e-10, &err);
    out.value += v;
    out.error += err;
  }
  out.value /= 2 * M_PI;
  out.error /= 2 * M_PI;
  if (!(out.error <= 10 * tol)) throw std::runtime_error("proximity quadrature did not converge");
  return out;
}

std::vector<double> characteristic_T(const MeroFunc& f, const std::vector<double>& grid, const TOptions& opt) {
  check_grid(grid);
  if (f.is_constant()) return std::vector<double>(grid.size(), 0.0);
  using GL = boost::math::quadrature::gauss<double, 8>;
  struct Node {
    double rho, w;
  };
  std::vector<Node> nodes;
  double lo = 0.0;
  for (double hi : grid) {
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / opt.panel_width)));
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      double c = lo + (p + 0.5) * h, half = 0.5 * h;
      const auto& x = GL::abscissa();
      const auto& w = GL::weights();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
          nodes.push_back({c, w[i] * half});
        } else {
          nodes.push_back({c - x[i] * half, w[i] * half});
          nodes.push_back({c + x[i] * half, w[i] * half});
        }
      }
    }
    lo = hi;
  }
  std::vector<double> S(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { S[i] = sharp_circle_integral(f, nodes[i].rho, opt); });

  double c0 = t_constant(f, grid.front());
  std::vector<double> T;
  for (double r : grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].rho < r) acc += nodes[i].w * nodes[i].rho * std::log(r / nodes[i].rho) * S[i];
    T.push_back(acc / M_PI + c0);
  }
  return T;
}

std::vector<double> simple_common_from(const APointList& fa, const APointList& ga, const std::vector<double>& grid,
                                       double match_tol) {
  check_grid(grid);
  double rcap = std::min(fa.r, ga.r);
  if (grid.back() > rcap) throw std::invalid_argument("a-point lists do not cover the grid");
  auto nearest = [](const std::vector<APoint>& pts, cplx z) -> const APoint* {
    const APoint* best = nullptr;
    for (const auto& p : pts)
      if (!best || std::abs(p.z - z) < std::abs(best->z - z)) best = &p;
    return best;
  };
  auto check_all = [&](const APointList& from, const APointList& to) {
    for (const auto& p : from.points) {
      if (std::abs(p.z) >= rcap * (1 - 1e-9)) continue;
      const APoint* q = nearest(to.points, p.z);
      if (!q || std::abs(q->z - p.z) > match_tol * std::max(1.0, std::abs(p.z)))
        throw LocateError("a-point without a partner in the other function");
    }
  };
  check_all(fa, ga);
  check_all(ga, fa);
  std::vector<APoint> common;
  for (const auto& p : fa.points) {
    if (p.mult != 1) continue;
    const APoint* q = nearest(ga.points, p.z);
    if (q && q->mult == 1 && std::abs(q->z - p.z) <= match_tol * std::max(1.0, std::abs(p.z))) common.push_back(p);
  }
  std::vector<double> out;
  for (double r : grid) out.push_back(integrated_count(common, r, true));
  return out;
}

std::vector<double> simultaneous_simple_Ns(const MeroFunc& f, const MeroFunc& g, const ExtValue& a,
                                           const std::vector<double>& grid, const LocateOptions& opt) {
  check_grid(grid);
  auto fa = locate_apoints(f, a, grid.back(), opt);
  auto ga = locate_apoints(g, a, grid.back(), opt);
  return simple_common_from(fa, ga, grid);
}

double top_half_min_ratio(const std::vector<double>& num, const std::vector<double>& den, double empty_value) {
  if (num.size() != den.size() || num.empty()) throw std::invalid_argument("series length mismatch");
  bool all_zero = true;
  for (double d : den)
    if (d > 0) all_zero = false;
  if (all_zero) return empty_value;
  double best = INFINITY;
  for (std::size_t i = den.size() / 2; i < den.size(); ++i)
    if (den[i] > 0) best = std::min(best, num[i] / den[i]);
  return std::isfinite(best) ? best : empty_value;
}

double deficiency_estimate(const MeroFunc& f, const ExtValue& a, const std::vector<double>& grid) {
  check_grid(grid);
  auto T = characteristic_T(f, grid);
  std::vector<double> m(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { m[i] = proximity_m(f, a, grid[i]).value; });
  double d = top_half_min_ratio(m, T, 0.0);
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace nevlab::nev
