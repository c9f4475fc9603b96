#include "nevlab/meroeval/numpoly.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace nevlab::mero {

CPoly::CPoly(const exact::Poly& p) {
  c.reserve(p.coeffs().size());
  for (const auto& k : p.coeffs()) c.push_back(k.to_complex());
}

cplx CPoly::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void CPoly::eval2(cplx z, cplx& v, cplx& d1, cplx& d2) const {
  v = d1 = d2 = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + v;
    v = v * z + *it;
  }
}

double CPoly::abs_scale(double r) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

std::vector<cplx> roots(const CPoly& p) {
  int n = p.degree();
  if (n < 1) return {};
  if (p.c.back() == 0.0) throw std::invalid_argument("leading coefficient vanishes");
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[static_cast<std::size_t>(i)] / p.c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) {
    cplx z = es.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      cplx v, d1, d2;
      p.eval2(z, v, d1, d2);
      if (d1 == 0.0) break;
      cplx step = v / d1;
      if (!(std::abs(step) < 1e-3 * (1.0 + std::abs(z)))) break;
      z -= step;
    }
    out.push_back(z);
  }
  return out;
}

CFunc::CFunc(const exact::ExactFunc& f)
    : a(f.num_a()), b(f.num_b()), d(f.den()), has_y(!f.num_b().is_zero()) {}

cplx CFunc::operator()(cplx u, cplx y) const {
  cplx num = a(u);
  if (has_y) num += b(u) * y;
  return num / d(u);
}

}  // namespace nevlab::mero
