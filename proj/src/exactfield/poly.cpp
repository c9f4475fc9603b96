#include "nevlab/exactfield/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace nevlab::exact {

Poly::Poly(Coeff c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly::Poly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Coeff>{Coeff(0), Coeff(1)}); }

Poly Poly::monomial(Coeff c, int deg) {
  std::vector<Coeff> v(static_cast<std::size_t>(deg) + 1, Coeff(0));
  v.back() = std::move(c);
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Coeff& r) { return Poly(std::vector<Coeff>{-r, Coeff(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Coeff Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return Coeff(0);
  return c_[static_cast<std::size_t>(i)];
}

long Poly::radicand() const {
  for (const auto& c : c_)
    if (!c.is_rational()) return c.radicand();
  return 1;
}

bool Poly::is_rational() const {
  return std::all_of(c_.begin(), c_.end(), [](const Coeff& c) { return c.is_rational(); });
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Coeff> v;
  v.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Coeff(static_cast<long>(i)));
  return Poly(std::move(v));
}

Poly Poly::conj() const {
  std::vector<Coeff> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.conj());
  return Poly(std::move(v));
}

Coeff Poly::eval(const Coeff& x) const {
  Coeff acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Poly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Poly(*it);
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Coeff> v(a.c_.size() + b.c_.size() - 1, Coeff(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::operator-() const { return scaled(Coeff(-1)); }

Poly Poly::scaled(const Coeff& s) const {
  if (s.is_zero()) return {};
  std::vector<Coeff> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c * s);
  return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Coeff> r = a.c_;
  std::vector<Coeff> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Coeff(0));
  Coeff inv = b.lead().inverse();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const Coeff& top = r[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    Coeff t = top * inv;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= t * b.c_[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(k - db)] = t;
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = rem(x, y);
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<Poly, int>> Poly::squarefree() const {
  std::vector<std::pair<Poly, int>> out;
  if (degree() <= 0) return out;
  Poly f = monic();
  Poly df = f.derivative();
  Poly a0 = gcd(f, df);
  Poly b = exact_div(f, a0);
  Poly c = exact_div(df, a0);
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    Poly bn = exact_div(b, a);
    c = exact_div(d, a);
    b = bn;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Poly Poly::radical() const {
  Poly r(1);
  for (const auto& [s, k] : squarefree()) r *= s;
  return r;
}

namespace {

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::vector<mpz_class> small, large;
  mpz_class m = abs(n);
  if (m > mpz_class("1000000000000")) return {};
  for (mpz_class p = 1; p * p <= m; ++p) {
    if (m % p == 0) {
      small.push_back(p);
      if (p * p != m) large.push_back(m / p);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<std::pair<mpq_class, int>> Poly::rational_roots() const {
  std::vector<std::pair<mpq_class, int>> roots;
  if (!is_rational() || degree() <= 0) return roots;
  for (const auto& [s, k] : squarefree()) {
    Poly rest = s;
    if (rest.coeff(0).is_zero()) {
      roots.emplace_back(mpq_class(0), k);
      rest = exact_div(rest, x());
    }
    if (rest.degree() <= 0) continue;
    mpz_class den = 1;
    for (const auto& c : rest.coeffs()) {
      mpz_class q = c.rational_part().get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
    }
    mpz_class a0 = mpq_class(rest.coeff(0).rational_part() * den).get_num();
    mpz_class an = mpq_class(rest.lead().rational_part() * den).get_num();
    for (const auto& p : positive_divisors(a0)) {
      for (const auto& q : positive_divisors(an)) {
        for (int sign : {1, -1}) {
          mpq_class cand(p * sign, q);
          cand.canonicalize();
          if (cand.get_den() != q) continue;
          if (rest.eval(Coeff(cand)).is_zero()) {
            roots.emplace_back(cand, k);
            rest = exact_div(rest, linear_root(Coeff(cand)));
          }
          if (rest.degree() <= 0) break;
        }
        if (rest.degree() <= 0) break;
      }
      if (rest.degree() <= 0) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return roots;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const Coeff& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string cs;
    bool negative = false;
    if (c.is_rational()) {
      mpq_class q = c.rational_part();
      negative = sgn(q) < 0;
      if (negative) q = -q;
      if (!(q == 1 && k > 0)) cs = rational_str(q);
    } else {
      cs = "(" + c.str() + ")";
    }
    if (negative) s += "-";
    else if (!s.empty()) s += "+";
    s += cs;
    if (!cs.empty() && !mono.empty()) s += "*";
    s += mono;
  }
  return s;
}

}  // namespace nevlab::exact
