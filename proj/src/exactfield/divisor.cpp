#include "nevlab/exactfield/divisor.hpp"

#include <sstream>
#include <stdexcept>

namespace nevlab::exact {

using Kind = PlaceSet::Kind;

Poly inverse_mod(const Poly& a, const Poly& m) {
  // Extended Euclid tracking s with s*a == r (mod m).
  Poly r0 = m, r1 = Poly::rem(a, m);
  Poly s0, s1(1);
  while (!r1.is_zero()) {
    auto [q, r] = Poly::divmod(r0, r1);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw std::domain_error("polynomial not invertible modulo locus");
  return Poly::rem(s0.scaled(r0.lead().inverse()), m);
}

int PlaceSet::count() const {
  if (kind == Kind::AtInfinity) return 1;
  return fibre * std::max(0, locus.degree());
}

std::string PlaceSet::str() const {
  switch (kind) {
    case Kind::AtInfinity: return "u=inf";
    case Kind::Branch: return locus.str() + " [branch]";
    case Kind::Sheet: return locus.str() + " [y=" + sheet.str() + "]";
    case Kind::Plain: break;
  }
  return locus.str();
}

namespace {

PlaceSet make(Kind k, Poly locus, int fibre = 1, Poly sheet = Poly()) {
  PlaceSet p;
  p.kind = k;
  p.locus = locus.monic();
  p.fibre = fibre;
  if (k == Kind::Sheet) p.sheet = Poly::rem(sheet, p.locus);
  return p;
}

PlaceSet restrict_to(const PlaceSet& s, const Poly& h) {
  return make(s.kind, h, s.fibre, s.sheet);
}

std::optional<PlaceSet> intersect(const PlaceSet& a, const PlaceSet& b) {
  if (a.kind == Kind::AtInfinity || b.kind == Kind::AtInfinity) {
    if (a.kind == b.kind) return a;
    return std::nullopt;
  }
  if ((a.kind == Kind::Branch) != (b.kind == Kind::Branch)) return std::nullopt;
  Poly h = Poly::gcd(a.locus, b.locus);
  if (h.degree() <= 0) return std::nullopt;
  if (a.kind == Kind::Branch) return make(Kind::Branch, h);
  if (a.kind == Kind::Plain && b.kind == Kind::Plain) return make(Kind::Plain, h, a.fibre);
  if (a.kind == Kind::Plain) return restrict_to(b, h);
  if (b.kind == Kind::Plain) return restrict_to(a, h);
  Poly h2 = Poly::gcd(h, a.sheet - b.sheet);
  if (h2.degree() <= 0) return std::nullopt;
  return restrict_to(a, h2);
}

/// a minus b, where b is a subset of a.
std::vector<PlaceSet> subtract(const PlaceSet& a, const PlaceSet& b) {
  std::vector<PlaceSet> out;
  if (a.kind == Kind::AtInfinity) return out;
  Poly h = b.locus;
  Poly rest = Poly::exact_div(a.locus, h);
  if (a.kind == Kind::Plain && b.kind == Kind::Sheet) {
    // a point over h keeps its other sheet
    if (rest.degree() > 0) out.push_back(make(Kind::Plain, rest, a.fibre));
    out.push_back(make(Kind::Sheet, h, 1, -b.sheet));
    return out;
  }
  if (rest.degree() > 0) out.push_back(restrict_to(a, rest));
  return out;
}

struct Overlay {
  PlaceSet places;
  int o1 = 0;
  int o2 = 0;
};

void place_one(const PlaceSet& s, int o1, int o2, std::vector<PlaceSet>& rest, int order,
               std::vector<Overlay>& out) {
  for (std::size_t i = 0; i < rest.size(); ++i) {
    auto inter = intersect(s, rest[i]);
    if (!inter) continue;
    out.push_back({*inter, o1, o2 + order});
    std::vector<PlaceSet> rrem = subtract(rest[i], *inter);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    rest.insert(rest.end(), rrem.begin(), rrem.end());
    for (const auto& part : subtract(s, *inter)) place_one(part, o1, o2, rest, order, out);
    return;
  }
  out.push_back({s, o1, o2});
}

/// Common refinement of two divisors given as disjoint term lists.
std::vector<Overlay> overlay(const std::vector<DivisorTerm>& x, const std::vector<DivisorTerm>& y) {
  std::vector<Overlay> pieces;
  for (const auto& t : x) pieces.push_back({t.places, t.order, 0});
  for (const auto& t : y) {
    std::vector<PlaceSet> rest{t.places};
    std::vector<Overlay> next;
    for (const auto& p : pieces) place_one(p.places, p.o1, p.o2, rest, t.order, next);
    for (const auto& r : rest) next.push_back({r, 0, t.order});
    pieces = std::move(next);
  }
  return pieces;
}

std::vector<DivisorTerm> add(const std::vector<DivisorTerm>& x, const std::vector<DivisorTerm>& y,
                             int sign_y) {
  std::vector<DivisorTerm> out;
  for (auto& p : overlay(x, y)) {
    int o = p.o1 + sign_y * p.o2;
    if (o != 0) out.push_back({p.places, o});
  }
  return out;
}

/// Divisor of a polynomial Q(u) regarded as a function on the domain.
std::vector<DivisorTerm> poly_divisor(const Poly& q, const Model& m) {
  std::vector<DivisorTerm> out;
  if (q.is_zero()) throw std::domain_error("divisor of zero");
  Poly body = q;
  if (!m.is_elliptic()) {
    while (body.degree() > 0 && body.coeff(0).is_zero()) body = Poly::exact_div(body, Poly::x());
    for (const auto& [s, k] : body.squarefree()) out.push_back({make(Kind::Plain, s), k});
    return out;
  }
  const Poly& p = m.curve();
  for (const auto& [s, k] : body.squarefree()) {
    Poly sb = Poly::gcd(s, p);
    Poly sn = Poly::exact_div(s, sb);
    if (sn.degree() > 0) out.push_back({make(Kind::Plain, sn, 2), k});
    if (sb.degree() > 0) out.push_back({make(Kind::Branch, sb), 2 * k});
  }
  if (q.degree() > 0) out.push_back({make(Kind::AtInfinity, Poly(1)), -2 * q.degree()});
  return out;
}

/// Divisor of A + B y with gcd(A, B) = 1 and B != 0.
std::vector<DivisorTerm> coprime_divisor(const Poly& a, const Poly& b, const Model& m) {
  std::vector<DivisorTerm> out;
  const Poly& p = m.curve();
  Poly n = a * a - b * b * p;
  for (const auto& [s, k] : n.squarefree()) {
    Poly sb = Poly::gcd(s, p);
    Poly sn = Poly::exact_div(s, sb);
    if (sn.degree() > 0) {
      Poly y = -(Poly::rem(a, sn) * inverse_mod(b, sn));
      out.push_back({make(Kind::Sheet, sn, 1, y), k});
    }
    if (sb.degree() > 0) out.push_back({make(Kind::Branch, sb), k});
  }
  // u has a double pole at infinity and y a pole of order deg P; the parities differ
  int da = a.is_zero() ? -1 : 2 * a.degree();
  int db = 2 * b.degree() + p.degree();
  out.push_back({make(Kind::AtInfinity, Poly(1)), -std::max(da, db)});
  return out;
}

}  // namespace

std::vector<DivisorTerm> Divisor::zeros() const {
  std::vector<DivisorTerm> out;
  for (const auto& t : terms)
    if (t.order > 0) out.push_back(t);
  return out;
}

std::vector<DivisorTerm> Divisor::poles() const {
  std::vector<DivisorTerm> out;
  for (const auto& t : terms)
    if (t.order < 0) out.push_back({t.places, -t.order});
  return out;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& t : terms) d += t.order * t.places.count();
  return d;
}

Divisor divisor(const ExactFunc& f) {
  if (f.is_zero()) throw std::domain_error("divisor of the zero function");
  const Model& m = f.model();
  if (m.is_elliptic() && m.curve().degree() % 2 == 0)
    throw std::invalid_argument("divisor computation needs a curve polynomial of odd degree");
  std::vector<DivisorTerm> num;
  if (f.num_b().is_zero()) {
    num = poly_divisor(f.num_a(), m);
  } else {
    Poly g = Poly::gcd(f.num_a(), f.num_b());
    Poly a1 = Poly::exact_div(f.num_a(), g);
    Poly b1 = Poly::exact_div(f.num_b(), g);
    num = add(poly_divisor(g, m), coprime_divisor(a1, b1, m), 1);
  }
  Divisor d;
  d.terms = add(num, poly_divisor(f.den(), m), -1);
  return d;
}

std::vector<DivisorTerm> value_points(const ExactFunc& f, const ExactValue& a) {
  if (a.infinite) return divisor(f).poles();
  ExactFunc h = f - a.value;
  if (h.is_zero()) throw std::domain_error("function is identically equal to " + a.str());
  return divisor(h).zeros();
}

std::map<std::pair<int, int>, int> MultPattern::histogram() const {
  std::map<std::pair<int, int>, int> h;
  for (const auto& p : points) h[{p.mult_f, p.mult_g}] += p.places.count();
  return h;
}

std::string MultPattern::str() const {
  std::ostringstream os;
  os << "value " << value.str() << ": " << (attained ? (shared ? "shared" : "not shared") : "not attained");
  if (attained) os << (cm ? ", CM" : ", IM only");
  for (const auto& p : split_rational(points))
    os << "\n  " << p.places.str() << "  mult_f=" << p.mult_f << " mult_g=" << p.mult_g;
  return os.str();
}

MultPattern sharing_report(const ExactFunc& f, const ExactFunc& g, const ExactValue& a) {
  if (f == g) throw std::invalid_argument("sharing_report needs distinct functions");
  MultPattern mp;
  mp.value = a;
  for (auto& o : overlay(value_points(f, a), value_points(g, a))) mp.points.push_back({o.places, o.o1, o.o2});
  mp.attained = !mp.points.empty();
  mp.shared = true;
  mp.cm = true;
  for (const auto& p : mp.points) {
    if (p.mult_f == 0 || p.mult_g == 0) mp.shared = false;
    if (p.mult_f != p.mult_g) mp.cm = false;
  }
  mp.cm = mp.cm && mp.shared;
  return mp;
}

std::vector<SharedPoint> split_rational(const std::vector<SharedPoint>& pts) {
  std::vector<SharedPoint> out;
  for (const auto& p : pts) {
    if (p.places.kind == Kind::AtInfinity || !p.places.locus.is_rational()) {
      out.push_back(p);
      continue;
    }
    Poly rest = p.places.locus;
    for (const auto& [r, k] : rest.rational_roots()) {
      (void)k;
      Poly lin = Poly::linear_root(Coeff(r));
      rest = Poly::exact_div(rest, lin);
      out.push_back({restrict_to(p.places, lin), p.mult_f, p.mult_g});
    }
    if (rest.degree() > 0) out.push_back({restrict_to(p.places, rest), p.mult_f, p.mult_g});
  }
  return out;
}

}  // namespace nevlab::exact
