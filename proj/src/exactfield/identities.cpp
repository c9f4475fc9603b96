#include "nevlab/exactfield/identities.hpp"

#include <map>
#include <stdexcept>

namespace nevlab::exact {

void require_distinct(const std::vector<Coeff>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j]) throw std::invalid_argument("shared values must be distinct");
}

namespace {

void require_distinct_functions(const ExactFunc& f, const ExactFunc& g) {
  if (f == g) throw std::invalid_argument("f and g must be distinct");
}

ExactFunc product_minus(const ExactFunc& f, const std::vector<Coeff>& values) {
  ExactFunc p = ExactFunc::constant(f.model(), Coeff(1));
  for (const auto& a : values) p *= f - a;
  return p;
}

ExactFunc safe_div(const ExactFunc& n, const ExactFunc& d, const char* what) {
  if (d.is_zero()) throw std::domain_error(std::string("division by identically zero ") + what);
  return n / d;
}

/// f''/f' - s*f'/f - sum f'/(f - a)
ExactFunc log_combo(const ExactFunc& f, int s, const std::vector<Coeff>& values) {
  ExactFunc d1 = f.derive();
  ExactFunc r = safe_div(d1.derive(), d1, "f'");
  if (s != 0) r -= safe_div(d1, f, "f") * Coeff(s);
  for (const auto& a : values) r -= safe_div(d1, f - a, "f-a");
  return r;
}

const std::map<std::string, AuxPreset>& preset_names() {
  static const std::map<std::string, AuxPreset> names{
      {"phi40", AuxPreset::Phi40}, {"phi31", AuxPreset::Phi31}, {"phi22", AuxPreset::Phi22},
      {"chi", AuxPreset::Chi},     {"eta", AuxPreset::Eta},     {"theta", AuxPreset::Theta},
      {"varphi", AuxPreset::Varphi}};
  return names;
}

void require_arity(const std::vector<Coeff>& values, std::size_t n, const char* preset) {
  if (values.size() != n)
    throw std::invalid_argument(std::string(preset) + " expects " + std::to_string(n) + " values");
  require_distinct(values);
}

}  // namespace

ExactFunc mues_psi(const ExactFunc& f, const ExactFunc& g, const std::vector<Coeff>& finite_values,
                   bool infinity_shared) {
  if (finite_values.size() != (infinity_shared ? 3U : 4U))
    throw std::invalid_argument("mues_psi needs three finite values with infinity, or four finite values");
  require_distinct(finite_values);
  require_distinct_functions(f, g);
  ExactFunc diff = f - g;
  ExactFunc num = f.derive() * g.derive() * diff * diff;
  return safe_div(num, product_minus(f, finite_values) * product_minus(g, finite_values), "product");
}

PhiTriple phi_pair(const ExactFunc& f, const ExactFunc& g, const std::vector<Coeff>& values) {
  if (values.size() != 3) throw std::invalid_argument("phi_pair needs three finite values");
  require_distinct(values);
  require_distinct_functions(f, g);
  ExactFunc diff = f - g;
  PhiTriple t;
  t.phi_f = safe_div(diff * f.derive(), product_minus(f, values), "product");
  t.phi_g = safe_div(diff * g.derive(), product_minus(g, values), "product");
  t.phi = safe_div(t.phi_f, t.phi_g, "Phi_g");
  return t;
}

std::optional<AuxPreset> aux_preset_from_name(const std::string& name) {
  auto it = preset_names().find(name);
  if (it == preset_names().end()) return std::nullopt;
  return it->second;
}

std::string aux_preset_name(AuxPreset p) {
  for (const auto& [n, q] : preset_names())
    if (q == p) return n;
  return "?";
}

std::string AuxVerdict::str() const {
  std::string s;
  switch (kind) {
    case Kind::Zero: s = "identically 0"; break;
    case Kind::Constant: s = "constant " + value.constant_value().str(); break;
    case Kind::NonConstant: s = "non-constant"; break;
  }
  if (psi_identity) s += *psi_identity ? "; phi^2 = (a1+a2)^2 Psi holds" : "; phi^2 = (a1+a2)^2 Psi fails";
  return s;
}

AuxVerdict aux_identity(AuxPreset preset, const ExactFunc& f, const ExactFunc& g,
                        const std::vector<Coeff>& values, int index) {
  if (!(f.model() == g.model())) throw std::invalid_argument("f and g live in different models");
  AuxVerdict v;
  switch (preset) {
    case AuxPreset::Phi40:
      require_arity(values, 0, "phi40");
      v.value = log_combo(f, 0, {}) - log_combo(g, 0, {});
      break;
    case AuxPreset::Phi31:
      require_arity(values, 3, "phi31");
      v.value = safe_div(f.derive(), product_minus(f, values), "product") -
                safe_div(g.derive(), product_minus(g, values), "product");
      break;
    case AuxPreset::Phi22: {
      require_arity(values, 2, "phi22");
      v.value = log_combo(f, -2, values) - log_combo(g, -2, values);
      Coeff s = values[0] + values[1];
      ExactFunc psi = mues_psi(f, g, {Coeff(0), values[0], values[1]}, true);
      v.psi_identity = v.value * v.value == psi * (s * s);
      break;
    }
    case AuxPreset::Chi:
      require_arity(values, 2, "chi");
      v.value = log_combo(f, 2, values) - log_combo(g, 2, values);
      break;
    case AuxPreset::Eta:
    case AuxPreset::Theta: {
      require_arity(values, 2, preset == AuxPreset::Eta ? "eta" : "theta");
      if (index != 1 && index != 2) throw std::invalid_argument("eta/theta index must be 1 or 2");
      const Coeff& an = values[static_cast<std::size_t>(index - 1)];
      const Coeff& am = values[static_cast<std::size_t>(2 - index)];
      ExactFunc chi = log_combo(f, 2, values) - log_combo(g, 2, values);
      const ExactFunc& p = preset == AuxPreset::Eta ? f : g;
      const ExactFunc& q = preset == AuxPreset::Eta ? g : f;
      ExactFunc corr = safe_div(p.derive() * (f - g), p * (q - an) * (p - am), "denominator");
      v.value = chi - corr * (values[0] + values[1]);
      break;
    }
    case AuxPreset::Varphi: {
      require_arity(values, 0, "varphi");
      Coeff i = Coeff::sqrt(-1);
      Coeff k(index);
      ExactFunc fd = f.derive(), gd = g.derive();
      ExactFunc inner = safe_div(fd, f - i, "f-i") - safe_div(fd, f + i, "f+i") -
                        safe_div(gd, g - i, "g-i") * k + safe_div(gd, g + i, "g+i") * k;
      v.value = inner * (i * Coeff::fraction(1, 2));
      break;
    }
  }
  if (v.value.is_zero()) v.kind = AuxVerdict::Kind::Zero;
  else if (v.value.is_constant()) v.kind = AuxVerdict::Kind::Constant;
  else v.kind = AuxVerdict::Kind::NonConstant;
  return v;
}

}  // namespace nevlab::exact
