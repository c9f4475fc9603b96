#include "nevlab/exactfield/parse.hpp"

#include <cctype>
#include <string>

namespace nevlab::exact {
namespace {

class Parser {
 public:
  Parser(std::string_view s, const Model& m) : s_(s), model_(m) {}

  ExactFunc run() {
    ExactFunc e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  bool at_primary_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'u' || c == 'y' || c == 'e' ||
           c == 's' || c == 'i' || s_.substr(pos_, 3) == "√";
  }

  long integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    long v = std::stol(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  ExactFunc constant(const Coeff& c) { return ExactFunc::constant(model_, c); }

  ExactFunc expr() {
    ExactFunc acc = term();
    for (;;) {
      if (eat("+")) acc += term();
      else if (eat("-")) acc -= term();
      else return acc;
    }
  }

  ExactFunc term() {
    ExactFunc acc = unary();
    for (;;) {
      if (eat("*")) acc *= unary();
      else if (eat("/")) acc /= unary();
      else if (at_primary_start()) acc *= power();
      else return acc;
    }
  }

  ExactFunc unary() {
    if (eat("-")) return -unary();
    if (eat("+")) return unary();
    return power();
  }

  ExactFunc power() {
    ExactFunc base = primary();
    if (eat("^")) {
      long e;
      if (eat("(")) {
        e = integer();
        if (!eat(")")) fail("expected ')'");
      } else {
        e = integer();
      }
      if (e < -64 || e > 64) fail("exponent out of range");
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  ExactFunc primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat("(")) {
      ExactFunc e = expr();
      if (!eat(")")) fail("expected ')'");
      return e;
    }
    if (eat("√")) return constant(Coeff::sqrt(integer()));
    if (eat("sqrt(")) {
      long d = integer();
      if (!eat(")")) fail("expected ')'");
      return constant(Coeff::sqrt(d));
    }
    if (eat("exp(z)") || eat("e^z")) return ExactFunc::u(model_);
    if (eat("u")) return ExactFunc::u(model_);
    if (eat("y")) return ExactFunc::y(model_);
    if (eat("i")) return constant(Coeff::sqrt(-1));
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Coeff(mpq_class(std::string(s_.substr(start, pos_ - start)))));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  const Model& model_;
  std::size_t pos_ = 0;
};

Model parse_model(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text == "exp") return Model::exp();
  if (text.substr(0, 9) == "elliptic(" && text.back() == ')') {
    return Model::elliptic(parse_poly(text.substr(9, text.size() - 10)));
  }
  throw ParseError("unknown model '" + std::string(text) + "'");
}

}  // namespace

ExactFunc parse_expr(std::string_view text, const Model& model) { return Parser(text, model).run(); }

Poly parse_poly(std::string_view text) {
  ExactFunc f = parse_expr(text, Model::exp());
  if (f.den().degree() != 0) throw ParseError("not a polynomial: '" + std::string(text) + "'");
  return f.num_a();
}

ExactFunc parse_canonical(std::string_view text) {
  auto at = text.rfind(" @ ");
  if (at == std::string_view::npos) throw ParseError("missing model in canonical form");
  Model m = parse_model(text.substr(at + 3));
  std::string_view body = text.substr(0, at);
  if (body.substr(0, 2) != "((") throw ParseError("canonical form must start with '(('");
  auto semi = body.find(");(");
  auto close = body.find("))/(");
  if (semi == std::string_view::npos || close == std::string_view::npos || body.back() != ')')
    throw ParseError("malformed canonical form");
  Poly a = parse_poly(body.substr(2, semi - 2));
  Poly b = parse_poly(body.substr(semi + 3, close - semi - 3));
  Poly d = parse_poly(body.substr(close + 4, body.size() - close - 5));
  return ExactFunc(m, a, b, d);
}

}  // namespace nevlab::exact
