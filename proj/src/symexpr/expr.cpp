#include "rpsym/expr.hpp"

#include <vector>

#include "rpsym/error.hpp"

namespace rpsym {

namespace {

std::pair<Polynomial, Polynomial> canonicalize(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("division by zero");
  const auto coords = unify_coordinates(num, den);
  num = num.lifted_to(coords);
  den = den.lifted_to(coords);
  if (num.is_zero()) return {Polynomial(), Polynomial(Rational(1))};
  if (!den.is_constant()) {
    const Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_divide(num, g);
      den = exact_divide(den, g);
    }
  }
  const Rational f = den.normalizing_factor();
  num = num.scaled(f);
  den = den.scaled(f);
  if (num.is_constant() && den.is_constant()) {
    return {num.stripped_if_constant(), den.stripped_if_constant()};
  }
  return {std::move(num), std::move(den)};
}

}  // namespace

Expr::Expr(const Rational& value) : num_(value) {}

Expr::Expr(const Polynomial& num, const Polynomial& den) {
  auto [n, d] = canonicalize(num, den);
  num_ = std::move(n);
  den_ = std::move(d);
}

Expr Expr::variable(const Coordinates& coords, std::string_view name) {
  const auto idx = coordinate_index(coords, name);
  if (!idx) throw DomainError("unknown coordinate '" + std::string(name) + "'");
  return Expr(Canonical{}, Polynomial::variable(coords, *idx), Polynomial(Rational(1)));
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw DomainError("expression is not constant");
  return num_.constant_value() / den_.constant_value();
}

Expr& Expr::operator+=(const Expr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    *this = Expr(num_ + o.num_, den_);
  } else {
    *this = Expr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Expr& o) {
  if (is_zero() || o.is_zero()) return *this = Expr();
  *this = Expr(num_ * o.num_, den_ * o.den_);
  return *this;
}

Expr& Expr::operator/=(const Expr& o) {
  if (o.is_zero()) throw DomainError("division by zero expression");
  *this = Expr(num_ * o.den_, den_ * o.num_);
  return *this;
}

Expr Expr::operator-() const { return Expr(Canonical{}, -num_, den_); }

Expr Expr::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DomainError("negative power of zero");
    return Expr(den_, num_).pow(-exponent);
  }
  // num and den stay coprime under powers, so no gcd is needed.
  const auto e = static_cast<std::uint64_t>(exponent);
  if (e == 0) return Expr(1);
  Polynomial n = num_.pow(e);
  Polynomial d = den_.pow(e);
  return Expr(Canonical{}, std::move(n), std::move(d));
}

Expr arith(const Expr& a, const Expr& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw DomainError("unknown arithmetic operation");
}

Expr differentiate(const Expr& e, std::size_t coord_index) {
  if (e.is_constant()) return Expr();
  const Polynomial& n = e.numerator();
  const Polynomial& d = e.denominator();
  const Polynomial dn = n.derivative(coord_index);
  const Polynomial dd = d.derivative(coord_index);
  if (dd.is_zero()) return Expr(dn, d);
  return Expr(dn * d - n * dd, d * d);
}

Expr differentiate(const Expr& e, std::string_view coord) {
  if (e.is_constant()) return Expr();
  const auto idx = coordinate_index(e.coordinates(), coord);
  if (!idx) throw DomainError("unknown coordinate '" + std::string(coord) + "'");
  return differentiate(e, *idx);
}

Rational evaluate(const Expr& e, const Point& point) {
  std::vector<Rational> values;
  if (const auto& coords = e.coordinates()) {
    values.reserve(coords->size());
    for (std::size_t v = 0; v < coords->size(); ++v) {
      const std::string& name = (*coords)[v];
      const auto it = point.find(name);
      if (it != point.end()) {
        values.push_back(it->second);
      } else if (e.numerator().degree_in(v) == 0 && e.denominator().degree_in(v) == 0) {
        values.emplace_back();
      } else {
        throw DomainError("evaluation point does not assign '" + name + "'");
      }
    }
  }
  const Rational den = e.denominator().evaluate(values);
  if (den.is_zero()) throw DomainError("pole: denominator vanishes at evaluation point");
  return e.numerator().evaluate(values) / den;
}

namespace {

bool is_single_factor(const Polynomial& p) {
  if (p.is_constant()) return p.constant_value().sign() > 0 && p.constant_value().is_integer();
  if (!p.is_monomial() || !p.leading_coefficient().is_one()) return false;
  int vars = 0;
  for (Exponent e : p.leading_monomial()) vars += e > 0 ? 1 : 0;
  return vars == 1;
}

}  // namespace

std::string canonical_text(const Expr& e) {
  const Polynomial& num = e.numerator();
  const Polynomial& den = e.denominator();
  if (num.is_zero()) return "0";
  BigInt scale = 1;
  for (const auto& [m, c] : num.terms()) scale = lcm(scale, c.denominator());
  const Polynomial n = num.scaled(Rational(scale));
  const Polynomial d = den.scaled(Rational(scale));
  if (d.is_constant() && d.constant_value().is_one()) return n.str();
  std::string out = n.terms().size() > 1 ? "(" + n.str() + ")" : n.str();
  out += "/";
  out += is_single_factor(d) ? d.str() : "(" + d.str() + ")";
  return out;
}

}  // namespace rpsym
