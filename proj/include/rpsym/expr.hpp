#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "rpsym/polynomial.hpp"
#include "rpsym/rational.hpp"

namespace rpsym {

/// Exact rational function num/den over Q in canonical form:
///  - gcd(num, den) is constant;
///  - den has coprime integer coefficients and a positive leading coefficient;
///  - zero is 0/1;
///  - constants carry no coordinate system, so equal constants compare equal
///    regardless of where they came from.
class Expr {
 public:
  Expr() = default;
  Expr(long value) : Expr(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);                 // NOLINT(google-explicit-constructor)
  Expr(const Polynomial& num, const Polynomial& den);

  static Expr variable(const Coordinates& coords, std::string_view name);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  /// Null for constants.
  const Coordinates& coordinates() const { return num_.coordinates(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, const Expr& b) { return a *= b; }
  friend Expr operator/(Expr a, const Expr& b) { return a /= b; }
  Expr operator-() const;

  Expr pow(long exponent) const;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Canonical {};
  Expr(Canonical, Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_{Rational(1)};
};

enum class ArithOp { add, sub, mul, div };

Expr arith(const Expr& a, const Expr& b, ArithOp op);

/// Exact partial derivative. Throws DomainError if `coord` is not a
/// coordinate of `e` (constants differentiate to zero against any name).
Expr differentiate(const Expr& e, std::string_view coord);
Expr differentiate(const Expr& e, std::size_t coord_index);

using Point = std::map<std::string, Rational, std::less<>>;

/// Exact value at a point. Every coordinate `e` depends on must be assigned;
/// throws DomainError at a pole.
Rational evaluate(const Expr& e, const Point& point);

/// Deterministic text in the expression grammar; equal strings iff equal
/// rational functions. Rational coefficients of the numerator are cleared
/// into the printed denominator, e.g. 14/(3*z^2).
std::string canonical_text(const Expr& e);

}  // namespace rpsym
