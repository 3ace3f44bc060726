#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpsym/rational.hpp"

namespace rpsym {

/// Ordered coordinate names shared by every polynomial of one coordinate
/// system. A null pointer means "no coordinates": only constants live there,
/// and they are lifted into whichever system they are combined with.
using Coordinates = std::shared_ptr<const std::vector<std::string>>;

Coordinates make_coordinates(std::vector<std::string> names);
bool same_coordinates(const Coordinates& a, const Coordinates& b);
std::optional<std::size_t> coordinate_index(const Coordinates& coords, std::string_view name);

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

/// Graded lexicographic order, largest first: higher total degree wins, ties
/// are broken lexicographically in the declared coordinate order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with rational coefficients. Terms iterate
/// in descending graded-lex order; zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(const Rational& constant);
  Polynomial(Coordinates coords, Terms terms);

  static Polynomial variable(const Coordinates& coords, std::size_t index);

  const Coordinates& coordinates() const { return coords_; }
  std::size_t num_variables() const { return coords_ ? coords_->size() : 0; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws DomainError otherwise.
  Rational constant_value() const;
  bool is_monomial() const { return terms_.size() == 1; }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  Exponent degree_in(std::size_t var) const;
  /// Same polynomial expressed over `coords`; only constants may change system.
  Polynomial lifted_to(const Coordinates& coords) const;
  /// Drops the coordinate system when the polynomial is a constant.
  Polynomial stripped_if_constant() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;

  Polynomial scaled(const Rational& factor) const;
  Polynomial pow(std::uint64_t exponent) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Nonzero rational c such that c * p has coprime integer coefficients
  /// and a positive leading coefficient. Requires p != 0.
  Rational normalizing_factor() const;

  /// Integer coefficients, listed in term order, spaces around + and -.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  Coordinates coords_;
  Terms terms_;
};

/// Coordinate system shared by a and b, lifting constants. Throws DomainError
/// when both carry different non-null systems.
Coordinates unify_coordinates(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor over Q, normalized (integer coefficients with
/// gcd 1, positive leading coefficient). gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// a / b when b divides a exactly; throws DomainError otherwise.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

}  // namespace rpsym
