#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "rpsym/check.hpp"
#include "rpsym/curvature.hpp"

namespace rpsym {

/// Index tuple (Z, U, X, Y), 0-based.
using Tuple4 = std::array<std::size_t, 4>;

/// Dense (0,4) field indexed (Z, U; X, Y).
class FourField {
 public:
  FourField() = default;
  explicit FourField(std::size_t n) : data_(n) {}

  std::size_t size() const { return data_.size(); }
  Expr& operator()(std::size_t z, std::size_t u, std::size_t x, std::size_t y) { return data_(z, u, x, y); }
  const Expr& operator()(std::size_t z, std::size_t u, std::size_t x, std::size_t y) const {
    return data_(z, u, x, y);
  }
  const Expr& operator[](const Tuple4& t) const { return data_(t[0], t[1], t[2], t[3]); }
  bool is_zero() const { return data_.is_zero(); }

  /// F(Z, U; X, Y) for frame-expanded arguments.
  Expr contract(const FrameVector& x, const FrameVector& y, const FrameVector& z, const FrameVector& u) const;

  friend bool operator==(const FourField&, const FourField&) = default;

 private:
  Tensor4 data_;
};

/// (T·S)(Z,U;X,Y) = −S(T(X,Y)Z, U) − S(Z, T(X,Y)U).
FourField derivation_action(const Tensor4& t, const ExprMatrix& s);

/// Q(g,S)(Z,U;X,Y) = −S((X ∧_g Y)Z, U) − S(Z, (X ∧_g Y)U).
FourField tachibana(const ExprMatrix& g, const ExprMatrix& s);

/// All index tuples ordered by index sum, then lexicographically.
std::vector<Tuple4> graded_tuples(std::size_t n);

struct Proportional {
  Expr ls;
  Tuple4 pivot;
};

/// `pivot` is where the candidate ratio was taken, `violation` the first
/// tuple where D ≠ ls·Q. When Q vanishes identically both name the first
/// tuple with D ≠ 0.
struct NotProportional {
  Tuple4 pivot;
  Tuple4 violation;
};

struct Degenerate {};

using LsResult = std::variant<Proportional, NotProportional, Degenerate>;

/// Decides D = L·Q over the rational-function field.
LsResult solve_ls(const FourField& d, const FourField& q);

/// Z↔U symmetry of a four-field.
CheckResult zu_symmetry(const std::string& name, const FourField& f);

}  // namespace rpsym
