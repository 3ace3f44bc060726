#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rpsym/check.hpp"
#include "rpsym/expr.hpp"
#include "rpsym/linalg.hpp"
#include "rpsym/manifold.hpp"

namespace rpsym {

/// Dense n^4 array of expressions.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n) {}

  std::size_t size() const { return n_; }
  Expr& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) { return data_[index(a, b, c, d)]; }
  const Expr& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[index(a, b, c, d)];
  }
  bool is_zero() const;

  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  std::size_t index(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return ((a * n_ + b) * n_ + c) * n_ + d;
  }
  std::size_t n_ = 0;
  std::vector<Expr> data_;
};

/// Levi-Civita connection in the frame: ∇_{E_i} E_j = Σ_k gamma(k, i, j) E_k.
class Connection {
 public:
  Connection() = default;
  explicit Connection(std::size_t n) : n_(n), gamma_(n * n * n) {}

  std::size_t size() const { return n_; }
  Expr& operator()(std::size_t k, std::size_t i, std::size_t j) { return gamma_[(k * n_ + i) * n_ + j]; }
  const Expr& operator()(std::size_t k, std::size_t i, std::size_t j) const { return gamma_[(k * n_ + i) * n_ + j]; }

  /// ∇_{E_i} E_j.
  FrameVector nabla(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_ = 0;
  std::vector<Expr> gamma_;
};

enum class RicciConvention {
  /// S(Y,Z) = trace of X -> R(X,Y)Z, i.e. the metric-weighted contraction.
  trace,
  /// S(Y,Z) = Σ_i g(R(E_i,Y)Z, E_i) without signature weights; needs a
  /// diagonal ±1 frame metric.
  frame_sum,
};

std::string_view to_string(RicciConvention c);
std::optional<RicciConvention> parse_ricci_convention(std::string_view text);

/// R(E_i,E_j)E_k = Σ_l riemann(l, i, j, k) E_l; ricci(j, k) = S(E_j, E_k);
/// Q E_i = Σ_j ricci_op(j, i) E_j.
struct CurvatureData {
  Tensor4 riemann;
  ExprMatrix ricci;
  Expr scalar;
  ExprMatrix ricci_op;
  RicciConvention convention = RicciConvention::trace;
};

Connection koszul_connection(const Manifold& m);

/// ∇_X Y for frame-expanded fields.
FrameVector covariant_derivative(const Manifold& m, const Connection& conn, const FrameVector& x, const FrameVector& y);

/// R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z on the frame.
Tensor4 riemann_tensor(const Manifold& m, const Connection& conn);

/// Throws GeometryError for frame_sum when the frame metric is not diagonal ±1.
ExprMatrix ricci_tensor(const Manifold& m, const Tensor4& riemann, RicciConvention convention);

/// Σ g^{ij} S_ij.
Expr scalar_curvature(const Manifold& m, const ExprMatrix& ricci);

/// The (1,1) tensor Q with g(QX, Y) = S(X, Y).
ExprMatrix ricci_operator(const Manifold& m, const ExprMatrix& ricci);

CurvatureData compute_curvature(const Manifold& m, const Connection& conn, RicciConvention convention);

/// R(X,Y)Z for frame-expanded fields, by multilinearity.
FrameVector apply_tensor(const Tensor4& t, const FrameVector& x, const FrameVector& y, const FrameVector& z);

/// torsion_free, metric_compatible.
std::vector<CheckResult> connection_checks(const Manifold& m, const Connection& conn);

/// riemann_antisymmetry, first_bianchi, pair_symmetry, ricci_symmetry,
/// ricci_operator.
std::vector<CheckResult> curvature_checks(const Manifold& m, const CurvatureData& data);

}  // namespace rpsym
