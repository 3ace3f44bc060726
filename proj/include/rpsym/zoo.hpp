#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpsym/curvature.hpp"

namespace rpsym {

enum class TensorKind { concircular, projective, w3, conharmonic, conformal };

inline constexpr std::array<TensorKind, 5> kAllTensorKinds{TensorKind::concircular, TensorKind::projective,
                                                           TensorKind::w3, TensorKind::conharmonic,
                                                           TensorKind::conformal};

std::string_view to_string(TensorKind k);
std::optional<TensorKind> parse_tensor_kind(std::string_view text);

/// T(E_i,E_j)E_k = Σ_l comps(l, i, j, k) E_l.
struct ZooTensor {
  TensorKind kind = TensorKind::concircular;
  Tensor4 comps;
  /// Set when the tensor is built outside the dimensions it is usually
  /// defined for.
  std::optional<std::string> warning;
};

/// Builds one of the five tensors from R, S, Q, r and the frame metric g.
/// Throws DomainError when a coefficient denominator vanishes for this n.
ZooTensor build_tensor(const ExprMatrix& g, const CurvatureData& curvature, TensorKind kind);
ZooTensor build_tensor(const Manifold& m, const CurvatureData& curvature, TensorKind kind);

/// Contractions of a tensor with ξ: t_xi[i*n + j] = T(E_i,E_j)ξ and
/// eta_t[(i*n + j)*n + k] = η(T(E_i,E_j)E_k).
struct XiContraction {
  std::vector<FrameVector> t_xi;
  std::vector<Expr> eta_t;
};

/// Throws GeometryError when the manifold has no ξ.
XiContraction tensor_of_xi(const Manifold& m, const Tensor4& t);

/// (X ∧_g Y)Z = g(Y,Z)X − g(X,Z)Y on the frame, as a tensor.
Tensor4 metric_wedge(const ExprMatrix& g);

/// Self-checks: antisymmetry where it is expected, and for the conformal
/// tensor the identity C = conharmonic + r/((n−1)(n−2)) g-wedge.
std::vector<CheckResult> zoo_checks(const ExprMatrix& g, const CurvatureData& curvature, const ZooTensor& t);

}  // namespace rpsym
