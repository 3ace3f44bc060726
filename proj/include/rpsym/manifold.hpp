#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpsym/expr.hpp"
#include "rpsym/linalg.hpp"

namespace rpsym {

/// A manifold given by a global frame {E_i} over a coordinate chart.
///
/// frame()(i, a) is the coefficient of d/dx^a in E_i; metric()(i, j) is
/// g(E_i, E_j). Construction validates the frame and metric and tabulates
/// all brackets, after which the object is immutable.
class Manifold {
 public:
  Manifold(Coordinates coords, std::vector<std::string> frame_names, ExprMatrix frame, ExprMatrix metric,
           std::optional<std::size_t> xi = std::nullopt);

  std::size_t dim() const { return frame_.size(); }
  const Coordinates& coordinates() const { return coords_; }
  const std::vector<std::string>& frame_names() const { return names_; }
  const ExprMatrix& frame() const { return frame_; }
  const ExprMatrix& inverse_frame() const { return frame_inv_; }
  const ExprMatrix& metric() const { return metric_; }
  const ExprMatrix& inverse_metric() const { return metric_inv_; }
  std::optional<std::size_t> xi() const { return xi_; }

  /// Frame index of ξ; throws GeometryError when the manifold has none.
  std::size_t require_xi() const;

  /// [E_i, E_j] in frame components (0-based indices).
  const FrameVector& bracket(std::size_t i, std::size_t j) const { return brackets_[i * dim() + j]; }

  /// E_i applied to f.
  Expr apply_frame(std::size_t i, const Expr& f) const;

  /// Frame components of a vector with the given coordinate components.
  FrameVector from_coordinate_components(const std::vector<Expr>& v) const;

 private:
  Coordinates coords_;
  std::vector<std::string> names_;
  ExprMatrix frame_;
  ExprMatrix frame_inv_;
  ExprMatrix metric_;
  ExprMatrix metric_inv_;
  std::optional<std::size_t> xi_;
  std::vector<FrameVector> brackets_;
};

/// Reads the line format
///
///   dim <n>
///   coords <name> ...
///   frame <Name>: <expr>, ..., <expr>
///   metric <i> <j> <expr>
///   xi <Name>
///
/// with '#' comment lines. Syntax problems raise ParseError carrying the line
/// number; geometric problems raise GeometryError.
Manifold load_manifold(std::string_view text);

/// Reads a manifold file from disk.
Manifold load_manifold_file(const std::string& path);

/// [E_i, E_j] for 0-based frame indices.
FrameVector lie_bracket(const Manifold& m, std::size_t i, std::size_t j);

/// [u, v] for arbitrary frame-expanded fields.
FrameVector lie_bracket(const Manifold& m, const FrameVector& u, const FrameVector& v);

/// Directional derivative v(f).
Expr apply_field(const Manifold& m, const FrameVector& v, const Expr& f);

/// g(u, v).
Expr metric_pair(const Manifold& m, const FrameVector& u, const FrameVector& v);

}  // namespace rpsym
