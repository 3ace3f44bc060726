#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpsym/check.hpp"
#include "rpsym/curvature.hpp"
#include "rpsym/pseudosym.hpp"
#include "rpsym/zoo.hpp"

namespace rpsym {

/// (LCS) structure data of a manifold with a distinguished frame field ξ.
/// eta[i] = η(E_i) = g(E_i, ξ); φE_i = Σ_k phi(k, i) E_k.
struct LcsStructure {
  Expr alpha;
  Expr rho;
  Expr beta;
  std::vector<Expr> eta;
  ExprMatrix phi;
  std::vector<CheckResult> checks;
};

/// Extracts α from ∇_{E_i}ξ = α(E_i + η(E_i)ξ), then ρ = −ξα and β = −ξρ, and
/// runs the structure identity suite. Throws GeometryError when there is no
/// ξ, no single α fits every frame field, α = 0, or dα is not a multiple of η.
LcsStructure derive_structure(const Manifold& m, const Connection& conn, const CurvatureData& curvature);

/// (£_ξ g)(E_i, E_j) = g(∇_{E_i}ξ, E_j) + g(E_i, ∇_{E_j}ξ).
ExprMatrix lie_derivative_metric(const Manifold& m, const Connection& conn);

/// λ = −(r + (n−1)α)/n.
Expr solve_lambda_trace(std::size_t n, const Expr& r, const Expr& alpha);

struct SolitonResidual {
  ExprMatrix residual;
  Expr trace;
};

/// N = £_ξ g + 2S + 2λg and its trace with the inverse metric.
SolitonResidual soliton_residual(const Manifold& m, const ExprMatrix& lie_xi_g, const ExprMatrix& ricci,
                                 const Expr& lambda);

enum class SolitonType { shrinking, steady, expanding, indeterminate };

std::string_view to_string(SolitonType t);

struct Classification {
  SolitonType type = SolitonType::indeterminate;
  bool constant = true;
  /// Sample point used for a non-constant λ.
  std::optional<Point> point;
  /// Value of λ at `point`.
  std::optional<Rational> value;
};

/// "steady", or "steady-at-point" for a pointwise classification.
std::string label(const Classification& c);

/// Constant λ is classified by sign. Non-constant λ is classified at `at`
/// when given and is indeterminate otherwise. Throws DomainError when `at`
/// hits a pole.
Classification classify(const Expr& lambda, const std::optional<Point>& at = std::nullopt);

/// L_S predicted for a Ricci soliton (g, ξ, λ). Throws DomainError when a
/// denominator of the formula vanishes.
Expr theoretical_ls(TensorKind kind, const Expr& alpha, const Expr& rho, const Expr& lambda, std::size_t n);

/// λ recovered from L_S by the inverse formula of each kind.
Expr lambda_from_ls(TensorKind kind, const Expr& alpha, const Expr& rho, const Expr& ls, std::size_t n);

struct CriticalValue {
  Expr value;
  /// Side conditions as text, not evaluated.
  std::vector<std::string> conditions;
  /// When present, the first condition reads `*positive > 0`.
  std::optional<Expr> positive;
};

CriticalValue critical_value(TensorKind kind, const Expr& alpha, const Expr& rho, std::size_t n);

/// Closed forms of T(X,Y)ξ and η(T(X,Y)U) for a soliton:
///   T(X,Y)ξ = a[η(Y)X − η(X)Y] + b η(Y)[X + η(X)ξ]
///   η(T(X,Y)U) = c[η(Y)g(X,U) − η(X)g(Y,U)] + d η(Y){g(X,U) + η(X)η(U)}
struct XiClosedForm {
  Expr a, b, c, d;
};

XiClosedForm xi_closed_form(TensorKind kind, const Expr& alpha, const Expr& rho, const Expr& lambda, const Expr& r,
                            std::size_t n);

/// Compares tensor_of_xi against the closed forms: checks
/// `<kind>_xi_closed_form` and `<kind>_eta_closed_form`.
std::vector<CheckResult> closed_form_checks(const Manifold& m, const Tensor4& t, TensorKind kind,
                                            const XiClosedForm& form);

/// lie_metric, soliton_ricci, soliton_ricci_operator, soliton_ricci_xi.
std::vector<CheckResult> soliton_checks(const Manifold& m, const CurvatureData& curvature,
                                        const LcsStructure& structure, const ExprMatrix& lie_xi_g,
                                        const Expr& lambda);

struct KindFormulas {
  TensorKind kind;
  std::optional<Expr> theoretical_ls;
  std::optional<CriticalValue> critical;
  /// Set when a formula is undefined for this manifold.
  std::optional<std::string> error;
};

struct SolitonReport {
  Expr lambda;
  Classification classification;
  ExprMatrix lie_xi_g;
  ExprMatrix residual;
  Expr residual_trace;
  std::vector<CheckResult> checks;
  std::vector<KindFormulas> formulas;
};

/// Everything computed once per manifold and convention.
struct Pipeline {
  /// Throws GeometryError when the manifold is not (LCS).
  Pipeline(Manifold manifold, RicciConvention convention);

  Manifold manifold;
  Connection connection;
  CurvatureData curvature;
  LcsStructure structure;
  Expr lambda;
  FourField tachibana_field;
};

SolitonReport soliton_report(const Pipeline& p, const std::optional<Point>& at = std::nullopt);

enum class Verdict { agree, disagree, not_proportional, degenerate };

std::string_view to_string(Verdict v);

struct TheoremAudit {
  TensorKind kind = TensorKind::concircular;
  LsResult solver;
  Expr theoretical;
  /// solver − theoretical, when the solver found a proportionality factor.
  std::optional<Expr> difference;
  Verdict verdict = Verdict::degenerate;
  CriticalValue critical;
  std::optional<std::string> warning;
  std::vector<CheckResult> closed_forms;
};

TheoremAudit audit_theorem(const Pipeline& p, TensorKind kind);

}  // namespace rpsym
