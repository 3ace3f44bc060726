#include "rpsym/lcs.hpp"

#include <string>
#include <utility>

#include "rpsym/error.hpp"

namespace rpsym {

namespace {

std::string at(std::initializer_list<std::size_t> idx) {
  std::string out = "(";
  bool first = true;
  for (std::size_t i : idx) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + ")";
}

Expr delta(std::size_t a, std::size_t b) { return a == b ? Expr(1) : Expr(); }

Expr integer(std::size_t n) { return Expr(static_cast<long>(n)); }

void require_nonzero(const Expr& denominator, TensorKind kind, std::string_view what) {
  if (denominator.is_zero()) {
    throw DomainError(std::string(to_string(kind)) + " formula is undefined: " + std::string(what) + " vanishes");
  }
}

// φ applied to a frame-expanded field.
FrameVector apply_phi(const ExprMatrix& phi, const FrameVector& v) {
  const std::size_t n = v.size();
  FrameVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t p = 0; p < n; ++p) {
      if (!phi(k, p).is_zero() && !v[p].is_zero()) out[k] += phi(k, p) * v[p];
    }
  }
  return out;
}

Expr extract_alpha(const Manifold& m, const Connection& conn, const std::vector<Expr>& eta) {
  const std::size_t n = m.dim();
  const std::size_t xi = *m.xi();
  std::optional<Expr> alpha;
  for (std::size_t i = 0; i < n; ++i) {
    FrameVector v = FrameVector::basis(n, i);
    v[xi] += eta[i];
    const FrameVector d = conn.nabla(i, xi);
    const std::string field = m.frame_names()[i];
    if (v.is_zero()) {
      if (!d.is_zero()) throw GeometryError("nabla xi along " + field + " should vanish but does not");
      continue;
    }
    std::size_t a = 0;
    while (v[a].is_zero()) ++a;
    const Expr candidate = d[a] / v[a];
    if (candidate * v != d) {
      throw GeometryError("nabla xi along " + field + " is not a multiple of " + field + " + eta(" + field + ") xi");
    }
    if (alpha && *alpha != candidate) {
      throw GeometryError("no single alpha: " + canonical_text(*alpha) + " and " + canonical_text(candidate));
    }
    alpha = candidate;
  }
  if (!alpha || alpha->is_zero()) throw GeometryError("alpha vanishes; not an LCS structure");
  return *alpha;
}

}  // namespace

LcsStructure derive_structure(const Manifold& m, const Connection& conn, const CurvatureData& curvature) {
  const std::size_t xi = m.require_xi();
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  const Tensor4& r = curvature.riemann;
  const ExprMatrix& s = curvature.ricci;

  LcsStructure st;
  st.eta.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.eta[i] = g(i, xi);
  const std::vector<Expr>& eta = st.eta;

  st.alpha = extract_alpha(m, conn, eta);
  st.rho = -m.apply_frame(xi, st.alpha);
  for (std::size_t i = 0; i < n; ++i) {
    if (m.apply_frame(i, st.alpha) != st.rho * eta[i]) {
      throw GeometryError("d alpha is not proportional to eta along " + m.frame_names()[i]);
    }
  }
  st.beta = -m.apply_frame(xi, st.rho);

  st.phi = ExprMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) st.phi(xi, i) += eta[i];
  const ExprMatrix& phi = st.phi;
  const Expr& alpha = st.alpha;
  const Expr c = alpha * alpha - st.rho;
  const Expr nm1 = integer(n - 1);
  auto phi_of = [&](std::size_t i) {
    FrameVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = phi(k, i);
    return v;
  };

  CheckResult xi_unit("xi_unit");
  xi_unit.require_zero(at({xi, xi}), {g(xi, xi), Expr(1)});

  CheckResult eta_dual("eta_dual");
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    eta_dual.require_equal(at({i}), eta[i], metric_pair(m, FrameVector::basis(n, i), FrameVector::basis(n, xi)));
    any = any || !eta[i].is_zero();
  }
  if (!any) {
    eta_dual.passed = false;
    eta_dual.detail = "eta vanishes identically";
  }

  CheckResult nabla_eta("nabla_eta");
  CheckResult nabla_xi("nabla_xi");
  CheckResult phi_from_nabla("phi_from_nabla_xi");
  CheckResult nabla_phi("nabla_phi");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Expr> terms{m.apply_frame(i, eta[j]), -(alpha * (g(i, j) + eta[i] * eta[j]))};
      for (std::size_t k = 0; k < n; ++k) terms.push_back(-(conn(k, i, j) * eta[k]));
      nabla_eta.require_zero(at({i, j}), std::move(terms));

      nabla_xi.require_zero(at({j, i}), {conn(j, i, xi), -(alpha * (delta(j, i) + eta[i] * delta(j, xi)))});
      phi_from_nabla.require_equal(at({j, i}), phi(j, i), conn(j, i, xi) / alpha);

      const FrameVector lhs = covariant_derivative(m, conn, FrameVector::basis(n, i), phi_of(j)) -
                              apply_phi(phi, conn.nabla(i, j));
      for (std::size_t k = 0; k < n; ++k) {
        const Expr rhs = alpha * ((g(i, j) + Expr(2) * eta[i] * eta[j]) * delta(k, xi) + eta[j] * delta(k, i));
        nabla_phi.require_equal(at({i, j, k}), lhs[k], rhs);
      }
    }
  }

  CheckResult d_alpha("d_alpha");
  CheckResult d_rho("d_rho");
  for (std::size_t i = 0; i < n; ++i) {
    d_alpha.require_equal(at({i}), m.apply_frame(i, alpha), st.rho * eta[i]);
    d_rho.require_equal(at({i}), m.apply_frame(i, st.rho), st.beta * eta[i]);
  }

  CheckResult phi_symmetric("phi_definition");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      phi_symmetric.require_equal(at({i, j}), metric_pair(m, phi_of(i), FrameVector::basis(n, j)),
                                  metric_pair(m, FrameVector::basis(n, i), phi_of(j)));
    }
  }

  CheckResult eta_xi("eta_xi");
  eta_xi.require_zero(at({xi}), {eta[xi], Expr(1)});
  CheckResult phi_xi("phi_xi");
  for (std::size_t k = 0; k < n; ++k) phi_xi.require_zero(at({k}), {phi(k, xi)});
  CheckResult eta_phi("eta_phi");
  CheckResult metric_phi("metric_phi");
  CheckResult phi_squared("phi_squared");
  CheckResult ricci_phi_phi("ricci_phi_phi");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t k = 0; k < n; ++k) terms.push_back(phi(k, i) * eta[k]);
    eta_phi.require_zero(at({i}), std::move(terms));

    const FrameVector sq = apply_phi(phi, phi_of(i));
    for (std::size_t k = 0; k < n; ++k) {
      phi_squared.require_equal(at({i, k}), sq[k], delta(k, i) + eta[i] * delta(k, xi));
    }
    for (std::size_t j = 0; j < n; ++j) {
      metric_phi.require_equal(at({i, j}), metric_pair(m, phi_of(i), phi_of(j)), g(i, j) + eta[i] * eta[j]);
      Expr sphi;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (!phi(a, i).is_zero() && !phi(b, j).is_zero() && !s(a, b).is_zero()) sphi += phi(a, i) * phi(b, j) * s(a, b);
        }
      }
      ricci_phi_phi.require_equal(at({i, j}), sphi, s(i, j) + nm1 * c * eta[i] * eta[j]);
    }
  }

  CheckResult ricci_xi("ricci_xi");
  for (std::size_t i = 0; i < n; ++i) ricci_xi.require_equal(at({i}), s(i, xi), nm1 * c * eta[i]);

  CheckResult curvature_xi("curvature_xi");
  CheckResult curvature_xi_first("curvature_xi_first");
  CheckResult phi_curvature("phi_curvature");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        curvature_xi.require_equal(at({l, i, j}), r(l, i, j, xi), c * (eta[j] * delta(l, i) - eta[i] * delta(l, j)));
        curvature_xi_first.require_equal(at({l, i, j}), r(l, xi, i, j),
                                         c * (g(i, j) * delta(l, xi) - eta[j] * delta(l, i)));
      }
      for (std::size_t k = 0; k < n; ++k) {
        FrameVector rv(n);
        for (std::size_t l = 0; l < n; ++l) rv[l] = r(l, i, j, k);
        const FrameVector prv = apply_phi(phi, rv);
        const Expr tail = c * (g(j, k) * eta[i] - g(i, k) * eta[j]);
        for (std::size_t l = 0; l < n; ++l) {
          phi_curvature.require_zero(at({l, i, j, k}), {rv[l], -prv[l], tail * delta(l, xi)});
        }
      }
    }
  }

  st.checks = {std::move(xi_unit),       std::move(eta_dual),      std::move(nabla_eta),
               std::move(nabla_xi),      std::move(d_alpha),       std::move(phi_from_nabla),
               std::move(phi_symmetric), std::move(eta_xi),        std::move(phi_xi),
               std::move(eta_phi),       std::move(metric_phi),    std::move(phi_squared),
               std::move(ricci_xi),      std::move(curvature_xi),  std::move(curvature_xi_first),
               std::move(nabla_phi),     std::move(d_rho),         std::move(phi_curvature),
               std::move(ricci_phi_phi)};
  return st;
}

ExprMatrix lie_derivative_metric(const Manifold& m, const Connection& conn) {
  const std::size_t xi = m.require_xi();
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  ExprMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr v;
      for (std::size_t k = 0; k < n; ++k) {
        if (!conn(k, i, xi).is_zero() && !g(k, j).is_zero()) v += conn(k, i, xi) * g(k, j);
        if (!conn(k, j, xi).is_zero() && !g(i, k).is_zero()) v += conn(k, j, xi) * g(i, k);
      }
      out(i, j) = std::move(v);
    }
  }
  return out;
}

Expr solve_lambda_trace(std::size_t n, const Expr& r, const Expr& alpha) {
  return -(r + integer(n - 1) * alpha) / integer(n);
}

SolitonResidual soliton_residual(const Manifold& m, const ExprMatrix& lie_xi_g, const ExprMatrix& ricci,
                                 const Expr& lambda) {
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  const ExprMatrix& ginv = m.inverse_metric();
  SolitonResidual out{ExprMatrix(n), Expr()};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.residual(i, j) = lie_xi_g(i, j) + Expr(2) * ricci(i, j) + Expr(2) * lambda * g(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!ginv(i, j).is_zero() && !out.residual(i, j).is_zero()) out.trace += ginv(i, j) * out.residual(i, j);
    }
  }
  return out;
}

std::string_view to_string(SolitonType t) {
  switch (t) {
    case SolitonType::shrinking: return "shrinking";
    case SolitonType::steady: return "steady";
    case SolitonType::expanding: return "expanding";
    case SolitonType::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string label(const Classification& c) {
  std::string out(to_string(c.type));
  if (!c.constant && c.point) out += "-at-point";
  return out;
}

Classification classify(const Expr& lambda, const std::optional<Point>& at) {
  auto by_sign = [](const Rational& v) {
    const int s = v.sign();
    return s < 0 ? SolitonType::shrinking : s == 0 ? SolitonType::steady : SolitonType::expanding;
  };
  Classification out;
  out.constant = lambda.is_constant();
  if (out.constant) {
    out.value = lambda.constant_value();
    out.type = by_sign(*out.value);
    return out;
  }
  if (!at) return out;
  out.point = *at;
  out.value = evaluate(lambda, *at);
  out.type = by_sign(*out.value);
  return out;
}

Expr theoretical_ls(TensorKind kind, const Expr& alpha, const Expr& rho, const Expr& lambda, std::size_t n) {
  const Expr c = alpha * alpha - rho;
  const Expr nm1 = integer(n - 1);
  const Expr nm2 = integer(n - 2);
  switch (kind) {
    case TensorKind::concircular:
      require_nonzero(nm1, kind, "n - 1");
      return c + lambda / nm1 + alpha / integer(n);
    case TensorKind::projective:
      require_nonzero(alpha, kind, "alpha");
      return (Expr(1) + Expr(2) * lambda / alpha) * c;
    case TensorKind::w3:
      require_nonzero(alpha, kind, "alpha");
      require_nonzero(nm1, kind, "n - 1");
      return (Expr(1) + Expr(2) * lambda / alpha) * c - (alpha + lambda) / nm1;
    case TensorKind::conharmonic:
      require_nonzero(nm2, kind, "n - 2");
      return (alpha + Expr(2) * lambda) / nm2 - c;
    case TensorKind::conformal:
      require_nonzero(nm1, kind, "n - 1");
      return lambda / nm1 - c;
  }
  return Expr();
}

Expr lambda_from_ls(TensorKind kind, const Expr& alpha, const Expr& rho, const Expr& ls, std::size_t n) {
  const Expr c = alpha * alpha - rho;
  const Expr nm1 = integer(n - 1);
  const Expr nm2 = integer(n - 2);
  switch (kind) {
    case TensorKind::concircular:
      return nm1 * (ls - (alpha / integer(n) + c));
    case TensorKind::projective:
      require_nonzero(c, kind, "alpha^2 - rho");
      return alpha * (ls - c) / (Expr(2) * c);
    case TensorKind::w3: {
      const Expr den = Expr(2) * nm1 * c - alpha;
      require_nonzero(den, kind, "2*(n-1)*(alpha^2 - rho) - alpha");
      require_nonzero(nm1, kind, "n - 1");
      return nm1 * alpha / den * (ls - (nm1 * c - alpha) / nm1);
    }
    case TensorKind::conharmonic:
      return (nm2 * (ls + c) - alpha) / Expr(2);
    case TensorKind::conformal:
      return nm1 * (ls + c);
  }
  return Expr();
}

CriticalValue critical_value(TensorKind kind, const Expr& alpha, const Expr& rho, std::size_t n) {
  const Expr c = alpha * alpha - rho;
  const Expr nm1 = integer(n - 1);
  CriticalValue out;
  switch (kind) {
    case TensorKind::concircular:
      require_nonzero(integer(n), kind, "n");
      out.value = alpha / integer(n) + c;
      break;
    case TensorKind::projective:
      out.value = c;
      out.conditions = {"alpha/(alpha^2 - rho) > 0", "alpha > alpha^2 - rho"};
      if (!c.is_zero()) out.positive = alpha / c;
      break;
    case TensorKind::w3: {
      require_nonzero(nm1, kind, "n - 1");
      out.value = c - alpha / nm1;
      out.conditions = {"(n-1)*alpha/(2*(n-1)*(alpha^2 - rho) - alpha) > 0",
                        "(n-1)*alpha/(2*(n-1)*(alpha^2) - alpha) > 0"};
      const Expr den = Expr(2) * nm1 * c - alpha;
      if (!den.is_zero()) out.positive = nm1 * alpha / den;
      break;
    }
    case TensorKind::conharmonic:
      require_nonzero(integer(n - 2), kind, "n - 2");
      out.value = alpha / integer(n - 2) - c;
      break;
    case TensorKind::conformal:
      out.value = -c;
      break;
  }
  return out;
}

XiClosedForm xi_closed_form(TensorKind kind, const Expr& alpha, const Expr& rho, const Expr& lambda, const Expr& r,
                            std::size_t n) {
  const Expr c = alpha * alpha - rho;
  const Expr nm1 = integer(n - 1);
  XiClosedForm f;
  switch (kind) {
    case TensorKind::concircular: {
      const Expr k = r / (integer(n) * nm1);
      f.a = c - k;
      f.c = k - c;
      break;
    }
    case TensorKind::projective:
      f.a = c + lambda / nm1;
      f.c = c - (alpha + lambda) / nm1;
      break;
    case TensorKind::w3:
      f.a = c - lambda / nm1;
      f.b = -alpha / nm1;
      f.c = c + lambda / nm1;
      f.d = alpha / nm1;
      break;
    case TensorKind::conharmonic: {
      require_nonzero(integer(n - 2), kind, "n - 2");
      const Expr k = (alpha + Expr(2) * lambda) / integer(n - 2);
      f.a = c + k;
      f.c = c - k;
      break;
    }
    case TensorKind::conformal:
      f.a = c + lambda / nm1;
      f.c = c - lambda / nm1;
      break;
  }
  return f;
}

std::vector<CheckResult> closed_form_checks(const Manifold& m, const Tensor4& t, TensorKind kind,
                                            const XiClosedForm& form) {
  const std::size_t n = m.dim();
  const std::size_t xi = m.require_xi();
  const ExprMatrix& g = m.metric();
  const XiContraction x = tensor_of_xi(m, t);
  std::vector<Expr> eta(n);
  for (std::size_t i = 0; i < n; ++i) eta[i] = g(i, xi);
  const std::string prefix(to_string(kind));
  CheckResult xi_form(prefix + "_xi_closed_form");
  CheckResult eta_form(prefix + "_eta_closed_form");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        const Expr rhs = form.a * (eta[j] * delta(l, i) - eta[i] * delta(l, j)) +
                         form.b * eta[j] * (delta(l, i) + eta[i] * delta(l, xi));
        xi_form.require_equal(at({l, i, j}), x.t_xi[i * n + j][l], rhs);
      }
      for (std::size_t k = 0; k < n; ++k) {
        const Expr rhs = form.c * (eta[j] * g(i, k) - eta[i] * g(j, k)) +
                         form.d * eta[j] * (g(i, k) + eta[i] * eta[k]);
        eta_form.require_equal(at({i, j, k}), x.eta_t[(i * n + j) * n + k], rhs);
      }
    }
  }
  return {std::move(xi_form), std::move(eta_form)};
}

std::vector<CheckResult> soliton_checks(const Manifold& m, const CurvatureData& curvature,
                                        const LcsStructure& st, const ExprMatrix& lie_xi_g, const Expr& lambda) {
  const std::size_t n = m.dim();
  const std::size_t xi = m.require_xi();
  const ExprMatrix& g = m.metric();
  const std::vector<Expr>& eta = st.eta;
  const Expr& alpha = st.alpha;
  CheckResult lie("lie_metric");
  CheckResult ricci("soliton_ricci");
  CheckResult op("soliton_ricci_operator");
  CheckResult ricci_xi("soliton_ricci_xi");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lie.require_equal(at({i, j}), lie_xi_g(i, j), Expr(2) * alpha * (g(i, j) + eta[i] * eta[j]));
      ricci.require_equal(at({i, j}), curvature.ricci(i, j), -((alpha + lambda) * g(i, j)) - alpha * eta[i] * eta[j]);
      op.require_equal(at({j, i}), curvature.ricci_op(j, i),
                       -((alpha + lambda) * delta(j, i)) - alpha * eta[i] * delta(j, xi));
    }
    ricci_xi.require_equal(at({i}), curvature.ricci(i, xi), -(lambda * eta[i]));
  }
  return {std::move(lie), std::move(ricci), std::move(op), std::move(ricci_xi)};
}

Pipeline::Pipeline(Manifold m, RicciConvention convention)
    : manifold(std::move(m)),
      connection(koszul_connection(manifold)),
      curvature(compute_curvature(manifold, connection, convention)),
      structure(derive_structure(manifold, connection, curvature)),
      lambda(solve_lambda_trace(manifold.dim(), curvature.scalar, structure.alpha)),
      tachibana_field(tachibana(manifold.metric(), curvature.ricci)) {}

SolitonReport soliton_report(const Pipeline& p, const std::optional<Point>& at) {
  const std::size_t n = p.manifold.dim();
  SolitonReport out;
  out.lambda = p.lambda;
  out.classification = classify(p.lambda, at);
  out.lie_xi_g = lie_derivative_metric(p.manifold, p.connection);
  SolitonResidual res = soliton_residual(p.manifold, out.lie_xi_g, p.curvature.ricci, p.lambda);
  out.residual = std::move(res.residual);
  out.residual_trace = std::move(res.trace);
  out.checks = soliton_checks(p.manifold, p.curvature, p.structure, out.lie_xi_g, p.lambda);
  for (TensorKind k : kAllTensorKinds) {
    KindFormulas f{k, std::nullopt, std::nullopt, std::nullopt};
    try {
      f.theoretical_ls = theoretical_ls(k, p.structure.alpha, p.structure.rho, p.lambda, n);
      f.critical = critical_value(k, p.structure.alpha, p.structure.rho, n);
    } catch (const DomainError& e) {
      f.error = e.what();
    }
    out.formulas.push_back(std::move(f));
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::agree: return "agree";
    case Verdict::disagree: return "disagree";
    case Verdict::not_proportional: return "not proportional";
    case Verdict::degenerate: return "degenerate";
  }
  return "degenerate";
}

TheoremAudit audit_theorem(const Pipeline& p, TensorKind kind) {
  const std::size_t n = p.manifold.dim();
  const LcsStructure& st = p.structure;
  const ZooTensor t = build_tensor(p.manifold, p.curvature, kind);
  TheoremAudit out;
  out.kind = kind;
  out.warning = t.warning;
  out.solver = solve_ls(derivation_action(t.comps, p.curvature.ricci), p.tachibana_field);
  out.theoretical = theoretical_ls(kind, st.alpha, st.rho, p.lambda, n);
  out.critical = critical_value(kind, st.alpha, st.rho, n);
  if (const auto* prop = std::get_if<Proportional>(&out.solver)) {
    out.difference = prop->ls - out.theoretical;
    out.verdict = out.difference->is_zero() ? Verdict::agree : Verdict::disagree;
  } else if (std::holds_alternative<NotProportional>(out.solver)) {
    out.verdict = Verdict::not_proportional;
  } else {
    out.verdict = Verdict::degenerate;
  }
  out.closed_forms = closed_form_checks(p.manifold, t.comps, kind,
                                        xi_closed_form(kind, st.alpha, st.rho, p.lambda, p.curvature.scalar, n));
  return out;
}

}  // namespace rpsym
