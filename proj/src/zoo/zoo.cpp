#include "rpsym/zoo.hpp"

#include <string>

#include "rpsym/error.hpp"

namespace rpsym {

std::string_view to_string(TensorKind k) {
  switch (k) {
    case TensorKind::concircular: return "concircular";
    case TensorKind::projective: return "projective";
    case TensorKind::w3: return "w3";
    case TensorKind::conharmonic: return "conharmonic";
    case TensorKind::conformal: return "conformal";
  }
  return "unknown";
}

std::optional<TensorKind> parse_tensor_kind(std::string_view text) {
  for (TensorKind k : kAllTensorKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

Tensor4 metric_wedge(const ExprMatrix& g) {
  const std::size_t n = g.size();
  Tensor4 w(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Expr v;
          if (l == i) v += g(j, k);
          if (l == j) v -= g(i, k);
          w(l, i, j, k) = std::move(v);
        }
      }
    }
  }
  return w;
}

namespace {

// S-wedge: S(Y,Z)X − S(X,Z)Y
Expr s_wedge(const ExprMatrix& s, std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
  Expr v;
  if (l == i) v += s(j, k);
  if (l == j) v -= s(i, k);
  return v;
}

// g(Y,Z)QX − g(X,Z)QY
Expr q_wedge(const ExprMatrix& g, const ExprMatrix& q, std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
  Expr v;
  if (!g(j, k).is_zero() && !q(l, i).is_zero()) v += g(j, k) * q(l, i);
  if (!g(i, k).is_zero() && !q(l, j).is_zero()) v -= g(i, k) * q(l, j);
  return v;
}

void require_positive(long denominator, TensorKind kind, std::size_t n) {
  if (denominator == 0) {
    throw DomainError(std::string(to_string(kind)) + " tensor is undefined in dimension " + std::to_string(n));
  }
}

}  // namespace

ZooTensor build_tensor(const ExprMatrix& g, const CurvatureData& c, TensorKind kind) {
  const std::size_t n = g.size();
  const long nl = static_cast<long>(n);
  const Tensor4& r = c.riemann;
  const ExprMatrix& s = c.ricci;
  const ExprMatrix& q = c.ricci_op;
  const Tensor4 gw = metric_wedge(g);

  ZooTensor out;
  out.kind = kind;
  out.comps = Tensor4(n);
  Expr a;  // coefficient of g-wedge
  Expr b;  // coefficient of S-wedge
  Expr d;  // coefficient of Q-wedge
  Expr e;  // coefficient of g(Y,Z)QX
  Expr f;  // coefficient of S(X,Z)Y
  switch (kind) {
    case TensorKind::concircular:
      require_positive(nl * (nl - 1), kind, n);
      a = -c.scalar / Expr(nl * (nl - 1));
      break;
    case TensorKind::projective:
      require_positive(nl - 1, kind, n);
      b = Expr(Rational(-1, nl - 1));
      break;
    case TensorKind::w3:
      require_positive(nl - 1, kind, n);
      e = Expr(Rational(1, nl - 1));
      f = Expr(Rational(-1, nl - 1));
      break;
    case TensorKind::conharmonic:
    case TensorKind::conformal:
      require_positive(nl - 2, kind, n);
      b = Expr(Rational(-1, nl - 2));
      d = b;
      if (kind == TensorKind::conformal) a = c.scalar / Expr((nl - 1) * (nl - 2));
      if (n <= 3) {
        out.warning = std::string(to_string(kind)) + " tensor is defined for n > 3; computed for n = " +
                      std::to_string(n);
      }
      break;
  }

  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Expr v = r(l, i, j, k);
          if (!a.is_zero() && !gw(l, i, j, k).is_zero()) v += a * gw(l, i, j, k);
          if (!b.is_zero()) v += b * s_wedge(s, l, i, j, k);
          if (!d.is_zero()) v += d * q_wedge(g, q, l, i, j, k);
          if (!e.is_zero() && !g(j, k).is_zero()) v += e * g(j, k) * q(l, i);
          if (!f.is_zero() && l == j) v += f * s(i, k);
          out.comps(l, i, j, k) = std::move(v);
        }
      }
    }
  }
  return out;
}

ZooTensor build_tensor(const Manifold& m, const CurvatureData& curvature, TensorKind kind) {
  return build_tensor(m.metric(), curvature, kind);
}

XiContraction tensor_of_xi(const Manifold& m, const Tensor4& t) {
  const std::size_t xi = m.require_xi();
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  XiContraction out;
  out.t_xi.reserve(n * n);
  out.eta_t.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      FrameVector v(n);
      for (std::size_t l = 0; l < n; ++l) v[l] = t(l, i, j, xi);
      out.t_xi.push_back(std::move(v));
      for (std::size_t k = 0; k < n; ++k) {
        Expr eta;
        for (std::size_t l = 0; l < n; ++l) {
          if (!t(l, i, j, k).is_zero() && !g(l, xi).is_zero()) eta += t(l, i, j, k) * g(l, xi);
        }
        out.eta_t.push_back(std::move(eta));
      }
    }
  }
  return out;
}

std::vector<CheckResult> zoo_checks(const ExprMatrix& g, const CurvatureData& curvature, const ZooTensor& t) {
  const std::size_t n = g.size();
  const std::string prefix = std::string(to_string(t.kind)) + "_";
  std::vector<CheckResult> out;
  auto idx = [](std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
    return "(" + std::to_string(l + 1) + "," + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
           std::to_string(k + 1) + ")";
  };
  if (t.kind != TensorKind::projective && t.kind != TensorKind::w3) {
    CheckResult anti(prefix + "antisymmetry");
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) anti.require_zero(idx(l, i, j, k), {t.comps(l, i, j, k), t.comps(l, j, i, k)});
        }
      }
    }
    out.push_back(std::move(anti));
  }
  if (t.kind == TensorKind::conformal) {
    const ZooTensor ch = build_tensor(g, curvature, TensorKind::conharmonic);
    const Tensor4 gw = metric_wedge(g);
    const Expr coeff = curvature.scalar / Expr(static_cast<long>((n - 1) * (n - 2)));
    CheckResult rel(prefix + "conharmonic_relation");
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            rel.require_zero(idx(l, i, j, k), {t.comps(l, i, j, k), -ch.comps(l, i, j, k), -(coeff * gw(l, i, j, k))});
          }
        }
      }
    }
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace rpsym
