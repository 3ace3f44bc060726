#include "rpsym/curvature.hpp"

#include <algorithm>
#include <string>

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

Expr bracket_pair(const Manifold& m, std::size_t i, std::size_t j, std::size_t l) {
  // g([E_i, E_j], E_l)
  const FrameVector& c = m.bracket(i, j);
  Expr out;
  for (std::size_t a = 0; a < m.dim(); ++a) {
    if (c[a].is_zero() || m.metric()(a, l).is_zero()) continue;
    out += c[a] * m.metric()(a, l);
  }
  return out;
}

// g(R(E_i,E_j)E_k, E_m)
Expr lowered(const Manifold& m, const Tensor4& r, std::size_t i, std::size_t j, std::size_t k, std::size_t w) {
  Expr out;
  for (std::size_t l = 0; l < m.dim(); ++l) {
    if (r(l, i, j, k).is_zero() || m.metric()(l, w).is_zero()) continue;
    out += r(l, i, j, k) * m.metric()(l, w);
  }
  return out;
}

}  // namespace

bool Tensor4::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

FrameVector Connection::nabla(std::size_t i, std::size_t j) const {
  FrameVector out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = (*this)(k, i, j);
  return out;
}

std::string_view to_string(RicciConvention c) {
  return c == RicciConvention::trace ? "trace" : "frame-sum";
}

std::optional<RicciConvention> parse_ricci_convention(std::string_view text) {
  if (text == "trace") return RicciConvention::trace;
  if (text == "frame-sum") return RicciConvention::frame_sum;
  return std::nullopt;
}

Connection koszul_connection(const Manifold& m) {
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  const ExprMatrix& ginv = m.inverse_metric();
  Connection conn(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // K_l = 2 g(∇_{E_i} E_j, E_l)
      std::vector<Expr> k_low(n);
      for (std::size_t l = 0; l < n; ++l) {
        k_low[l] = m.apply_frame(i, g(j, l)) + m.apply_frame(j, g(l, i)) - m.apply_frame(l, g(i, j)) +
                   bracket_pair(m, i, j, l) - bracket_pair(m, j, l, i) + bracket_pair(m, l, i, j);
      }
      for (std::size_t k = 0; k < n; ++k) {
        Expr s;
        for (std::size_t l = 0; l < n; ++l) {
          if (ginv(k, l).is_zero() || k_low[l].is_zero()) continue;
          s += ginv(k, l) * k_low[l];
        }
        conn(k, i, j) = s / Expr(2);
      }
    }
  }
  return conn;
}

FrameVector covariant_derivative(const Manifold& m, const Connection& conn, const FrameVector& x,
                                 const FrameVector& y) {
  const std::size_t n = m.dim();
  FrameVector out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = apply_field(m, x, y[k]);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const Expr w = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (!conn(k, i, j).is_zero()) out[k] += w * conn(k, i, j);
      }
    }
  }
  return out;
}

Tensor4 riemann_tensor(const Manifold& m, const Connection& conn) {
  const std::size_t n = m.dim();
  Tensor4 r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const FrameVector& c = m.bracket(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Expr v = m.apply_frame(i, conn(l, j, k)) - m.apply_frame(j, conn(l, i, k));
          for (std::size_t p = 0; p < n; ++p) {
            if (!conn(p, j, k).is_zero() && !conn(l, i, p).is_zero()) v += conn(p, j, k) * conn(l, i, p);
            if (!conn(p, i, k).is_zero() && !conn(l, j, p).is_zero()) v -= conn(p, i, k) * conn(l, j, p);
            if (!c[p].is_zero() && !conn(l, p, k).is_zero()) v -= c[p] * conn(l, p, k);
          }
          r(l, j, i, k) = -v;
          r(l, i, j, k) = std::move(v);
        }
      }
    }
  }
  return r;
}

ExprMatrix ricci_tensor(const Manifold& m, const Tensor4& riemann, RicciConvention convention) {
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  if (convention == RicciConvention::frame_sum && !g.is_orthonormal_signature()) {
    throw GeometryError("frame-sum Ricci convention needs a diagonal frame metric with entries +1 or -1");
  }
  ExprMatrix s(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      Expr v;
      for (std::size_t i = 0; i < n; ++i) {
        if (convention == RicciConvention::trace) {
          v += riemann(i, i, j, k);
        } else {
          v += lowered(m, riemann, i, j, k, i);
        }
      }
      s(j, k) = std::move(v);
    }
  }
  return s;
}

Expr scalar_curvature(const Manifold& m, const ExprMatrix& ricci) {
  const ExprMatrix& ginv = m.inverse_metric();
  Expr r;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (!ginv(i, j).is_zero() && !ricci(i, j).is_zero()) r += ginv(i, j) * ricci(i, j);
    }
  }
  return r;
}

ExprMatrix ricci_operator(const Manifold& m, const ExprMatrix& ricci) { return m.inverse_metric() * ricci; }

CurvatureData compute_curvature(const Manifold& m, const Connection& conn, RicciConvention convention) {
  CurvatureData d;
  d.convention = convention;
  d.riemann = riemann_tensor(m, conn);
  d.ricci = ricci_tensor(m, d.riemann, convention);
  d.scalar = scalar_curvature(m, d.ricci);
  d.ricci_op = ricci_operator(m, d.ricci);
  return d;
}

FrameVector apply_tensor(const Tensor4& t, const FrameVector& x, const FrameVector& y, const FrameVector& z) {
  const std::size_t n = t.size();
  FrameVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (z[k].is_zero()) continue;
        const Expr w = x[i] * y[j] * z[k];
        for (std::size_t l = 0; l < n; ++l) {
          if (!t(l, i, j, k).is_zero()) out[l] += w * t(l, i, j, k);
        }
      }
    }
  }
  return out;
}

std::vector<CheckResult> connection_checks(const Manifold& m, const Connection& conn) {
  const std::size_t n = m.dim();
  const ExprMatrix& g = m.metric();
  CheckResult torsion{"torsion_free"};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        torsion.require_zero(at({k, i, j}), {conn(k, i, j), -conn(k, j, i), -m.bracket(i, j)[k]});
      }
    }
  }
  CheckResult compat{"metric_compatible"};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Expr> terms{m.apply_frame(i, g(j, k))};
        for (std::size_t p = 0; p < n; ++p) {
          terms.push_back(-(conn(p, i, j) * g(p, k)));
          terms.push_back(-(conn(p, i, k) * g(j, p)));
        }
        compat.require_zero(at({i, j, k}), std::move(terms));
      }
    }
  }
  return {std::move(torsion), std::move(compat)};
}

std::vector<CheckResult> curvature_checks(const Manifold& m, const CurvatureData& d) {
  const std::size_t n = m.dim();
  const Tensor4& r = d.riemann;
  CheckResult anti{"riemann_antisymmetry"};
  CheckResult bianchi{"first_bianchi"};
  CheckResult pair{"pair_symmetry"};
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          anti.require_zero(at({l, i, j, k}), {r(l, i, j, k), r(l, j, i, k)});
          bianchi.require_zero(at({l, i, j, k}), {r(l, i, j, k), r(l, j, k, i), r(l, k, i, j)});
          pair.require_equal(at({i, j, k, l}), lowered(m, r, i, j, k, l), lowered(m, r, k, l, i, j));
        }
      }
    }
  }
  CheckResult sym{"ricci_symmetry"};
  CheckResult qop{"ricci_operator"};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sym.require_equal(at({i, j}), d.ricci(i, j), d.ricci(j, i));
      std::vector<Expr> terms{-d.ricci(i, j)};
      for (std::size_t p = 0; p < n; ++p) terms.push_back(d.ricci_op(p, i) * m.metric()(p, j));
      qop.require_zero(at({i, j}), std::move(terms));
    }
  }
  return {std::move(anti), std::move(bianchi), std::move(pair), std::move(sym), std::move(qop)};
}

}  // namespace rpsym
