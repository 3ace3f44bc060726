#include "rpsym/pseudosym.hpp"

#include <algorithm>
#include <string>

#include "rpsym/zoo.hpp"

namespace rpsym {

Expr FourField::contract(const FrameVector& x, const FrameVector& y, const FrameVector& z,
                         const FrameVector& u) const {
  const std::size_t n = size();
  Expr out;
  for (std::size_t a = 0; a < n; ++a) {
    if (z[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (u[b].is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (x[c].is_zero()) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (y[d].is_zero() || data_(a, b, c, d).is_zero()) continue;
          out += z[a] * u[b] * x[c] * y[d] * data_(a, b, c, d);
        }
      }
    }
  }
  return out;
}

FourField derivation_action(const Tensor4& t, const ExprMatrix& s) {
  const std::size_t n = t.size();
  FourField f(n);
  for (std::size_t z = 0; z < n; ++z) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          Expr v;
          for (std::size_t l = 0; l < n; ++l) {
            if (!t(l, x, y, z).is_zero() && !s(l, u).is_zero()) v -= t(l, x, y, z) * s(l, u);
            if (!t(l, x, y, u).is_zero() && !s(z, l).is_zero()) v -= t(l, x, y, u) * s(z, l);
          }
          f(z, u, x, y) = std::move(v);
        }
      }
    }
  }
  return f;
}

FourField tachibana(const ExprMatrix& g, const ExprMatrix& s) { return derivation_action(metric_wedge(g), s); }

std::vector<Tuple4> graded_tuples(std::size_t n) {
  std::vector<Tuple4> out;
  out.reserve(n * n * n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) out.push_back({a, b, c, d});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Tuple4& p, const Tuple4& q) {
    return p[0] + p[1] + p[2] + p[3] < q[0] + q[1] + q[2] + q[3];
  });
  return out;
}

LsResult solve_ls(const FourField& d, const FourField& q) {
  const auto order = graded_tuples(d.size());
  const auto pivot = std::find_if(order.begin(), order.end(), [&](const Tuple4& t) { return !q[t].is_zero(); });
  if (pivot == order.end()) {
    const auto hit = std::find_if(order.begin(), order.end(), [&](const Tuple4& t) { return !d[t].is_zero(); });
    if (hit == order.end()) return Degenerate{};
    return NotProportional{*hit, *hit};
  }
  const Expr ls = d[*pivot] / q[*pivot];
  for (const Tuple4& t : order) {
    if (!(d[t] == ls * q[t])) return NotProportional{*pivot, t};
  }
  return Proportional{ls, *pivot};
}

CheckResult zu_symmetry(const std::string& name, const FourField& f) {
  CheckResult c(name);
  const std::size_t n = f.size();
  for (std::size_t z = 0; z < n; ++z) {
    for (std::size_t u = z + 1; u < n; ++u) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          c.require_equal("(" + std::to_string(z + 1) + "," + std::to_string(u + 1) + "," + std::to_string(x + 1) +
                              "," + std::to_string(y + 1) + ")",
                          f(z, u, x, y), f(u, z, x, y));
        }
      }
    }
  }
  return c;
}

}  // namespace rpsym
