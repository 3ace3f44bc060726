#include "rpsym/linalg.hpp"

#include <algorithm>
#include <utility>

#include "rpsym/error.hpp"

namespace rpsym {

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

bool ExprMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

bool ExprMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

bool ExprMatrix::is_orthonormal_signature() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const Expr& e = (*this)(i, j);
      if (i != j) {
        if (!e.is_zero()) return false;
      } else if (!(e == Expr(1) || e == Expr(-1))) {
        return false;
      }
    }
  }
  return true;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  const std::size_t n = a.size();
  ExprMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr s;
      for (std::size_t k = 0; k < n; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        s += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(s);
    }
  }
  return out;
}

Expr determinant(const ExprMatrix& m_in) {
  ExprMatrix m = m_in;
  const std::size_t n = m.size();
  Expr det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Expr();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Expr f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

ExprMatrix inverse(const ExprMatrix& m_in) {
  ExprMatrix m = m_in;
  const std::size_t n = m.size();
  ExprMatrix inv = ExprMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw DomainError("matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Expr p = m(col, col);
    if (!(p == Expr(1))) {
      for (std::size_t j = 0; j < n; ++j) {
        m(col, j) /= p;
        inv(col, j) /= p;
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      const Expr f = m(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(col, j).is_zero()) m(r, j) -= f * m(col, j);
        if (!inv(col, j).is_zero()) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

FrameVector FrameVector::basis(std::size_t n, std::size_t i) {
  FrameVector v(n);
  v[i] = Expr(1);
  return v;
}

bool FrameVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Expr& e) { return e.is_zero(); });
}

FrameVector& FrameVector::operator+=(const FrameVector& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FrameVector& FrameVector::operator-=(const FrameVector& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FrameVector& FrameVector::operator*=(const Expr& f) {
  for (auto& c : c_) c *= f;
  return *this;
}

FrameVector FrameVector::operator-() const {
  FrameVector out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

}  // namespace rpsym
