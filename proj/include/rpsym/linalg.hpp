#pragma once

#include <cstddef>
#include <vector>

#include "rpsym/expr.hpp"

namespace rpsym {

/// Dense square matrix of expressions, row-major.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  explicit ExprMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static ExprMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Expr& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  bool is_zero() const;
  bool is_symmetric() const;
  /// Diagonal with every diagonal entry equal to +1 or -1.
  bool is_orthonormal_signature() const;

  friend bool operator==(const ExprMatrix&, const ExprMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Expr> data_;
};

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);

/// Exact determinant by fraction-field Gaussian elimination.
Expr determinant(const ExprMatrix& m);

/// Exact inverse; throws DomainError if singular.
ExprMatrix inverse(const ExprMatrix& m);

/// Vector field expanded in a frame: v = sum_i v[i] E_i.
class FrameVector {
 public:
  FrameVector() = default;
  explicit FrameVector(std::size_t n) : c_(n) {}
  explicit FrameVector(std::vector<Expr> components) : c_(std::move(components)) {}

  /// The frame field E_i itself.
  static FrameVector basis(std::size_t n, std::size_t i);

  std::size_t size() const { return c_.size(); }
  Expr& operator[](std::size_t i) { return c_[i]; }
  const Expr& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Expr>& components() const { return c_; }

  bool is_zero() const;

  FrameVector& operator+=(const FrameVector& o);
  FrameVector& operator-=(const FrameVector& o);
  FrameVector& operator*=(const Expr& f);
  friend FrameVector operator+(FrameVector a, const FrameVector& b) { return a += b; }
  friend FrameVector operator-(FrameVector a, const FrameVector& b) { return a -= b; }
  friend FrameVector operator*(const Expr& f, FrameVector v) { return v *= f; }
  FrameVector operator-() const;

  friend bool operator==(const FrameVector&, const FrameVector&) = default;

 private:
  std::vector<Expr> c_;
};

}  // namespace rpsym
