#pragma once

#include <random>
#include <string>

#include "rpsym/expr.hpp"
#include "rpsym/linalg.hpp"
#include "rpsym/manifold.hpp"

namespace rpsym::testing {

// Small random rational functions over a coordinate list.
class ExprGen {
 public:
  ExprGen(unsigned seed, Coordinates coords) : rng_(seed), coords_(std::move(coords)) {}

  Polynomial poly(int max_terms = 3, int max_deg = 2) {
    Polynomial p;
    std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg), coef(-4, 4);
    const int t = nterms(rng_);
    for (int i = 0; i < t; ++i) {
      Polynomial term(Rational(coef(rng_)));
      for (std::size_t v = 0; v < coords_->size(); ++v) term *= Polynomial::variable(coords_, v).pow(deg(rng_));
      p += term;
    }
    return p;
  }

  Expr expr() {
    Polynomial den;
    do {
      den = poly(2, 2);
    } while (den.is_zero());
    return Expr(poly(), den);
  }

  Rational small_rational() {
    std::uniform_int_distribution<int> n(-9, 9), d(1, 5);
    return Rational(n(rng_), d(rng_));
  }

  Rational small_integer(int lo, int hi) { return Rational(std::uniform_int_distribution<int>(lo, hi)(rng_)); }

  // A frame vector with small constant or linear-over-constant components.
  FrameVector vector(std::size_t n) {
    FrameVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Expr(poly(2, 1), Polynomial(Rational(1 + static_cast<long>(i))));
    return v;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  Coordinates coords_;
};

inline Manifold load_data(const std::string& name) { return load_manifold_file(std::string(RPSYM_DATA_DIR) + "/" + name); }

}  // namespace rpsym::testing
