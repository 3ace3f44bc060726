#include <doctest.h>

#include <string>

#include "rpsym/error.hpp"
#include "rpsym/manifold.hpp"
#include "rpsym/parse.hpp"
#include "support.hpp"

using namespace rpsym;
using rpsym::testing::ExprGen;
using rpsym::testing::load_data;

namespace {

const char* const kExample =
    "dim 3\n"
    "coords x y z\n"
    "frame E1: z^2, 0, 0\n"
    "frame E2: 0, z^2, 0\n"
    "frame E3: 0, 0, 1\n"
    "metric 1 1 1\n"
    "metric 2 2 1\n"
    "metric 3 3 -1\n"
    "xi E3\n";

FrameVector vec(const Manifold& m, std::initializer_list<const char*> parts) {
  FrameVector v(m.dim());
  std::size_t i = 0;
  for (const char* p : parts) v[i++] = parse_expr(p, m.coordinates());
  return v;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("load the example manifold") {
  const Manifold m = load_manifold(kExample);
  CHECK(m.dim() == 3);
  CHECK(m.frame_names() == std::vector<std::string>{"E1", "E2", "E3"});
  REQUIRE(m.xi().has_value());
  CHECK(*m.xi() == 2);
  CHECK(m.metric()(2, 2) == Expr(-1));
  CHECK(m.metric()(0, 1).is_zero());
  CHECK(canonical_text(m.inverse_frame()(0, 0)) == "1/z^2");
}

TEST_CASE("comments, blank lines and off-diagonal metric entries") {
  const Manifold m = load_manifold(
      "# header\n\n  dim 2\ncoords u v\n  # frame next\nframe A: 1, 0\nframe B: 0, 1\n"
      "metric 1 2 1\n");
  CHECK(m.metric()(0, 1) == Expr(1));
  CHECK(m.metric()(1, 0) == Expr(1));
  CHECK(m.metric()(0, 0).is_zero());
  CHECK_FALSE(m.xi().has_value());
  CHECK_THROWS_AS(m.require_xi(), GeometryError);
}

TEST_CASE("geometric validation") {
  CHECK_THROWS_AS(load_manifold(replace(kExample, "metric 3 3 -1", "metric 3 3 1")), GeometryError);
  CHECK_THROWS_AS(load_manifold(replace(kExample, "frame E2: 0, z^2, 0", "frame E2: 2*z^2, 0, 0")), GeometryError);
  CHECK_THROWS_AS(load_manifold(replace(kExample, "metric 2 2 1", "metric 1 2 1\nmetric 2 2 1")), GeometryError);
  CHECK_THROWS_AS(load_manifold(replace(kExample, "metric 3 3 -1", "metric 3 3 -z")), GeometryError);
}

TEST_CASE("format errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      load_manifold(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(std::string(kExample) + "dim 3\n") == 10);
  CHECK(line_of(std::string(kExample) + "metric 2 1 0\nmetric 1 2 0\n") == 11);
  CHECK(line_of(std::string(kExample) + "xi E1\n") == 10);
  CHECK(line_of(replace(kExample, "xi E3", "xi E9")) == 9);
  CHECK(line_of(replace(kExample, "metric 3 3 -1", "tensor 3 3 -1")) == 8);
  CHECK(line_of(replace(kExample, "metric 3 3 -1", "metric 4 3 -1")) == 8);
  CHECK(line_of(replace(kExample, "frame E1: z^2, 0, 0", "frame E1: z^2, 0")) == 3);
  CHECK(line_of(replace(kExample, "frame E2", "frame E1")) == 4);
  CHECK(line_of(replace(kExample, "coords x y z", "coords x y y")) == 2);

  try {
    load_manifold(replace(kExample, "frame E1: z^2, 0, 0", "frame E1: w^2, 0, 0"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.position() == 10);
  }
  CHECK_THROWS_AS(load_manifold("dim 3\ncoords x y z\nframe E1: 1, 0, 0\n"), ParseError);
  CHECK_THROWS_AS(load_manifold("coords x y\n"), ParseError);
  CHECK_THROWS_AS(load_manifold("dim 1\ncoords x\nframe E: 1\n"), ParseError);
  CHECK_THROWS_AS(load_manifold_file("/nonexistent/none.mfd"), Error);
}

TEST_CASE("brackets of the example frame") {
  const Manifold m = load_manifold(kExample);
  CHECK(lie_bracket(m, 0, 2) == vec(m, {"-2/z", "0", "0"}));
  CHECK(lie_bracket(m, 1, 2) == vec(m, {"0", "-2/z", "0"}));
  CHECK(lie_bracket(m, 0, 1).is_zero());
  CHECK(lie_bracket(m, 2, 0) == vec(m, {"2/z", "0", "0"}));
  for (std::size_t i = 0; i < 3; ++i) CHECK(lie_bracket(m, i, i).is_zero());
}

TEST_CASE("brackets of the Minkowski and Milne frames") {
  const Manifold flat = load_data("minkowski3.mfd");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(lie_bracket(flat, i, j).is_zero());
  }
  const Manifold milne = load_data("milne3.mfd");
  CHECK(lie_bracket(milne, 0, 1) == vec(milne, {"-1/t", "0", "0"}));
  CHECK(lie_bracket(milne, 0, 2) == vec(milne, {"1/t", "0", "0"}));
  CHECK(lie_bracket(milne, 1, 2) == vec(milne, {"0", "1/t", "0"}));
}

TEST_CASE("apply_field and metric_pair examples") {
  const Manifold m = load_manifold(kExample);
  const Expr f = parse_expr("-2/z", m.coordinates());
  CHECK(apply_field(m, FrameVector::basis(3, 2), f) == parse_expr("2/z^2", m.coordinates()));
  CHECK(apply_field(m, FrameVector::basis(3, 0), f).is_zero());
  CHECK(apply_field(m, FrameVector(3), f).is_zero());
  CHECK(apply_field(m, FrameVector::basis(3, 0), parse_expr("x*y", m.coordinates())) ==
        parse_expr("y*z^2", m.coordinates()));
  CHECK(metric_pair(m, FrameVector::basis(3, 2), FrameVector::basis(3, 2)) == Expr(-1));
  CHECK(metric_pair(m, FrameVector::basis(3, 0), FrameVector::basis(3, 1)).is_zero());
  CHECK(metric_pair(m, vec(m, {"1", "0", "1"}), vec(m, {"z", "0", "1"})) == parse_expr("z - 1", m.coordinates()));
}

TEST_CASE("bracket antisymmetry over the corpus") {
  for (const char* name : {"example_lcs3.mfd", "minkowski3.mfd", "hyperbolic3.mfd", "warped4.mfd", "warped3z.mfd",
                           "milne3.mfd"}) {
    CAPTURE(name);
    const Manifold m = load_data(name);
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j) CHECK(lie_bracket(m, i, j) == -lie_bracket(m, j, i));
    }
  }
}

TEST_CASE("Jacobi identity for frame and random fields") {
  for (const char* name : {"example_lcs3.mfd", "hyperbolic3.mfd", "warped4.mfd", "milne3.mfd"}) {
    CAPTURE(name);
    const Manifold m = load_data(name);
    const std::size_t n = m.dim();
    auto jacobi = [&](const FrameVector& a, const FrameVector& b, const FrameVector& c) {
      return lie_bracket(m, lie_bracket(m, a, b), c) + lie_bracket(m, lie_bracket(m, b, c), a) +
             lie_bracket(m, lie_bracket(m, c, a), b);
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(jacobi(FrameVector::basis(n, i), FrameVector::basis(n, j), FrameVector::basis(n, k)).is_zero());
        }
      }
    }
    ExprGen gen(23, m.coordinates());
    for (int trial = 0; trial < 5; ++trial) CHECK(jacobi(gen.vector(n), gen.vector(n), gen.vector(n)).is_zero());
  }
}

TEST_CASE("general bracket agrees with the frame table") {
  const Manifold m = load_data("example_lcs3.mfd");
  ExprGen gen(29, m.coordinates());
  for (int trial = 0; trial < 10; ++trial) {
    const FrameVector u = gen.vector(3), v = gen.vector(3);
    CHECK(lie_bracket(m, u, v) == -lie_bracket(m, v, u));
    const Expr f = gen.expr();
    // [u, v] f = u(v f) - v(u f)
    CHECK(apply_field(m, lie_bracket(m, u, v), f) ==
          apply_field(m, u, apply_field(m, v, f)) - apply_field(m, v, apply_field(m, u, f)));
  }
}

TEST_CASE("apply_field is a derivation and metric_pair is symmetric") {
  for (const char* name : {"example_lcs3.mfd", "warped4.mfd", "milne3.mfd"}) {
    CAPTURE(name);
    const Manifold m = load_data(name);
    ExprGen gen(31, m.coordinates());
    for (int trial = 0; trial < 20; ++trial) {
      const FrameVector v = gen.vector(m.dim()), w = gen.vector(m.dim());
      const Expr f = gen.expr(), g = gen.expr();
      CHECK(apply_field(m, v, f * g) == apply_field(m, v, f) * g + f * apply_field(m, v, g));
      CHECK(metric_pair(m, v, w) == metric_pair(m, w, v));
    }
  }
}
