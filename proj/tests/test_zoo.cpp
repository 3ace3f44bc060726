#include <doctest.h>

#include <string>

#include "rpsym/error.hpp"
#include "rpsym/parse.hpp"
#include "rpsym/zoo.hpp"
#include "support.hpp"

using namespace rpsym;
using rpsym::testing::load_data;

namespace {

CurvatureData curvature_of(const Manifold& m, RicciConvention conv) {
  return compute_curvature(m, koszul_connection(m), conv);
}

// Expected vanishing of each tensor, in kAllTensorKinds order.
void check_zero_pattern(const std::string& file, RicciConvention conv, std::array<bool, 5> expected) {
  const Manifold m = load_data(file);
  const CurvatureData c = curvature_of(m, conv);
  for (std::size_t i = 0; i < kAllTensorKinds.size(); ++i) {
    CAPTURE(file);
    CAPTURE(to_string(conv));
    CAPTURE(to_string(kAllTensorKinds[i]));
    CHECK(build_tensor(m, c, kAllTensorKinds[i]).comps.is_zero() == expected[i]);
  }
}

}  // namespace

TEST_CASE("tensor kind names round trip") {
  for (TensorKind k : kAllTensorKinds) CHECK(parse_tensor_kind(to_string(k)) == k);
  CHECK_FALSE(parse_tensor_kind("weyl").has_value());
}

TEST_CASE("concircular component of the example") {
  const Manifold m = load_data("example_lcs3.mfd");
  const CurvatureData c = curvature_of(m, RicciConvention::frame_sum);
  const ZooTensor t = build_tensor(m, c, TensorKind::concircular);
  CHECK(canonical_text(t.comps(0, 0, 1, 1)) == "8/(3*z^2)");
  CHECK_FALSE(t.warning.has_value());
}

TEST_CASE("vanishing patterns over the corpus") {
  const bool Z = true, N = false;
  check_zero_pattern("example_lcs3.mfd", RicciConvention::frame_sum, {N, N, N, N, N});
  check_zero_pattern("example_lcs3.mfd", RicciConvention::trace, {N, N, N, N, Z});
  check_zero_pattern("hyperbolic3.mfd", RicciConvention::trace, {Z, Z, N, N, Z});
  check_zero_pattern("warped4.mfd", RicciConvention::frame_sum, {N, N, N, N, N});
  check_zero_pattern("warped4.mfd", RicciConvention::trace, {N, N, N, N, Z});
  check_zero_pattern("warped3z.mfd", RicciConvention::trace, {N, N, N, N, Z});
  check_zero_pattern("milne3.mfd", RicciConvention::trace, {Z, Z, Z, Z, Z});
  check_zero_pattern("minkowski3.mfd", RicciConvention::frame_sum, {Z, Z, Z, Z, Z});
}

TEST_CASE("conformal tensor vanishes on every 3-manifold of the corpus under the trace convention") {
  for (const char* name : {"example_lcs3.mfd", "minkowski3.mfd", "hyperbolic3.mfd", "warped3z.mfd", "milne3.mfd"}) {
    CAPTURE(name);
    const Manifold m = load_data(name);
    const ZooTensor t = build_tensor(m, curvature_of(m, RicciConvention::trace), TensorKind::conformal);
    CHECK(t.comps.is_zero());
    CHECK(t.warning.has_value());
  }
}

TEST_CASE("dimension limits") {
  const Manifold m2 = load_manifold("dim 2\ncoords x y\nframe A: y, 0\nframe B: 0, y\nmetric 1 1 1\nmetric 2 2 1\n");
  const CurvatureData c = curvature_of(m2, RicciConvention::trace);
  CHECK_THROWS_AS(build_tensor(m2, c, TensorKind::conharmonic), DomainError);
  CHECK_THROWS_AS(build_tensor(m2, c, TensorKind::conformal), DomainError);
  CHECK_NOTHROW(build_tensor(m2, c, TensorKind::concircular));
  CHECK_NOTHROW(build_tensor(m2, c, TensorKind::projective));
  CHECK_NOTHROW(build_tensor(m2, c, TensorKind::w3));
  const Manifold m4 = load_data("warped4.mfd");
  CHECK_FALSE(build_tensor(m4, curvature_of(m4, RicciConvention::trace), TensorKind::conformal).warning.has_value());
}

TEST_CASE("structural identities hold on the corpus") {
  for (const char* name : {"example_lcs3.mfd", "hyperbolic3.mfd", "warped4.mfd", "warped3z.mfd"}) {
    const Manifold m = load_data(name);
    for (auto conv : {RicciConvention::trace, RicciConvention::frame_sum}) {
      const CurvatureData c = curvature_of(m, conv);
      for (TensorKind k : kAllTensorKinds) {
        for (const auto& check : zoo_checks(m.metric(), c, build_tensor(m, c, k))) {
          CAPTURE(name);
          CAPTURE(check.name);
          CAPTURE(check.detail);
          CHECK(check.passed);
        }
      }
    }
  }
}

TEST_CASE("every tensor reduces to R when S, Q and r vanish") {
  const Manifold m = load_data("example_lcs3.mfd");
  CurvatureData c = curvature_of(m, RicciConvention::frame_sum);
  c.ricci = ExprMatrix(3);
  c.ricci_op = ExprMatrix(3);
  c.scalar = Expr();
  for (TensorKind k : kAllTensorKinds) {
    CAPTURE(to_string(k));
    CHECK(build_tensor(m, c, k).comps == c.riemann);
  }
}

TEST_CASE("contractions with xi") {
  const Manifold m = load_data("example_lcs3.mfd");
  const CurvatureData c = curvature_of(m, RicciConvention::frame_sum);
  const ZooTensor t = build_tensor(m, c, TensorKind::concircular);
  const XiContraction x = tensor_of_xi(m, t.comps);
  const Coordinates& xyz = m.coordinates();
  // [(α² − ρ) − r/6] [η(E3)E1 − η(E1)E3] with α² − ρ = 6/z², r = 8/z², η(E3) = −1
  const Expr coeff = parse_expr("6/z^2 - 8/(6*z^2)", xyz);
  CHECK(x.t_xi[0 * 3 + 2] == FrameVector({-coeff, Expr(), Expr()}));
  for (std::size_t i = 0; i < 3; ++i) CHECK(x.t_xi[i * 3 + i].is_zero());
  // η(C(E1,E3)E1) = [r/6 − (α² − ρ)] [η(E3) g(E1,E1) − η(E1) g(E3,E1)]
  CHECK(x.eta_t[(0 * 3 + 2) * 3 + 0] == coeff);

  const Manifold hyp = load_data("hyperbolic3.mfd");
  CHECK_THROWS_AS(tensor_of_xi(hyp, t.comps), GeometryError);

  const Manifold flat = load_data("minkowski3.mfd");
  const CurvatureData fc = curvature_of(flat, RicciConvention::frame_sum);
  const XiContraction fx = tensor_of_xi(flat, build_tensor(flat, fc, TensorKind::w3).comps);
  for (const auto& v : fx.t_xi) CHECK(v.is_zero());
  for (const auto& e : fx.eta_t) CHECK(e.is_zero());
}

TEST_CASE("metric wedge") {
  const Manifold m = load_data("example_lcs3.mfd");
  const Tensor4 w = metric_wedge(m.metric());
  CHECK(w(0, 0, 2, 2) == Expr(-1));
  CHECK(w(2, 2, 0, 0) == Expr(1));
  CHECK(w(0, 0, 0, 0).is_zero());
}
