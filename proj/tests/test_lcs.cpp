#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "rpsym/error.hpp"
#include "rpsym/lcs.hpp"
#include "rpsym/parse.hpp"
#include "support.hpp"

using namespace rpsym;
using rpsym::testing::ExprGen;
using rpsym::testing::load_data;

namespace {

Pipeline pipeline(const std::string& file, RicciConvention conv) { return Pipeline(load_data(file), conv); }

Expr P(const Pipeline& p, const std::string& text) { return parse_expr(text, p.manifold.coordinates()); }

ExprMatrix diag(const Pipeline& p, const std::vector<const char*>& entries) {
  ExprMatrix out(entries.size());
  std::size_t i = 0;
  for (const char* e : entries) {
    out(i, i) = P(p, e);
    ++i;
  }
  return out;
}

std::set<std::string> failing(const std::vector<CheckResult>& checks) {
  std::set<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.insert(c.name);
  }
  return out;
}

const char* const kCorpus[] = {"example_lcs3.mfd", "warped4.mfd", "warped3z.mfd", "milne3.mfd"};

// Expected values per manifold and convention: alpha, rho, beta, lambda, N diagonal.
struct Golden {
  const char* file;
  RicciConvention conv;
  const char* alpha;
  const char* rho;
  const char* beta;
  const char* lambda;
  std::vector<const char*> residual;
  std::map<TensorKind, const char*> theoretical;
};

const std::vector<Golden>& goldens() {
  using K = TensorKind;
  static const std::vector<Golden> g{
      {"example_lcs3.mfd", RicciConvention::frame_sum, "-2/z", "-2/z^2", "-4/z^3", "(4*z - 8)/(3*z^2)",
       {"-4*(z + 7)/(3*z^2)", "-4*(z + 7)/(3*z^2)", "-8*(z + 7)/(3*z^2)"},
       {{K::concircular, "14/(3*z^2)"},
        {K::projective, "-2*(z - 8)/z^3"},
        {K::w3, "(z^2 - 2*z + 48)/(3*z^3)"},
        {K::conharmonic, "2*(z - 17)/(3*z^2)"},
        {K::conformal, "2*(z - 11)/(3*z^2)"}}},
      {"example_lcs3.mfd", RicciConvention::trace, "-2/z", "-2/z^2", "-4/z^3", "4*(z - 8)/(3*z^2)",
       {"-4*(z + 1)/(3*z^2)", "-4*(z + 1)/(3*z^2)", "-8*(z + 1)/(3*z^2)"},
       {{K::concircular, "2/(3*z^2)"},
        {K::projective, "-2*(z - 32)/z^3"},
        {K::w3, "(z^2 + 10*z + 192)/(3*z^3)"},
        {K::conharmonic, "2*(z - 41)/(3*z^2)"},
        {K::conformal, "2*(z - 17)/(3*z^2)"}}},
      {"warped4.mfd", RicciConvention::frame_sum, "-2/z", "-2/z^2", "-4/z^3", "3*(z - 4)/(2*z^2)",
       {"(-z - 8)/z^2", "(-z - 8)/z^2", "(-z - 8)/z^2", "3*(-z - 8)/z^2"},
       {{K::concircular, "4/z^2"},
        {K::projective, "-3*(z - 12)/z^3"},
        {K::w3, "(z^2 - 6*z + 216)/(6*z^3)"},
        {K::conharmonic, "(z - 24)/(2*z^2)"},
        {K::conformal, "(z - 16)/(2*z^2)"}}},
      {"warped4.mfd", RicciConvention::trace, "-2/z", "-2/z^2", "-4/z^3", "3*(z - 10)/(2*z^2)",
       {"(-z - 2)/z^2", "(-z - 2)/z^2", "(-z - 2)/z^2", "3*(-z - 2)/z^2"},
       {{K::concircular, "1/z^2"},
        {K::projective, "-3*(z - 30)/z^3"},
        {K::w3, "(z^2 + 12*z + 540)/(6*z^3)"},
        {K::conharmonic, "(z - 42)/(2*z^2)"},
        {K::conformal, "(z - 22)/(2*z^2)"}}},
      {"warped3z.mfd", RicciConvention::trace, "1/z", "1/z^2", "2/z^3", "-2*(z + 1)/(3*z^2)",
       {"2*(z + 1)/(3*z^2)", "2*(z + 1)/(3*z^2)", "4*(z + 1)/(3*z^2)"},
       {{K::concircular, "-1/(3*z^2)"},
        {K::projective, "0"},
        {K::w3, "-(z - 2)/(6*z^2)"},
        {K::conharmonic, "-(z + 4)/(3*z^2)"},
        {K::conformal, "-(z + 1)/(3*z^2)"}}},
      {"milne3.mfd", RicciConvention::trace, "1/t", "1/t^2", "2/t^3", "-2/(3*t)",
       {"2/(3*t)", "2/(3*t)", "4/(3*t)"},
       {{K::concircular, "0"},
        {K::projective, "0"},
        {K::w3, "-1/(6*t)"},
        {K::conharmonic, "-1/(3*t)"},
        {K::conformal, "-1/(3*t)"}}},
  };
  return g;
}

}  // namespace

TEST_CASE("structure of the example") {
  const Pipeline p = pipeline("example_lcs3.mfd", RicciConvention::frame_sum);
  const LcsStructure& s = p.structure;
  CHECK(canonical_text(s.alpha) == "-2/z");
  CHECK(canonical_text(s.rho) == "-2/z^2");
  CHECK(canonical_text(s.beta) == "-4/z^3");
  CHECK(s.eta == std::vector<Expr>{Expr(), Expr(), Expr(-1)});
  for (std::size_t k = 0; k < 3; ++k) CHECK(s.phi(k, 2).is_zero());
  CHECK(s.phi(0, 0) == Expr(1));
  CHECK(s.phi(1, 1) == Expr(1));
  CHECK(s.checks.size() == 19);
  for (const auto& c : s.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("goldens over the corpus") {
  for (const Golden& g : goldens()) {
    CAPTURE(g.file);
    CAPTURE(to_string(g.conv));
    const Pipeline p = pipeline(g.file, g.conv);
    CHECK(p.structure.alpha == P(p, g.alpha));
    CHECK(p.structure.rho == P(p, g.rho));
    CHECK(p.structure.beta == P(p, g.beta));
    CHECK(p.lambda == P(p, g.lambda));
    CHECK(failing(p.structure.checks).empty());

    const SolitonReport rep = soliton_report(p);
    CHECK(rep.residual == diag(p, g.residual));
    CHECK(rep.residual_trace.is_zero());
    CHECK_FALSE(rep.classification.constant);
    CHECK(rep.classification.type == SolitonType::indeterminate);
    CHECK(failing(rep.checks) == std::set<std::string>{"soliton_ricci", "soliton_ricci_operator", "soliton_ricci_xi"});
    for (const KindFormulas& f : rep.formulas) {
      CAPTURE(to_string(f.kind));
      REQUIRE(f.theoretical_ls.has_value());
      CHECK(*f.theoretical_ls == P(p, g.theoretical.at(f.kind)));
    }
  }
}

TEST_CASE("lambda of the example in factored form") {
  const Pipeline p = pipeline("example_lcs3.mfd", RicciConvention::frame_sum);
  CHECK(p.lambda == P(p, "(4/3)*(1/z - 2/z^2)"));
  CHECK(canonical_text(p.lambda) == "(4*z - 8)/(3*z^2)");
  CHECK(evaluate(p.lambda, {{"x", 1}, {"y", 1}, {"z", 4}}) == Rational(1, 6));
  // r = −λn − (n−1)α round trip
  CHECK(-(p.lambda * Expr(3)) - Expr(2) * p.structure.alpha == p.curvature.scalar);
  CHECK(solve_lambda_trace(3, Expr(), Expr()).is_zero());
}

TEST_CASE("lie derivative of the metric") {
  const Pipeline p = pipeline("example_lcs3.mfd", RicciConvention::frame_sum);
  const ExprMatrix lie = lie_derivative_metric(p.manifold, p.connection);
  CHECK(lie == diag(p, {"-4/z", "-4/z", "0"}));
  CHECK(canonical_text(lie(0, 0)) == "-4/z");

  const Manifold flat = load_data("minkowski3.mfd");
  CHECK(lie_derivative_metric(flat, koszul_connection(flat)).is_zero());
  CHECK_THROWS_AS(lie_derivative_metric(load_data("hyperbolic3.mfd"), koszul_connection(load_data("hyperbolic3.mfd"))),
                  GeometryError);
}

TEST_CASE("lie derivative agrees with the bracket formula") {
  for (const char* name : {"example_lcs3.mfd", "warped4.mfd", "warped3z.mfd", "milne3.mfd", "minkowski3.mfd"}) {
    CAPTURE(name);
    const Manifold m = load_data(name);
    const std::size_t n = m.dim();
    const std::size_t xi = *m.xi();
    const ExprMatrix lie = lie_derivative_metric(m, koszul_connection(m));
    CHECK(lie.is_symmetric());
    const FrameVector x = FrameVector::basis(n, xi);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const FrameVector ei = FrameVector::basis(n, i), ej = FrameVector::basis(n, j);
        // ξ g(X,Y) − g([ξ,X],Y) − g(X,[ξ,Y])
        const Expr direct = m.apply_frame(xi, m.metric()(i, j)) - metric_pair(m, lie_bracket(m, x, ei), ej) -
                            metric_pair(m, ei, lie_bracket(m, x, ej));
        CHECK(lie(i, j) == direct);
      }
    }
  }
}

TEST_CASE("trace of the soliton residual vanishes with the trace-solved lambda") {
  for (const char* name : kCorpus) {
    for (auto conv : {RicciConvention::trace, RicciConvention::frame_sum}) {
      CAPTURE(name);
      const Pipeline p = pipeline(name, conv);
      const SolitonResidual res = soliton_residual(
          p.manifold, lie_derivative_metric(p.manifold, p.connection), p.curvature.ricci, p.lambda);
      CHECK(res.trace.is_zero());
    }
  }
}

TEST_CASE("exact soliton data has zero residual") {
  const Pipeline p = pipeline("example_lcs3.mfd", RicciConvention::frame_sum);
  const ExprMatrix& g = p.manifold.metric();
  const std::vector<Expr>& eta = p.structure.eta;
  const Expr alpha = p.structure.alpha;
  ExprGen gen(61, p.manifold.coordinates());
  for (int trial = 0; trial < 5; ++trial) {
    const Expr lambda(gen.small_rational());
    CurvatureData c = p.curvature;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) c.ricci(i, j) = -((alpha + lambda) * g(i, j)) - alpha * eta[i] * eta[j];
    }
    c.ricci_op = ricci_operator(p.manifold, c.ricci);
    const ExprMatrix lie = lie_derivative_metric(p.manifold, p.connection);
    CHECK(soliton_residual(p.manifold, lie, c.ricci, lambda).residual.is_zero());
    CHECK(failing(soliton_checks(p.manifold, c, p.structure, lie, lambda)).empty());
  }
}

TEST_CASE("structure errors") {
  const Manifold hyp = load_data("hyperbolic3.mfd");
  const Connection hc = koszul_connection(hyp);
  CHECK_THROWS_AS(derive_structure(hyp, hc, compute_curvature(hyp, hc, RicciConvention::trace)), GeometryError);

  // parallel ξ: α = 0
  CHECK_THROWS_AS(pipeline("minkowski3.mfd", RicciConvention::trace), GeometryError);

  // different warping rates along E1 and E2
  CHECK_THROWS_WITH_AS(Pipeline(load_manifold("dim 3\ncoords x y t\nframe E1: t, 0, 0\nframe E2: 0, t^2, 0\n"
                                              "frame E3: 0, 0, 1\nmetric 1 1 1\nmetric 2 2 1\nmetric 3 3 -1\nxi E3\n"),
                                RicciConvention::trace),
                       doctest::Contains("no single alpha"), GeometryError);

  // α depends on x, so dα is not a multiple of η
  CHECK_THROWS_WITH_AS(Pipeline(load_manifold("dim 3\ncoords x y t\nframe E1: x + t, 0, 0\nframe E2: 0, x + t, 0\n"
                                              "frame E3: 0, 0, 1\nmetric 1 1 1\nmetric 2 2 1\nmetric 3 3 -1\nxi E3\n"),
                                RicciConvention::trace),
                       doctest::Contains("alpha"), GeometryError);
}

TEST_CASE("classification") {
  CHECK(classify(Expr()).type == SolitonType::steady);
  CHECK(label(classify(Expr())) == "steady");
  CHECK(classify(Expr(-1)).type == SolitonType::shrinking);
  CHECK(classify(Expr(Rational(1, 7))).type == SolitonType::expanding);

  const Pipeline p = pipeline("example_lcs3.mfd", RicciConvention::frame_sum);
  const Classification none = classify(p.lambda);
  CHECK_FALSE(none.constant);
  CHECK(label(none) == "indeterminate");
  const Classification at2 = classify(p.lambda, Point{{"x", 1}, {"y", 1}, {"z", 2}});
  CHECK(at2.type == SolitonType::steady);
  CHECK(label(at2) == "steady-at-point");
  CHECK(*at2.value == Rational(0));
  const Classification at4 = classify(p.lambda, Point{{"x", 1}, {"y", 1}, {"z", 4}});
  CHECK(label(at4) == "expanding-at-point");
  CHECK(label(classify(p.lambda, Point{{"x", 1}, {"y", 1}, {"z", 1}})) == "shrinking-at-point");
  CHECK_THROWS_AS(classify(p.lambda, Point{{"x", 1}, {"y", 1}, {"z", 0}}), DomainError);

  const SolitonReport rep = soliton_report(p, Point{{"x", 1}, {"y", 1}, {"z", 2}});
  CHECK(label(rep.classification) == "steady-at-point");
}

TEST_CASE("classification agrees with the sign of constant lambda") {
  ExprGen gen(67, make_coordinates({"z"}));
  for (int trial = 0; trial < 200; ++trial) {
    const Rational v = gen.small_rational();
    const Classification c = classify(Expr(v));
    CHECK(c.constant);
    const SolitonType expected =
        v.sign() < 0 ? SolitonType::shrinking : (v.sign() == 0 ? SolitonType::steady : SolitonType::expanding);
    CHECK(c.type == expected);
  }
}

TEST_CASE("theoretical values on the example data") {
  const Coordinates z = make_coordinates({"z"});
  const Expr alpha = parse_expr("-2/z", z), rho = parse_expr("-2/z^2", z);
  const Expr lambda = parse_expr("(4/3)*(1/z - 2/z^2)", z);
  CHECK(canonical_text(theoretical_ls(TensorKind::concircular, alpha, rho, lambda, 3)) == "14/(3*z^2)");
  CHECK(theoretical_ls(TensorKind::conformal, alpha, rho, Expr(), 3) == -(alpha * alpha - rho));
  CHECK(critical_value(TensorKind::concircular, alpha, rho, 3).value == parse_expr("-2/(3*z) + 6/z^2", z));
  CHECK(critical_value(TensorKind::conformal, alpha, rho, 3).value == -(alpha * alpha - rho));
  CHECK(critical_value(TensorKind::conharmonic, Expr(), rho, 4).value == rho);
  CHECK(critical_value(TensorKind::concircular, alpha, rho, 3).conditions.empty());

  const CriticalValue proj = critical_value(TensorKind::projective, alpha, rho, 3);
  CHECK(proj.value == parse_expr("6/z^2", z));
  CHECK(proj.conditions == std::vector<std::string>{"alpha/(alpha^2 - rho) > 0", "alpha > alpha^2 - rho"});
  CHECK(*proj.positive == parse_expr("-z/3", z));
  const CriticalValue w3 = critical_value(TensorKind::w3, alpha, rho, 3);
  CHECK(w3.value == parse_expr("6/z^2 + 1/z", z));
  CHECK(w3.conditions.size() == 2);
  CHECK(*w3.positive == parse_expr("(-4/z)/(24/z^2 + 2/z)", z));

  CHECK_THROWS_AS(theoretical_ls(TensorKind::projective, Expr(), rho, lambda, 3), DomainError);
  CHECK_THROWS_AS(theoretical_ls(TensorKind::conharmonic, alpha, rho, lambda, 2), DomainError);
  CHECK_THROWS_AS(lambda_from_ls(TensorKind::projective, Expr(1), Expr(1), lambda, 3), DomainError);
}

TEST_CASE("inverse formulas recover lambda symbolically") {
  const Coordinates arl = make_coordinates({"alpha", "rho", "lambda"});
  const Expr alpha = Expr::variable(arl, "alpha"), rho = Expr::variable(arl, "rho"), lambda = Expr::variable(arl, "lambda");
  for (std::size_t n : {3, 4, 5}) {
    for (TensorKind k : kAllTensorKinds) {
      CAPTURE(n);
      CAPTURE(to_string(k));
      const Expr ls = theoretical_ls(k, alpha, rho, lambda, n);
      CHECK(lambda_from_ls(k, alpha, rho, ls, n) == lambda);
    }
    // w3 = projective − (α + λ)/(n − 1)
    CHECK(theoretical_ls(TensorKind::w3, alpha, rho, lambda, n) ==
          theoretical_ls(TensorKind::projective, alpha, rho, lambda, n) -
              (alpha + lambda) / Expr(static_cast<long>(n - 1)));
  }
}

TEST_CASE("inverse formulas on random rational data") {
  const Coordinates z = make_coordinates({"z"});
  ExprGen gen(71, z);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Expr alpha = gen.expr(), rho = gen.expr(), lambda = gen.expr();
    const std::size_t n = static_cast<std::size_t>(std::uniform_int_distribution<int>(3, 7)(gen.rng()));
    for (TensorKind k : kAllTensorKinds) {
      try {
        const Expr ls = theoretical_ls(k, alpha, rho, lambda, n);
        CHECK(lambda_from_ls(k, alpha, rho, ls, n) == lambda);
        ++checked;
      } catch (const DomainError&) {
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("audit of the example") {
  const Pipeline p = pipeline("example_lcs3.mfd", RicciConvention::frame_sum);
  const TheoremAudit c = audit_theorem(p, TensorKind::concircular);
  REQUIRE(std::holds_alternative<Proportional>(c.solver));
  CHECK(canonical_text(std::get<Proportional>(c.solver).ls) == "14/(3*z^2)");
  CHECK(canonical_text(c.theoretical) == "14/(3*z^2)");
  REQUIRE(c.difference.has_value());
  CHECK(c.difference->is_zero());
  CHECK(c.verdict == Verdict::agree);
  CHECK(failing(c.closed_forms).empty());

  const std::map<TensorKind, Verdict> expected{{TensorKind::projective, Verdict::disagree},
                                               {TensorKind::w3, Verdict::not_proportional},
                                               {TensorKind::conharmonic, Verdict::disagree},
                                               {TensorKind::conformal, Verdict::disagree}};
  for (const auto& [kind, verdict] : expected) {
    CAPTURE(to_string(kind));
    const TheoremAudit a = audit_theorem(p, kind);
    CHECK(a.verdict == verdict);
    CHECK(failing(a.closed_forms).size() == 2);
    if (a.difference) {
      // spot value at z = 3 (the projective difference happens to vanish at z = 2)
      const Rational d = evaluate(*a.difference, {{"x", 1}, {"y", 1}, {"z", 3}});
      CHECK_FALSE(d.is_zero());
    }
  }
  CHECK(audit_theorem(p, TensorKind::conformal).warning.has_value());
  CHECK(*audit_theorem(p, TensorKind::conformal).difference == P(p, "-2*(z - 11)/(3*z^2)"));
}

TEST_CASE("audit of a flat frame is degenerate but still reports the formula") {
  const Pipeline p = pipeline("milne3.mfd", RicciConvention::trace);
  for (TensorKind k : kAllTensorKinds) {
    const TheoremAudit a = audit_theorem(p, k);
    CHECK(a.verdict == Verdict::degenerate);
    CHECK_FALSE(a.difference.has_value());
  }
  CHECK(audit_theorem(p, TensorKind::w3).theoretical == P(p, "-1/(6*t)"));
}

TEST_CASE("structure and closed-form identities hold numerically") {
  const std::vector<Point> points{{{"x", 1}, {"y", 1}, {"z", 2}, {"w", 3}, {"t", 2}},
                                  {{"x", 1}, {"y", 1}, {"z", 3}, {"w", -1}, {"t", Rational(5, 2)}},
                                  {{"x", 1}, {"y", 1}, {"z", 5}, {"w", 2}, {"t", 7}}};
  for (const char* name : kCorpus) {
    CAPTURE(name);
    const Pipeline p = pipeline(name, RicciConvention::trace);
    std::vector<CheckResult> checks = p.structure.checks;
    for (auto& c : audit_theorem(p, TensorKind::concircular).closed_forms) checks.push_back(std::move(c));
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CHECK(c.passed);
      for (const auto& pt : points) CHECK(numeric_failures(c, pt) == 0);
    }
  }
}
