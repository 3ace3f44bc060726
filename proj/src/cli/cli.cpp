#include "rpsym/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "rpsym/error.hpp"
#include "rpsym/lcs.hpp"
#include "rpsym/manifold.hpp"
#include "rpsym/pseudosym.hpp"
#include "rpsym/zoo.hpp"

namespace rpsym {

std::string Report::render(bool machine) const {
  std::ostringstream os;
  if (machine) {
    for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
    for (std::size_t i = 0; i < warnings_.size(); ++i) os << "warning/" << i + 1 << " = " << warnings_[i] << '\n';
    return os.str();
  }
  std::string section;
  for (const auto& [k, v] : entries_) {
    const auto slash = k.find('/');
    if (slash == std::string::npos) {
      os << k << ": " << v << '\n';
      continue;
    }
    const std::string head = k.substr(0, slash);
    if (head != section) {
      os << '\n' << '[' << head << "]\n";
      section = head;
    }
    os << "  " << k.substr(slash + 1) << " = " << v << '\n';
  }
  if (!warnings_.empty()) {
    os << "\n[warnings]\n";
    for (const auto& w : warnings_) os << "  " << w << '\n';
  }
  return os.str();
}

namespace {

struct Options {
  std::string command;
  std::string file;
  bool paper = false;
  std::string convention;
  bool machine = false;
  bool check = false;
  std::string tensor;
  std::string at;
};

std::string idx(std::initializer_list<std::size_t> indices) {
  std::string out;
  for (std::size_t i : indices) {
    if (!out.empty()) out += '/';
    out += std::to_string(i + 1);
  }
  return out;
}

std::string tuple_text(const Tuple4& t) {
  return "(" + std::to_string(t[0] + 1) + "," + std::to_string(t[1] + 1) + "," + std::to_string(t[2] + 1) + "," +
         std::to_string(t[3] + 1) + ")";
}

std::string text(const Expr& e) { return canonical_text(e); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string point_text(const Point& p) {
  std::string out;
  for (const auto& [name, value] : p) {
    if (!out.empty()) out += ",";
    out += name + "=" + value.str();
  }
  return out;
}

Point parse_point(const std::string& spec, const Manifold& m) {
  Point p;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("--at expects <coord>=<rational>, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (!coordinate_index(m.coordinates(), name)) throw DomainError("--at names unknown coordinate '" + name + "'");
    p[name] = Rational::parse(item.substr(eq + 1));
  }
  return p;
}

void add_checks(Report& r, const std::string& prefix, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    r.add(prefix + c.name, c.passed ? "pass" : "fail");
    if (!c.passed) r.add(prefix + c.name + "/detail", c.detail);
  }
}

void manifold_section(Report& r, const Manifold& m) {
  const std::size_t n = m.dim();
  r.add("manifold/dim", std::to_string(n));
  std::string coords;
  for (const auto& c : *m.coordinates()) coords += (coords.empty() ? "" : " ") + c;
  r.add("manifold/coords", coords);
  for (std::size_t i = 0; i < n; ++i) {
    std::string row;
    for (std::size_t a = 0; a < n; ++a) row += (a == 0 ? "" : ", ") + text(m.frame()(i, a));
    r.add("manifold/frame/" + m.frame_names()[i], row);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!m.metric()(i, j).is_zero()) r.add("manifold/metric/" + idx({i, j}), text(m.metric()(i, j)));
    }
  }
  if (m.xi()) r.add("manifold/xi", m.frame_names()[*m.xi()]);
}

void curvature_section(Report& r, const Manifold& m, const Connection& conn, const CurvatureData& c) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!m.bracket(i, j)[k].is_zero()) r.add("curvature/bracket/" + idx({i, j, k}), text(m.bracket(i, j)[k]));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!conn(k, i, j).is_zero()) r.add("curvature/connection/" + idx({i, j, k}), text(conn(k, i, j)));
      }
    }
  }
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          if (c.riemann(l, i, j, k).is_zero()) continue;
          r.add("curvature/riemann/" + idx({i, j, k, l}), text(c.riemann(l, i, j, k)));
          ++nonzero;
        }
      }
    }
  }
  r.add("curvature/riemann/nonzero", std::to_string(nonzero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r.add("curvature/ricci/" + idx({i, j}), text(c.ricci(i, j)));
  }
  r.add("curvature/scalar", text(c.scalar));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!c.ricci_op(i, j).is_zero()) r.add("curvature/ricci_operator/" + idx({i, j}), text(c.ricci_op(i, j)));
    }
  }
}

void structure_section(Report& r, const Manifold& m, const LcsStructure& s) {
  const std::size_t n = m.dim();
  r.add("structure/alpha", text(s.alpha));
  r.add("structure/rho", text(s.rho));
  r.add("structure/beta", text(s.beta));
  for (std::size_t i = 0; i < n; ++i) r.add("structure/eta/" + idx({i}), text(s.eta[i]));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!s.phi(k, i).is_zero()) r.add("structure/phi/" + idx({i, k}), text(s.phi(k, i)));
    }
  }
  add_checks(r, "structure/check/", s.checks);
}

void conditions(Report& r, const std::string& prefix, const CriticalValue& cv, const std::optional<Point>& at) {
  r.add(prefix + "critical_value", text(cv.value));
  for (std::size_t i = 0; i < cv.conditions.size(); ++i) {
    r.add(prefix + "condition/" + std::to_string(i + 1), cv.conditions[i]);
  }
  if (at && cv.positive) {
    try {
      r.add(prefix + "condition/1/at_sample", yes_no(evaluate(*cv.positive, *at).sign() > 0));
    } catch (const DomainError&) {
      r.add(prefix + "condition/1/at_sample", "undefined");
    }
  }
}

void soliton_section(Report& r, const Pipeline& p, const std::optional<Point>& at) {
  const std::size_t n = p.manifold.dim();
  const SolitonReport s = soliton_report(p, at);
  r.add("soliton/lambda", text(s.lambda));
  r.add("soliton/lambda_constant", yes_no(s.classification.constant));
  r.add("soliton/almost_soliton", yes_no(!s.classification.constant));
  r.add("soliton/classification", label(s.classification));
  if (s.classification.point) r.add("soliton/sample", point_text(*s.classification.point));
  if (s.classification.value) r.add("soliton/lambda_value", s.classification.value->str());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) r.add("soliton/lie_xi_g/" + idx({i, j}), text(s.lie_xi_g(i, j)));
  }
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      r.add("soliton/residual/" + idx({i, j}), text(s.residual(i, j)));
      zeros += s.residual(i, j).is_zero() ? 1 : 0;
    }
  }
  r.add("soliton/residual/zero_components", std::to_string(zeros) + " of " + std::to_string(n * (n + 1) / 2));
  r.add("soliton/residual_trace", text(s.residual_trace));
  add_checks(r, "soliton/check/", s.checks);
  const bool lie_ok = std::all_of(s.checks.begin(), s.checks.end(),
                                  [](const CheckResult& c) { return c.name != "lie_metric" || c.passed; });
  if (lie_ok && !s.residual_trace.is_zero()) {
    throw InvariantError("soliton residual trace is " + text(s.residual_trace) + " with the trace-solved lambda");
  }
  for (const KindFormulas& f : s.formulas) {
    const std::string prefix = "soliton/" + std::string(to_string(f.kind)) + "/";
    if (f.error) {
      r.add(prefix + "error", *f.error);
      continue;
    }
    r.add(prefix + "theoretical_ls", text(*f.theoretical_ls));
    conditions(r, prefix, *f.critical, at);
  }
}

void ls_entries(Report& r, const std::string& prefix, const LsResult& res) {
  if (const auto* p = std::get_if<Proportional>(&res)) {
    r.add(prefix + "result", "proportional");
    r.add(prefix + "ls", text(p->ls));
    r.add(prefix + "pivot", tuple_text(p->pivot));
  } else if (const auto* np = std::get_if<NotProportional>(&res)) {
    r.add(prefix + "result", "not proportional");
    r.add(prefix + "pivot", tuple_text(np->pivot));
    r.add(prefix + "violation", tuple_text(np->violation));
  } else {
    r.add(prefix + "result", "degenerate");
  }
}

std::vector<TensorKind> selected_kinds(const std::string& tensor) {
  if (tensor.empty() || tensor == "all") return {kAllTensorKinds.begin(), kAllTensorKinds.end()};
  return {*parse_tensor_kind(tensor)};
}

// With several kinds requested, a kind undefined in this dimension is
// reported instead of aborting the run.
bool skip_undefined(Report& r, const std::string& prefix, const std::vector<TensorKind>& kinds, const DomainError& e) {
  if (kinds.size() == 1) return false;
  r.add(prefix + "error", e.what());
  return true;
}

void pseudosym_section(Report& r, const Manifold& m, const CurvatureData& c, const std::vector<TensorKind>& kinds) {
  const FourField q = tachibana(m.metric(), c.ricci);
  r.add("pseudosym/tachibana_zero", yes_no(q.is_zero()));
  for (TensorKind k : kinds) {
    const std::string prefix = "pseudosym/" + std::string(to_string(k)) + "/";
    ZooTensor t;
    try {
      t = build_tensor(m, c, k);
    } catch (const DomainError& e) {
      if (skip_undefined(r, prefix, kinds, e)) continue;
      throw;
    }
    if (t.warning) r.warn(*t.warning);
    r.add(prefix + "tensor_zero", yes_no(t.comps.is_zero()));
    ls_entries(r, prefix, solve_ls(derivation_action(t.comps, c.ricci), q));
  }
}

void audit_section(Report& r, const Pipeline& p, const std::vector<TensorKind>& kinds) {
  for (TensorKind k : kinds) {
    const std::string prefix = "audit/" + std::string(to_string(k)) + "/";
    TheoremAudit a;
    try {
      a = audit_theorem(p, k);
    } catch (const DomainError& e) {
      if (skip_undefined(r, prefix, kinds, e)) continue;
      throw;
    }
    if (a.warning) r.warn(*a.warning);
    ls_entries(r, prefix + "solver/", a.solver);
    r.add(prefix + "theoretical_ls", text(a.theoretical));
    if (a.difference) r.add(prefix + "difference", text(*a.difference));
    r.add(prefix + "verdict", std::string(to_string(a.verdict)));
    conditions(r, prefix, a.critical, std::nullopt);
    add_checks(r, prefix + "closed_form/", a.closed_forms);
  }
}

// Returns true when every invariant suite passes.
bool check_section(Report& r, const Manifold& m, const Connection& conn, const CurvatureData& c) {
  std::vector<CheckResult> checks = connection_checks(m, conn);
  for (auto& x : curvature_checks(m, c)) checks.push_back(std::move(x));
  const FourField q = tachibana(m.metric(), c.ricci);
  checks.push_back(zu_symmetry("tachibana_zu_symmetry", q));
  for (TensorKind k : kAllTensorKinds) {
    ZooTensor t;
    try {
      t = build_tensor(m, c, k);
    } catch (const DomainError&) {
      continue;
    }
    for (auto& x : zoo_checks(m.metric(), c, t)) checks.push_back(std::move(x));
    checks.push_back(zu_symmetry(std::string(to_string(k)) + "_action_zu_symmetry", derivation_action(t.comps, c.ricci)));
    if (k == TensorKind::conformal && m.dim() == 3) {
      if (c.convention == RicciConvention::trace) {
        CheckResult v("conformal_vanishes_in_dimension_3");
        for (std::size_t l = 0; l < 3; ++l) {
          for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
              for (std::size_t k = 0; k < 3; ++k) v.require_zero(idx({l, i, j, k}), {t.comps(l, i, j, k)});
            }
          }
        }
        checks.push_back(std::move(v));
      } else {
        r.add("check/info/conformal_dimension_3", t.comps.is_zero() ? "vanishes" : "nonzero under frame-sum");
      }
    }
  }
  if (m.xi()) {
    try {
      for (auto& x : derive_structure(m, conn, c).checks) checks.push_back(std::move(x));
    } catch (const GeometryError& e) {
      r.add("check/info/structure", e.what());
    }
  }
  add_checks(r, "check/", checks);
  const bool ok = all_passed(checks);
  r.add("check/count", std::to_string(checks.size()));
  r.add("check/status", ok ? "pass" : "fail");
  return ok;
}

int execute(const Options& o, std::ostream& out) {
  const std::optional<RicciConvention> parsed =
      o.convention.empty() ? std::nullopt : parse_ricci_convention(o.convention);
  if (o.paper && parsed == RicciConvention::trace) {
    throw DomainError("--paper-conventions requires the frame-sum Ricci convention");
  }
  const RicciConvention conv = parsed ? *parsed : (o.paper ? RicciConvention::frame_sum : RicciConvention::trace);
  if (!o.tensor.empty() && o.tensor != "all" && !parse_tensor_kind(o.tensor)) {
    throw DomainError("unknown tensor '" + o.tensor + "'");
  }

  Manifold m = load_manifold_file(o.file);
  Report r;
  r.add("input", o.file);
  r.add("command", o.command);
  r.add("convention", std::string(to_string(conv)));
  manifold_section(r, m);

  const Connection conn = koszul_connection(m);
  const CurvatureData c = compute_curvature(m, conn, conv);
  const std::vector<TensorKind> kinds = selected_kinds(o.tensor);

  if (o.command == "curvature" || o.command == "analyze" || o.command == "audit") curvature_section(r, m, conn, c);
  if (o.command == "analyze") {
    if (m.xi()) {
      try {
        structure_section(r, m, derive_structure(m, conn, c));
      } catch (const GeometryError& e) {
        r.add("structure/status", e.what());
      }
    }
    pseudosym_section(r, m, c, kinds);
  }
  if (o.command == "pseudosym") pseudosym_section(r, m, c, kinds);
  if (o.command == "soliton" || o.command == "audit") {
    const std::optional<Point> at = o.at.empty() ? std::nullopt : std::optional<Point>(parse_point(o.at, m));
    const Pipeline p(m, conv);
    structure_section(r, m, p.structure);
    soliton_section(r, p, at);
    if (o.command == "audit") audit_section(r, p, kinds);
  }

  bool ok = true;
  if (o.check) ok = check_section(r, m, conn, c);
  out << r.render(o.machine);
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact frame-based curvature, Ricci pseudosymmetry and Ricci soliton analysis.", "rpsym"};
  app.require_subcommand(1);
  app.add_flag("--paper-conventions", o.paper, "Use the frame-sum Ricci convention of the reference example");
  app.add_option("--ricci-convention", o.convention, "Ricci contraction")->check(CLI::IsMember({"trace", "frame-sum"}));
  app.add_flag("--machine", o.machine, "Line-oriented key = value output");
  app.add_flag("--check", o.check, "Run the invariant suites; exit 2 on any failure");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "Curvature, structure and pseudosymmetry overview"},
      {"curvature", "Brackets, connection, Riemann, Ricci and scalar curvature"},
      {"pseudosym", "Solve (T.S) = L_S Q(g,S) for one tensor"},
      {"soliton", "Ricci soliton data with xi as the soliton field"},
      {"audit", "Compare solved L_S with the closed-form values"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", o.file, "Manifold file")->required();
    if (name == "pseudosym") sub->add_option("--tensor", o.tensor, "Tensor kind or 'all'")->required();
    if (name == "audit" || name == "analyze") sub->add_option("--tensor", o.tensor, "Tensor kind or 'all'");
    if (name == "soliton" || name == "audit") sub->add_option("--at", o.at, "Sample point <coord>=<rational>,...");
    sub->callback([&o, name = name] { o.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    return execute(o, out);
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << o.file << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace rpsym
