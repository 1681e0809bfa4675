#include "nij/report.hpp"

#include <sstream>

#include "nij/tangent.hpp"

namespace nij {

using nlohmann::ordered_json;

namespace {

ordered_json jvec(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json config_echo(const ProblemSpec& spec) {
  const Sampler s = spec.effective_sampler();
  ordered_json cfg;
  cfg["torsion_tol"] = spec.torsion_tol;
  cfg["fd_step"] = spec.fd_step;
  cfg["seed"] = s.seed;
  cfg["samples"] = s.count;
  cfg["box_lo"] = jvec(s.lo);
  cfg["box_hi"] = jvec(s.hi);
  return cfg;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const char* pf(bool ok) { return ok ? "pass" : "FAIL"; }

}  // namespace

std::string Report::render(bool machine_format) const {
  if (machine_format) return machine.dump(2) + "\n";
  return human;
}

// ---------------------------------------------------------------------------
// torsion

Report cmd_torsion(const ProblemSpec& spec, const std::string& operator_name) {
  const NOperatorField& N = spec.resolve_operator(operator_name);
  const Sampler sampler = spec.effective_sampler();
  const double tol = spec.torsion_tol;
  const int n = N.dim();

  struct PairStat {
    int i, j;
    double worst = 0.0;
  };
  std::vector<PairStat> pairs;
  TorsionReport worst;
  worst.norm = -1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});

  for (const auto& p : sampler.points()) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++idx) {
        const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, i);
        const Eigen::VectorXd v = Eigen::VectorXd::Unit(n, j);
        const Eigen::VectorXd t = torsion_tensor(N, u, v, p);
        const double norm = t.cwiseAbs().maxCoeff();
        pairs[idx].worst = std::max(pairs[idx].worst, norm);
        if (norm > worst.norm) worst = {p, u, v, t, TorsionMethod::Tensor, norm};
      }
  }
  if (worst.norm < 0.0) worst.norm = 0.0;
  const bool ok = worst.norm <= tol;

  Report rep;
  rep.command = "torsion";
  rep.exit_code = ok ? kPass : kVerdictFailed;
  rep.machine["command"] = "torsion";
  rep.machine["operator"] = operator_name;
  rep.machine["config"] = config_echo(spec);
  rep.machine["verdicts"]["nijenhuis"] = ok;
  ordered_json jp = ordered_json::array();
  for (const auto& ps : pairs)
    jp.push_back({{"i", ps.i + 1}, {"j", ps.j + 1}, {"worst_norm", ps.worst}});
  rep.machine["pairs"] = jp;
  rep.machine["worst"]["norm"] = worst.norm;
  if (worst.point.size()) {
    rep.machine["worst"]["point"] = jvec(worst.point);
    rep.machine["worst"]["torsion"] = jvec(worst.torsion_value);
  }

  std::ostringstream h;
  h << "torsion " << operator_name << ": " << pf(ok)
    << " (worst norm " << fmt(worst.norm) << ", tol " << fmt(tol) << ")\n";
  for (const auto& ps : pairs)
    h << "  pair (e" << ps.i + 1 << ", e" << ps.j + 1 << "): worst norm "
      << fmt(ps.worst) << "\n";
  rep.human = h.str();
  return rep;
}

// ---------------------------------------------------------------------------
// lift

Report cmd_lift(const ProblemSpec& spec, const std::string& operator_name) {
  const NOperatorField& N = spec.resolve_operator(operator_name);
  const Sampler sampler = spec.effective_sampler();
  const Sampler sampler2n = spec.lifted_sampler();
  const double tol = spec.torsion_tol;
  const int n = N.dim();

  // Fields for the identity checks: declared fields (name order), padded with
  // basis fields so at least one pair exists.
  std::vector<VectorField> test_fields;
  for (const auto& [name, f] : spec.fields) test_fields.push_back(f);
  for (int i = 0; test_fields.size() < 2 && i < n; ++i)
    test_fields.push_back(VectorField::basis(spec.chart, i));

  LiftIdentityReport ids;
  for (std::size_t a = 0; a < test_fields.size(); ++a)
    for (std::size_t b = a + 1; b < test_fields.size(); ++b) {
      const LiftIdentityReport r =
          verify_lift_identities(N, test_fields[a], test_fields[b], sampler2n, tol);
      ids.bracket_residual = std::max(ids.bracket_residual, r.bracket_residual);
      ids.apply_residual = std::max(ids.apply_residual, r.apply_residual);
      ids.torsion_lift_residual =
          std::max(ids.torsion_lift_residual, r.torsion_lift_residual);
    }
  ids.ok = ids.bracket_residual <= tol && ids.apply_residual <= tol &&
           ids.torsion_lift_residual <= tol;

  const NijenhuisResult base = is_nijenhuis(N, sampler, tol);
  const NOperatorField lifted = tangent_lift_N(N);
  const NijenhuisResult up = is_nijenhuis(lifted, sampler2n, 10.0 * tol);
  const bool implication = !base.ok || up.ok;

  // Lift projectability under (x, v) -> x recovers N.
  SplitFibration fib(n, n);
  const ProjectResult pr = check_projectable(lifted, fib, sampler2n, tol);
  double recovery = 0.0;
  if (pr.projectable) {
    for (const auto& p : sampler.points()) {
      recovery = std::max(
          recovery, (pr.projected->eval(p) - N.eval(p)).cwiseAbs().maxCoeff());
    }
  }
  const bool recovered = pr.projectable && recovery <= 1e-12;

  const bool ok = ids.ok && implication && recovered;

  Report rep;
  rep.command = "lift";
  rep.exit_code = ok ? kPass : kVerdictFailed;
  rep.machine["command"] = "lift";
  rep.machine["operator"] = operator_name;
  rep.machine["config"] = config_echo(spec);
  rep.machine["verdicts"]["identities"] = ids.ok;
  rep.machine["verdicts"]["base_nijenhuis"] = base.ok;
  rep.machine["verdicts"]["lift_nijenhuis"] = up.ok;
  rep.machine["verdicts"]["lift_of_nijenhuis_is_nijenhuis"] = implication;
  rep.machine["verdicts"]["projects_back_onto_operator"] = recovered;
  rep.machine["residuals"]["bracket_identity"] = ids.bracket_residual;
  rep.machine["residuals"]["apply_identity"] = ids.apply_residual;
  rep.machine["residuals"]["torsion_lift_identity"] = ids.torsion_lift_residual;
  rep.machine["residuals"]["base_worst_torsion"] = base.worst.norm;
  rep.machine["residuals"]["lift_worst_torsion"] = up.worst.norm;
  rep.machine["residuals"]["projection_recovery"] = recovery;

  std::ostringstream h;
  h << "lift " << operator_name << ": " << pf(ok) << "\n"
    << "  bracket identity residual      " << fmt(ids.bracket_residual) << "\n"
    << "  apply identity residual        " << fmt(ids.apply_residual) << "\n"
    << "  torsion-lift identity residual " << fmt(ids.torsion_lift_residual) << "\n"
    << "  base Nijenhuis: " << (base.ok ? "yes" : "no")
    << ", lifted Nijenhuis: " << (up.ok ? "yes" : "no") << " -> implication "
    << pf(implication) << "\n"
    << "  projects back onto operator: " << pf(recovered) << " (defect "
    << fmt(recovery) << ")\n";
  rep.human = h.str();
  return rep;
}

// ---------------------------------------------------------------------------
// project

Report cmd_project(const ProblemSpec& spec, const std::string& operator_name) {
  if (!spec.fibration)
    throw ProblemError("the 'project' command needs a fibration declaration");
  const NOperatorField& N = spec.resolve_operator(operator_name);
  const SplitFibration& fib = *spec.fibration;
  const Sampler sampler = spec.effective_sampler();
  const double tol = spec.torsion_tol;

  const ProjectResult pr = check_projectable(N, fib, sampler, tol);

  Report rep;
  rep.command = "project";
  rep.machine["command"] = "project";
  rep.machine["operator"] = operator_name;
  rep.machine["config"] = config_echo(spec);
  rep.machine["verdicts"]["projectable"] = pr.projectable;
  rep.machine["residuals"]["mixed_block"] = pr.worst_mixed_block;
  rep.machine["residuals"]["fiber_dependence"] = pr.worst_fiber_dependence;

  std::ostringstream h;
  if (!pr.projectable) {
    rep.exit_code = kVerdictFailed;
    if (pr.witness.size()) rep.machine["witness"] = jvec(pr.witness);
    h << "project " << operator_name << ": FAIL (not projectable; |B| = "
      << fmt(pr.worst_mixed_block) << ", |dA/dy| = "
      << fmt(pr.worst_fiber_dependence) << ")\n";
    rep.human = h.str();
    return rep;
  }

  ordered_json n0 = ordered_json::array();
  for (const auto& row : pr.projected->entries) {
    ordered_json r = ordered_json::array();
    for (const auto& e : row) r.push_back(to_string(*e));
    n0.push_back(r);
  }
  rep.machine["projected_operator"] = n0;

  const ProjectionIdentityReport tm = check_projection_identity(N, fib, *pr.projected, sampler, tol);
  rep.machine["verdicts"]["projection_identity"] = tm.max_identity_residual <= tol;
  rep.machine["verdicts"]["torsion_vertical"] = tm.torsion_vertical;
  rep.machine["verdicts"]["base_nijenhuis"] = tm.base_nijenhuis;
  rep.machine["verdicts"]["iff_consistent"] = tm.iff_consistent;
  rep.machine["residuals"]["projection_identity"] = tm.max_identity_residual;
  rep.machine["residuals"]["vertical_defect"] = tm.max_vertical_defect;
  rep.machine["residuals"]["base_torsion"] = tm.max_base_torsion;

  bool ok = tm.max_identity_residual <= tol && tm.iff_consistent;

  h << "project " << operator_name << ": projectable, N0 =\n";
  for (const auto& row : pr.projected->entries) {
    h << "    [";
    for (std::size_t j = 0; j < row.size(); ++j)
      h << (j ? ", " : "") << to_string(*row[j]);
    h << "]\n";
  }
  h << "  projection identity residual " << fmt(tm.max_identity_residual) << "\n"
    << "  torsion vertical: " << (tm.torsion_vertical ? "yes" : "no")
    << ", base Nijenhuis: " << (tm.base_nijenhuis ? "yes" : "no")
    << " -> iff " << pf(tm.iff_consistent) << "\n";

  if (spec.check_complex) {
    const ComplexProjectionResult cx =
        check_complex_projection(N, fib, *pr.projected, sampler, tol);
    rep.machine["verdicts"]["complex_projection"] = cx.verdict;
    rep.machine["verdicts"]["complex_routes_agree"] = cx.agree;
    rep.machine["residuals"]["square_vertical_defect"] = cx.worst_square_defect;
    rep.machine["residuals"]["involutivity"] = cx.involutivity.worst_residual;
    ok = ok && cx.agree && cx.verdict;
    h << "  complex projection: " << pf(cx.verdict) << " (routes "
      << (cx.agree ? "agree" : "DISAGREE") << ")\n";
  }

  rep.exit_code = ok ? kPass : kVerdictFailed;
  h.seekp(0, std::ios_base::end);
  h << "  overall: " << pf(ok) << "\n";
  rep.human = h.str();
  return rep;
}

// ---------------------------------------------------------------------------
// liealg

Report cmd_liealg(const ProblemSpec& spec) {
  if (!spec.algebra)
    throw ProblemError("the 'liealg' command needs an algebra declaration");
  const auto& alg = *spec.algebra;
  try {
    alg.algebra.validate();
  } catch (const std::invalid_argument& e) {
    throw ProblemError(e.what());
  }
  const double tol = spec.torsion_tol;

  const AlgNijenhuisResult nij = alg_is_nijenhuis(alg.algebra, alg.op, tol);

  Report rep;
  rep.command = "liealg";
  rep.machine["command"] = "liealg";
  rep.machine["config"] = config_echo(spec);
  rep.machine["verdicts"]["nijenhuis"] = nij.ok;
  rep.machine["worst"]["norm"] = nij.worst.norm;
  if (nij.worst.i >= 0) {
    rep.machine["worst"]["pair"] = {nij.worst.i + 1, nij.worst.j + 1};
    rep.machine["worst"]["torsion"] = jvec(nij.worst.value);
  }
  if (nij.ok)
    rep.machine["residuals"]["contracted_jacobi"] = nij.contracted_jacobi_defect;

  std::ostringstream h;
  h << "liealg: Nijenhuis " << pf(nij.ok) << " (worst torsion norm "
    << fmt(nij.worst.norm) << ")\n";

  bool ok = nij.ok;
  const bool has_datum = alg.k_basis.cols() > 0 || !alg.ad_samples.empty();
  if (has_datum) {
    HomogeneousDatum datum{alg.algebra, alg.k_basis, alg.ad_samples};
    try {
      datum.validate();
    } catch (const std::invalid_argument& e) {
      throw ProblemError(e.what());
    }
    const HomProjectableResult proj =
        check_homogeneous_projectable(datum, alg.op, tol);
    rep.machine["verdicts"]["homogeneous_projectable"] = proj.ok;
    rep.machine["residuals"]["k_invariance"] = proj.worst_k_residual;
    rep.machine["residuals"]["ad_criterion"] = proj.worst_ad_residual;
    h << "  homogeneous projectable: " << pf(proj.ok) << "\n";
    ok = ok && proj.ok;
    if (proj.ok) {
      const HomComplexResult cx = check_homogeneous_complex(datum, alg.op, tol);
      rep.machine["verdicts"]["complex_route_k"] = cx.route_k;
      rep.machine["verdicts"]["complex_route_zplus"] = cx.route_zplus;
      rep.machine["verdicts"]["complex_routes_agree"] = cx.agree;
      h << "  complex criteria: k-route " << (cx.route_k ? "yes" : "no")
        << ", Z+ route " << (cx.route_zplus ? "yes" : "no") << " (routes "
        << (cx.agree ? "agree" : "DISAGREE") << ")\n";
      ok = ok && cx.agree && (!spec.check_complex || cx.verdict);
    }
  }

  rep.exit_code = ok ? kPass : kVerdictFailed;
  h << "  overall: " << pf(ok) << "\n";
  rep.human = h.str();
  return rep;
}

// ---------------------------------------------------------------------------
// verify-all

Report cmd_verify_all(const ProblemSpec& spec) {
  Report rep;
  rep.command = "verify-all";
  rep.machine["command"] = "verify-all";
  ordered_json subs = ordered_json::array();
  std::ostringstream h;
  int exit = kPass;

  auto run = [&](const std::string& label, auto&& fn) {
    try {
      Report sub = fn();
      subs.push_back(sub.machine);
      h << sub.human;
      exit = std::max(exit, sub.exit_code);
    } catch (const std::exception& e) {
      ordered_json err;
      err["command"] = label;
      err["error"] = e.what();
      subs.push_back(err);
      h << label << ": ERROR " << e.what() << "\n";
      exit = kError;
    }
  };

  for (const auto& [name, N] : spec.operators) {
    run("torsion", [&] { return cmd_torsion(spec, name); });
    run("lift", [&] { return cmd_lift(spec, name); });
    if (spec.fibration) run("project", [&] { return cmd_project(spec, name); });
  }
  if (spec.algebra) run("liealg", [&] { return cmd_liealg(spec); });

  rep.machine["reports"] = subs;
  rep.machine["exit_code"] = exit;
  h << "verify-all: " << (exit == kPass ? "pass" : exit == kVerdictFailed ? "FAIL" : "ERROR")
    << "\n";
  rep.human = h.str();
  rep.exit_code = exit;
  return rep;
}

}  // namespace nij
