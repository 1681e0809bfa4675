#include "nij/fibration.hpp"

namespace nij {

bool is_vertical(const Eigen::VectorXd& v, const SplitFibration& fib, double tol) {
  if (v.size() != fib.total_dim())
    throw std::invalid_argument("vector dimension does not match the fibration chart");
  return v.head(fib.base_dim).cwiseAbs().maxCoeff() <= tol;
}

static Chart base_chart(const NOperatorField& N, const SplitFibration& fib) {
  return Chart(std::vector<std::string>(N.chart.names.begin(),
                                        N.chart.names.begin() + fib.base_dim));
}

static Sampler base_sampler(const Sampler& s, const SplitFibration& fib) {
  Sampler b = s;
  b.lo = s.lo.head(fib.base_dim);
  b.hi = s.hi.head(fib.base_dim);
  return b;
}

ProjectResult check_projectable(const NOperatorField& N, const SplitFibration& fib,
                                const Sampler& sampler, double tol) {
  const int n0 = fib.base_dim;
  const int n = fib.total_dim();
  if (N.dim() != n)
    throw std::invalid_argument("operator dimension does not match the fibration chart");

  ProjectResult res;
  for (const auto& p : sampler.points()) {
    const Eigen::MatrixXd Np = N.eval(p);
    const double mixed = Np.topRightCorner(n0, n - n0).cwiseAbs().maxCoeff();
    // Fiber dependence of the base block, from jet gradients.
    double fiber_dep = 0.0;
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n0; ++j) {
        const Jet2 jet = eval_jet(*N.entries[i][j], p);
        fiber_dep = std::max(fiber_dep, jet.grad.tail(n - n0).cwiseAbs().maxCoeff());
      }
    if (mixed > res.worst_mixed_block || fiber_dep > res.worst_fiber_dependence) {
      res.witness = p;
    }
    res.worst_mixed_block = std::max(res.worst_mixed_block, mixed);
    res.worst_fiber_dependence = std::max(res.worst_fiber_dependence, fiber_dep);
  }
  res.projectable = res.worst_mixed_block <= tol && res.worst_fiber_dependence <= tol;
  if (!res.projectable) return res;

  // N0 = base block with fiber coordinates pinned at the anchor.
  const Chart bchart = base_chart(N, fib);
  NOperatorField N0{bchart, {}};
  for (int i = 0; i < n0; ++i) {
    std::vector<ExprPtr> row;
    for (int j = 0; j < n0; ++j) {
      row.push_back(substitute(*N.entries[i][j], [&](int idx, const std::string& name) {
        if (idx < n0) return Expr::variable(idx, name);
        return Expr::constant(fib.anchor[idx - n0]);
      }));
    }
    N0.entries.push_back(std::move(row));
  }
  res.projected = std::move(N0);
  return res;
}

ProjectionIdentityReport check_projection_identity(const NOperatorField& N, const SplitFibration& fib,
                                     const NOperatorField& N0, const Sampler& sampler,
                                     double tol) {
  const int n = fib.total_dim();
  const int n0 = fib.base_dim;
  ProjectionIdentityReport rep;
  for (const auto& p : sampler.points()) {
    const Eigen::VectorXd p0 = fib.project(p);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, i);
        const Eigen::VectorXd v = Eigen::VectorXd::Unit(n, j);
        const Eigen::VectorXd t = torsion_tensor(N, u, v, p);
        const Eigen::VectorXd upstairs = t.head(n0);
        const Eigen::VectorXd downstairs =
            torsion_tensor(N0, u.head(n0), v.head(n0), p0);
        const double resid = (upstairs - downstairs).cwiseAbs().maxCoeff();
        if (resid > rep.max_identity_residual) {
          rep.max_identity_residual = resid;
          rep.witness = p;
        }
        rep.max_vertical_defect =
            std::max(rep.max_vertical_defect, upstairs.cwiseAbs().maxCoeff());
        rep.max_base_torsion =
            std::max(rep.max_base_torsion, downstairs.cwiseAbs().maxCoeff());
      }
    }
  }
  rep.torsion_vertical = rep.max_vertical_defect <= tol;
  rep.base_nijenhuis = rep.max_base_torsion <= tol;
  rep.iff_consistent = rep.torsion_vertical == rep.base_nijenhuis;
  return rep;
}

double zhat_residual(const ComplexTangent& w, const NOperatorField& N,
                     const SplitFibration& fib, const Eigen::VectorXd& p, int sign) {
  const Eigen::VectorXd defect = w.im - sign * (N.eval(p) * w.re);
  return defect.head(fib.base_dim).cwiseAbs().maxCoeff();
}

InvolutivityResult check_involutivity_zhat(const NOperatorField& N,
                                           const SplitFibration& fib,
                                           const Sampler& sampler, double tol) {
  const int n = fib.total_dim();
  const int n0 = fib.base_dim;
  InvolutivityResult res;

  const auto samples = sampler.points();
  for (const auto& p : samples) {
    const Eigen::MatrixXd Np = N.eval(p);
    const Eigen::MatrixXd sq = Np * Np + Eigen::MatrixXd::Identity(n, n);
    res.precheck_defect =
        std::max(res.precheck_defect, sq.topRows(n0).cwiseAbs().maxCoeff());
  }
  if (res.precheck_defect > tol) {
    res.status = InvolutivityStatus::PrecheckFailed;
    return res;
  }

  // Frame of Zhat_+ sections: s_a = E_a + i N(E_a) for base directions,
  // plus the vertical basis fields (real part only; complex span adds i W_b).
  struct ComplexField {
    VectorField re;
    VectorField im;
  };
  std::vector<ComplexField> frame;
  for (int a = 0; a < n0; ++a) {
    VectorField col{N.chart, {}};
    for (int i = 0; i < n; ++i) col.comps.push_back(N.entries[i][a]);
    frame.push_back({VectorField::basis(N.chart, a), std::move(col)});
  }
  VectorField zero{N.chart, std::vector<ExprPtr>(n, Expr::constant(0.0))};
  for (int b = n0; b < n; ++b) frame.push_back({VectorField::basis(N.chart, b), zero});

  for (const auto& p : samples) {
    for (std::size_t s = 0; s < frame.size(); ++s) {
      for (std::size_t t = s + 1; t < frame.size(); ++t) {
        const auto& F = frame[s];
        const auto& G = frame[t];
        ComplexTangent br;
        br.re = lie_bracket(F.re, G.re, p) - lie_bracket(F.im, G.im, p);
        br.im = lie_bracket(F.re, G.im, p) + lie_bracket(F.im, G.re, p);
        const double r = zhat_residual(br, N, fib, p, +1);
        if (r > res.worst_residual) {
          res.worst_residual = r;
          res.witness = p;
        }
      }
    }
  }
  res.status = res.worst_residual <= tol ? InvolutivityStatus::Involutive
                                         : InvolutivityStatus::NotInvolutive;
  return res;
}

ComplexProjectionResult check_complex_projection(const NOperatorField& N,
                                                 const SplitFibration& fib,
                                                 const NOperatorField& N0,
                                                 const Sampler& sampler, double tol) {
  const int n = fib.total_dim();
  const int n0 = fib.base_dim;
  ComplexProjectionResult res;

  for (const auto& p : sampler.points()) {
    const Eigen::MatrixXd Np = N.eval(p);
    const Eigen::MatrixXd sq = Np * Np + Eigen::MatrixXd::Identity(n, n);
    res.worst_square_defect =
        std::max(res.worst_square_defect, sq.topRows(n0).cwiseAbs().maxCoeff());
  }
  res.involutivity = check_involutivity_zhat(N, fib, sampler, tol);
  res.verdict = res.worst_square_defect <= tol &&
                res.involutivity.status == InvolutivityStatus::Involutive;

  const Sampler bs = base_sampler(sampler, fib);
  const bool almost_complex =
      check_structure(N0, StructureKind::AlmostComplex, bs, tol).ok;
  const bool nijenhuis = is_nijenhuis(N0, bs, tol).ok;
  res.direct_verdict = almost_complex && nijenhuis;
  res.agree = res.verdict == res.direct_verdict;
  return res;
}

}  // namespace nij
