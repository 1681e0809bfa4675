#include "nij/tangent.hpp"

namespace nij {

TT2Point canonical_flip(const TT2Point& w) {
  return {w.x, w.deltax, w.xdot, w.deltaxdot};
}

// Re-homes a base-chart expression on the doubled chart: variable indices are
// preserved (base coordinates come first) but names follow the x1..xn, v1..vn
// convention of Chart::tangent.
static ExprPtr rehome(const ExprPtr& e, const Chart& lifted) {
  return substitute(*e, [&lifted](int idx, const std::string&) {
    return Expr::variable(idx, lifted.names[idx]);
  });
}

VectorField complete_lift_vf(const VectorField& X) {
  const int n = X.dim();
  const Chart lifted = Chart::tangent(n);
  VectorField out{lifted, {}};
  for (int i = 0; i < n; ++i) out.comps.push_back(rehome(X.comps[i], lifted));
  for (int i = 0; i < n; ++i) {
    ExprPtr acc = Expr::constant(0.0);
    for (int k = 0; k < n; ++k) {
      auto d = differentiate(*X.comps[i], k);
      acc = Expr::add(acc, Expr::mul(rehome(d, lifted),
                                     Expr::variable(n + k, lifted.names[n + k])));
    }
    out.comps.push_back(std::move(acc));
  }
  return out;
}

NOperatorField tangent_lift_N(const NOperatorField& N) {
  const int n = N.dim();
  const Chart lifted = Chart::tangent(n);
  NOperatorField out{lifted, {}};
  out.entries.assign(2 * n, std::vector<ExprPtr>(2 * n, Expr::constant(0.0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ExprPtr entry = rehome(N.entries[i][j], lifted);
      out.entries[i][j] = entry;
      out.entries[n + i][n + j] = entry;
      ExprPtr acc = Expr::constant(0.0);
      for (int k = 0; k < n; ++k) {
        auto d = differentiate(*N.entries[i][j], k);
        acc = Expr::add(acc, Expr::mul(rehome(d, lifted),
                                       Expr::variable(n + k, lifted.names[n + k])));
      }
      out.entries[n + i][j] = std::move(acc);
    }
  }
  return out;
}

LiftIdentityReport verify_lift_identities(const NOperatorField& N,
                                          const VectorField& X, const VectorField& Y,
                                          const Sampler& sampler2n, double tol) {
  const VectorField liftX = complete_lift_vf(X);
  const VectorField liftY = complete_lift_vf(Y);
  const NOperatorField liftN = tangent_lift_N(N);

  const VectorField lift_brXY = complete_lift_vf(vf_bracket(X, Y));
  const VectorField lift_NX = complete_lift_vf(vf_apply_N(N, X));
  const VectorField lift_torsion = complete_lift_vf(vf_torsion(N, X, Y));

  LiftIdentityReport rep;
  for (const auto& q : sampler2n.points()) {
    const double r1 =
        (lie_bracket(liftX, liftY, q) - lift_brXY.eval(q)).cwiseAbs().maxCoeff();
    const double r2 =
        (apply_N(liftN, liftX.eval(q), q) - lift_NX.eval(q)).cwiseAbs().maxCoeff();
    const double r3 = (torsion_definition(liftN, liftX, liftY, q) - lift_torsion.eval(q))
                          .cwiseAbs()
                          .maxCoeff();
    if (r1 > rep.bracket_residual) rep.bracket_residual = r1;
    if (r2 > rep.apply_residual) rep.apply_residual = r2;
    if (r3 > rep.torsion_lift_residual) {
      rep.torsion_lift_residual = r3;
      rep.witness = q;
    }
  }
  rep.ok = rep.bracket_residual <= tol && rep.apply_residual <= tol &&
           rep.torsion_lift_residual <= tol;
  return rep;
}

}  // namespace nij
