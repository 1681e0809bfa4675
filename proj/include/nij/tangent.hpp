#ifndef NIJ_TANGENT_HPP
#define NIJ_TANGENT_HPP

#include "nij/geometry.hpp"

namespace nij {

/// Point of the double tangent bundle in local coordinates (x, xdot, dx, dxdot).
struct TT2Point {
  Eigen::VectorXd x;
  Eigen::VectorXd xdot;
  Eigen::VectorXd deltax;
  Eigen::VectorXd deltaxdot;
};

/// The involution (x, xdot, dx, dxdot) -> (x, dx, xdot, dxdot).
TT2Point canonical_flip(const TT2Point& w);

/// Complete lift of a vector field to the 2n-chart (x1..xn, v1..vn):
/// components (X_x, D_xX(v)), with the second block built by symbolic
/// differentiation so the lift is itself a first-class DSL field.
VectorField complete_lift_vf(const VectorField& X);

/// Complete lift of an N-operator to the 2n-chart; block form
/// [[N, 0], [K, N]] with K_ij = sum_k v_k dN_ij/dx_k, so that
/// (dx, dxdot) -> (N dx, D_xN(dx, v) + N dxdot).
NOperatorField tangent_lift_N(const NOperatorField& N);

struct LiftIdentityReport {
  double bracket_residual = 0.0;       // [dT(X), dT(Y)] = dT([X,Y])
  double apply_residual = 0.0;         // dT(N)(dT(X)) = dT(NX)
  double torsion_lift_residual = 0.0;  // T_{dT(N)}(dT(X), dT(Y)) = dT(T_N(X,Y))
  bool ok = false;
  Eigen::VectorXd witness;
};

/// Checks the three lift identities at every sampled 2n-point.
LiftIdentityReport verify_lift_identities(const NOperatorField& N,
                                          const VectorField& X, const VectorField& Y,
                                          const Sampler& sampler2n, double tol);

}  // namespace nij

#endif
