#ifndef NIJ_FIBRATION_HPP
#define NIJ_FIBRATION_HPP

#include <optional>

#include "nij/geometry.hpp"

namespace nij {

/// Fibration in adapted split coordinates: the chart splits into base
/// coordinates followed by fiber coordinates, and the projection drops the
/// fiber block. `anchor` is the fiber point used to pin the projected
/// operator's entries.
struct SplitFibration {
  int base_dim = 0;
  int fiber_dim = 0;
  Eigen::VectorXd anchor;  // fiber_dim entries, defaults to 0

  SplitFibration(int n0, int nf)
      : base_dim(n0), fiber_dim(nf), anchor(Eigen::VectorXd::Zero(nf)) {
    if (n0 < 1 || nf < 1)
      throw std::invalid_argument("fibration needs base_dim >= 1 and fiber_dim >= 1");
  }

  int total_dim() const { return base_dim + fiber_dim; }
  Eigen::VectorXd project(const Eigen::VectorXd& p) const { return p.head(base_dim); }
};

/// Complexified tangent vector as a pair of real vectors.
struct ComplexTangent {
  Eigen::VectorXd re;
  Eigen::VectorXd im;
};

/// A vector is vertical when its base block vanishes (max-norm <= tol).
bool is_vertical(const Eigen::VectorXd& v, const SplitFibration& fib, double tol);

struct ProjectResult {
  bool projectable = false;
  double worst_mixed_block = 0.0;       // |B| entries (base from fiber)
  double worst_fiber_dependence = 0.0;  // |dA/dy| entries
  Eigen::VectorXd witness;
  std::optional<NOperatorField> projected;  // N0 on the base chart when projectable
};

/// Block criterion against the (base, fiber) split of N = [[A, B], [C, D]]:
/// projectable iff B vanishes and A is fiber-independent at every sample.
/// On success N0 = A with fiber coordinates pinned at the anchor.
ProjectResult check_projectable(const NOperatorField& N, const SplitFibration& fib,
                                const Sampler& sampler, double tol);

struct ProjectionIdentityReport {
  double max_identity_residual = 0.0;  // |Ttau(T_N(u,v)) - T_{N0}(Ttau u, Ttau v)|
  double max_vertical_defect = 0.0;    // base block of T_N
  double max_base_torsion = 0.0;       // torsion of N0
  bool torsion_vertical = false;
  bool base_nijenhuis = false;
  bool iff_consistent = false;
  Eigen::VectorXd witness;
};

/// Per sample and basis pair, asserts Ttau(T_N(u,v)) = T_{N0}(Ttau u, Ttau v)
/// and derives the verticality <-> base-Nijenhuis verdict from it.
ProjectionIdentityReport check_projection_identity(const NOperatorField& N, const SplitFibration& fib,
                                     const NOperatorField& N0, const Sampler& sampler,
                                     double tol);

/// Membership defect of w in Zhat_pm at p: max-norm of the base block of
/// (im -+ N(re)).
double zhat_residual(const ComplexTangent& w, const NOperatorField& N,
                     const SplitFibration& fib, const Eigen::VectorXd& p, int sign);

enum class InvolutivityStatus { Involutive, NotInvolutive, PrecheckFailed };

struct InvolutivityResult {
  InvolutivityStatus status = InvolutivityStatus::PrecheckFailed;
  double worst_residual = 0.0;
  double precheck_defect = 0.0;  // verticality defect of N^2 + id
  Eigen::VectorXd witness;
};

/// Brackets a spanning frame of Zhat_+ sections (e_a + i N e_a for base basis
/// directions, plus complexified vertical basis fields) at every sample and
/// checks membership of the results. Requires N^2 + id vertical, otherwise
/// Zhat_+ is not a complex subbundle and the check reports PrecheckFailed.
InvolutivityResult check_involutivity_zhat(const NOperatorField& N,
                                           const SplitFibration& fib,
                                           const Sampler& sampler, double tol);

struct ComplexProjectionResult {
  bool verdict = false;        // vertical N^2+id AND involutive Zhat_+
  bool direct_verdict = false; // N0 almost-complex AND N0 Nijenhuis
  bool agree = false;
  double worst_square_defect = 0.0;
  InvolutivityResult involutivity;
};

/// A projectable N projects onto a complex structure iff N^2 + id is
/// vertical and Zhat_+ is involutive. Cross-checked against the direct route
/// on the projected operator.
ComplexProjectionResult check_complex_projection(const NOperatorField& N,
                                                 const SplitFibration& fib,
                                                 const NOperatorField& N0,
                                                 const Sampler& sampler, double tol);

}  // namespace nij

#endif
