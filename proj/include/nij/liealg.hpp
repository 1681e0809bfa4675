#ifndef NIJ_LIEALG_HPP
#define NIJ_LIEALG_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace nij {

/// Finite-dimensional Lie algebra given by structure constants:
/// [e_i, e_j] = sum_k c[k](i,j) e_k.
struct LieAlgebra {
  int dim = 0;
  std::vector<Eigen::MatrixXd> c;  // c[k](i,j) = c^k_{ij}

  /// Throws std::invalid_argument on an antisymmetry or Jacobi violation;
  /// the message names the offending triple.
  void validate(double tol = 1e-12) const;

  /// Catalogue: abelian_n (n from the suffix), affine_2d ([e1,e2]=e2),
  /// so3 (c^k_ij = epsilon_ijk), heisenberg_3 ([e1,e2]=e3).
  static LieAlgebra catalogue(const std::string& name);
  static LieAlgebra abelian(int n);
};

Eigen::VectorXd alg_bracket(const LieAlgebra& alg, const Eigen::VectorXd& X,
                            const Eigen::VectorXd& Y);

/// [NX,NY] - N([NX,Y] + [X,NY] - N[X,Y]) in coefficient vectors.
Eigen::VectorXd alg_torsion(const LieAlgebra& alg, const Eigen::MatrixXd& N,
                            const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

Eigen::VectorXd alg_contracted_bracket(const LieAlgebra& alg, const Eigen::MatrixXd& N,
                                       const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

struct AlgTorsionWitness {
  int i = -1, j = -1;
  Eigen::VectorXd value;
  double norm = 0.0;
};

struct AlgNijenhuisResult {
  bool ok = false;
  AlgTorsionWitness worst;
  double contracted_jacobi_defect = 0.0;  // exhaustive, only filled when ok
};

/// Exhaustive over basis pairs i < j. When the torsion vanishes, additionally
/// verifies the Jacobi identity of the contracted bracket over all basis
/// triples.
AlgNijenhuisResult alg_is_nijenhuis(const LieAlgebra& alg, const Eigen::MatrixXd& N,
                                    double tol);

/// Least-squares distance of v from the column span of `basis`, relative
/// threshold tol*(1 + |v|). An empty basis means the zero subspace.
double span_residual(const Eigen::MatrixXd& basis, const Eigen::VectorXd& v);

/// Homogeneous-space datum: ambient algebra, subalgebra basis for k, and
/// finitely many sampled Ad automorphisms standing in for the group K.
struct HomogeneousDatum {
  LieAlgebra algebra;
  Eigen::MatrixXd k_basis;  // dim x m, columns span k; m = 0 allowed
  std::vector<Eigen::MatrixXd> ad_samples;

  /// Checks that k is a subalgebra and every Ad sample is a bracket
  /// automorphism preserving k. Throws std::invalid_argument otherwise.
  void validate(double tol = 1e-10) const;
};

struct HomProjectableResult {
  bool ok = false;
  double worst_k_residual = 0.0;   // N(k) subset k
  double worst_ad_residual = 0.0;  // (N Ad_k - Ad_k N) e_i in k
};

/// The Ad-criterion: N(k) in k and N(Ad_k X) - Ad_k(N X) in k for every
/// sampled Ad and basis X.
HomProjectableResult check_homogeneous_projectable(const HomogeneousDatum& datum,
                                                   const Eigen::MatrixXd& N, double tol);

struct HomComplexResult {
  bool route_k = false;      // (N^2+id) e_i in k and torsion values in k
  bool route_zplus = false;  // Z_+ closed under i and the complex bracket
  bool agree = false;
  bool verdict = false;
  double worst_k_route = 0.0;
  double worst_z_route = 0.0;
};

/// Homogeneous complex-structure criterion, both routes. Route 1 checks that N^2 + id and
/// the torsion take values in k; route 2 checks that
/// Z_+ = {X + iY : Y - NX in k} is a complex Lie subalgebra, i.e. closed
/// under multiplication by i and under the complex-bilinear bracket.
HomComplexResult check_homogeneous_complex(const HomogeneousDatum& datum,
                                           const Eigen::MatrixXd& N, double tol);

}  // namespace nij

#endif
