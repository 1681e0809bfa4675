#ifndef NIJ_GEOMETRY_HPP
#define NIJ_GEOMETRY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nij/expr.hpp"

namespace nij {

/// Smooth vector field on a chart, one DSL expression per component.
struct VectorField {
  Chart chart;
  std::vector<ExprPtr> comps;

  int dim() const { return static_cast<int>(comps.size()); }
  Eigen::VectorXd eval(const Eigen::VectorXd& p) const;
  /// Jacobian D_pX, rows = components, columns = coordinates; from jets.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& p) const;

  static VectorField basis(const Chart& chart, int index);
  static VectorField constant(const Chart& chart, const Eigen::VectorXd& v);
};

/// (1,1)-tensor field: entry (i,j) is the i-th component of N applied to e_j.
struct NOperatorField {
  Chart chart;
  std::vector<std::vector<ExprPtr>> entries;

  int dim() const { return static_cast<int>(entries.size()); }
  Eigen::MatrixXd eval(const Eigen::VectorXd& p) const;
  /// All coordinate partials dN/dx_k at p in one jet pass.
  std::vector<Eigen::MatrixXd> partials(const Eigen::VectorXd& p) const;
  /// Directional derivative of the matrix field, sum_k dir_k dN/dx_k.
  Eigen::MatrixXd dir_deriv(const Eigen::VectorXd& dir, const Eigen::VectorXd& p) const;

  static NOperatorField constant(const Chart& chart, const Eigen::MatrixXd& m);
  static NOperatorField identity(const Chart& chart);
  static NOperatorField from_strings(const Chart& chart,
                                     const std::vector<std::vector<std::string>>& rows);
};

/// Deterministic uniform sampler on an axis-aligned box.
struct Sampler {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  int count = 64;
  std::uint64_t seed = 42;

  std::vector<Eigen::VectorXd> points() const;
  static Sampler centered_box(int dim, double halfwidth, int count = 64,
                              std::uint64_t seed = 42);
};

enum class TorsionMethod { Definition, Tensor };

struct TorsionReport {
  Eigen::VectorXd point;
  Eigen::VectorXd u, v;
  Eigen::VectorXd torsion_value;
  TorsionMethod method = TorsionMethod::Tensor;
  double norm = 0.0;  // max-norm of torsion_value
};

/// [X,Y]_p = D_pX(Y_p) - D_pY(X_p), Jacobians from jets.
Eigen::VectorXd lie_bracket(const VectorField& X, const VectorField& Y,
                            const Eigen::VectorXd& p);

Eigen::VectorXd apply_N(const NOperatorField& N, const Eigen::VectorXd& v,
                        const Eigen::VectorXd& p);

/// Pointwise torsion on tangent vectors, the tensor formula:
/// (d_{Nv}N)u - (d_{Nu}N)v - N((d_v N)u - (d_u N)v) at p.
Eigen::VectorXd torsion_tensor(const NOperatorField& N, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v, const Eigen::VectorXd& p);

/// Torsion from the bracket definition [NX,NY] - N([NX,Y] + [X,NY] - N[X,Y]);
/// the composites NX, NY are differentiated through the product rule
/// D(NX) = DN(.)X + N DX using jet data only.
Eigen::VectorXd torsion_definition(const NOperatorField& N, const VectorField& X,
                                   const VectorField& Y, const Eigen::VectorXd& p);

/// [X,Y]_N = [NX,Y] + [X,NY] - N[X,Y] at p.
Eigen::VectorXd contracted_bracket(const NOperatorField& N, const VectorField& X,
                                   const VectorField& Y, const Eigen::VectorXd& p);

enum class StructureKind { AlmostComplex, AlmostProduct, AlmostTangent };

struct StructureResult {
  bool ok = false;
  double worst = 0.0;
  Eigen::VectorXd witness;
};

/// N^2 = -id / id / 0 within tol at every sampled point.
StructureResult check_structure(const NOperatorField& N, StructureKind kind,
                                const Sampler& sampler, double tol);

struct NijenhuisResult {
  bool ok = false;
  TorsionReport worst;
};

/// Torsion on all basis pairs (e_i, e_j), i < j, at every sampled point;
/// basis pairs suffice because the torsion is bilinear.
NijenhuisResult is_nijenhuis(const NOperatorField& N, const Sampler& sampler,
                             double tol);

// Symbolic field algebra; results are first-class DSL fields, so they can be
// bracketed or lifted again.
VectorField vf_apply_N(const NOperatorField& N, const VectorField& X);
VectorField vf_scale(const ExprPtr& f, const VectorField& X);
VectorField vf_bracket(const VectorField& X, const VectorField& Y);
VectorField vf_contracted(const NOperatorField& N, const VectorField& X,
                          const VectorField& Y);
VectorField vf_torsion(const NOperatorField& N, const VectorField& X,
                       const VectorField& Y);

}  // namespace nij

#endif
