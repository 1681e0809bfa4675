#ifndef NIJ_PROBLEM_HPP
#define NIJ_PROBLEM_HPP

#include <map>
#include <optional>
#include <string>

#include "nij/fibration.hpp"
#include "nij/geometry.hpp"
#include "nij/liealg.hpp"

namespace nij {

/// Raised for malformed or unresolvable problem files.
struct ProblemError : std::runtime_error {
  explicit ProblemError(const std::string& what) : std::runtime_error(what) {}
};

/// One problem document, parsed from a versioned JSON file (format tag
/// "nijenhuis/1"). DSL strings are parsed against the declared chart at load
/// time, so every name/syntax error surfaces before any command runs.
struct ProblemSpec {
  Chart chart;
  std::map<std::string, NOperatorField> operators;
  std::map<std::string, VectorField> fields;
  std::optional<SplitFibration> fibration;

  struct AlgebraSpec {
    LieAlgebra algebra;
    Eigen::MatrixXd k_basis;                 // dim x m, m = 0 when absent
    std::vector<Eigen::MatrixXd> ad_samples;
    Eigen::MatrixXd op;                      // N_e, defaults to identity
  };
  std::optional<AlgebraSpec> algebra;

  Sampler sampler;
  bool has_sampler = false;
  double torsion_tol = 1e-9;
  double fd_step = 1e-5;
  bool check_complex = false;

  /// Sampler on the declared box ([-1,1]^n when the file gives none).
  Sampler effective_sampler() const;
  /// Sampler on the doubled chart for lifted objects: declared box on the
  /// base block, [-1,1]^n on the velocity block.
  Sampler lifted_sampler() const;

  const NOperatorField& resolve_operator(const std::string& name) const;

  static ProblemSpec load(const std::string& path);
  static ProblemSpec from_json_text(const std::string& text);
};

}  // namespace nij

#endif
