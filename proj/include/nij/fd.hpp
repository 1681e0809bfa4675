#ifndef NIJ_FD_HPP
#define NIJ_FD_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace nij {

/// Central-difference configuration. Only 2nd-order central stencils are used.
struct DiffConfig {
  double fd_step = 1e-5;

  explicit DiffConfig(double step = 1e-5) : fd_step(step) {
    if (!(fd_step >= 1e-8 && fd_step <= 1e-2))
      throw std::invalid_argument("fd_step must lie in [1e-8, 1e-2]");
  }
};

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Jacobian of a vector-valued chart function by central differences,
/// entry (i,j) = (f_i(p + h e_j) - f_i(p - h e_j)) / (2h).
inline Eigen::MatrixXd fd_jacobian(const VectorFn& f, const Eigen::VectorXd& p,
                                   const DiffConfig& cfg = DiffConfig()) {
  const int n = static_cast<int>(p.size());
  const double h = cfg.fd_step;
  Eigen::MatrixXd jac;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd pp = p, pm = p;
    pp[j] += h;
    pm[j] -= h;
    Eigen::VectorXd col = (f(pp) - f(pm)) / (2.0 * h);
    if (j == 0) jac.resize(col.size(), n);
    jac.col(j) = col;
  }
  return jac;
}

inline Eigen::VectorXd fd_gradient(const ScalarFn& f, const Eigen::VectorXd& p,
                                   const DiffConfig& cfg = DiffConfig()) {
  const int n = static_cast<int>(p.size());
  const double h = cfg.fd_step;
  Eigen::VectorXd g(n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd pp = p, pm = p;
    pp[j] += h;
    pm[j] -= h;
    g[j] = (f(pp) - f(pm)) / (2.0 * h);
  }
  return g;
}

/// Hessian entry (j,k) by the 4-point central formula
/// (f(p+he_j+he_k) - f(p+he_j-he_k) - f(p-he_j+he_k) + f(p-he_j-he_k)) / (4h^2).
inline Eigen::MatrixXd fd_hessian(const ScalarFn& f, const Eigen::VectorXd& p,
                                  const DiffConfig& cfg = DiffConfig(1e-4)) {
  const int n = static_cast<int>(p.size());
  const double h = cfg.fd_step;
  Eigen::MatrixXd hess(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      Eigen::VectorXd a = p, b = p, c = p, d = p;
      a[j] += h; a[k] += h;
      b[j] += h; b[k] -= h;
      c[j] -= h; c[k] += h;
      d[j] -= h; d[k] -= h;
      hess(j, k) = hess(k, j) = (f(a) - f(b) - f(c) + f(d)) / (4.0 * h * h);
    }
  }
  return hess;
}

}  // namespace nij

#endif
