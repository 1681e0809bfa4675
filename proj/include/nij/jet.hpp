#ifndef NIJ_JET_HPP
#define NIJ_JET_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nij {

/// Raised on domain errors during evaluation (division by zero, log of a
/// non-positive value, ...). Carries a human-readable description of the
/// offending subexpression when raised from the DSL evaluator.
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// Order-2 jet of a scalar function at a point: value, gradient and Hessian.
/// The Hessian is symmetric by construction; all combination rules below only
/// ever produce symmetric matrices from symmetric inputs.
struct Jet2 {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  Jet2() = default;
  Jet2(double v, Eigen::VectorXd g, Eigen::MatrixXd h)
      : value(v), grad(std::move(g)), hess(std::move(h)) {}

  int dim() const { return static_cast<int>(grad.size()); }

  /// Jet of the constant function c on an n-dimensional chart.
  static Jet2 constant(double c, int n) {
    return {c, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  }

  /// Jet of the coordinate function x_index at `point`.
  static Jet2 variable(int index, const Eigen::VectorXd& point) {
    const int n = static_cast<int>(point.size());
    if (index < 0 || index >= n)
      throw EvalError("coordinate index " + std::to_string(index) +
                      " out of range for chart dimension " + std::to_string(n));
    Jet2 j = constant(point[index], n);
    j.grad[index] = 1.0;
    return j;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.value + b.value, a.grad + b.grad, a.hess + b.hess};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.value - b.value, a.grad - b.grad, a.hess - b.hess};
}

inline Jet2 operator-(const Jet2& a) { return {-a.value, -a.grad, -a.hess}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Eigen::MatrixXd cross = a.grad * b.grad.transpose();
  return {a.value * b.value,
          a.value * b.grad + b.value * a.grad,
          a.value * b.hess + b.value * a.hess + cross + cross.transpose()};
}

inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.value, s * a.grad, s * a.hess};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value == 0.0) throw EvalError("division by zero");
  const double v = a.value / b.value;
  Eigen::VectorXd g = (a.grad - v * b.grad) / b.value;
  Eigen::MatrixXd cross = g * b.grad.transpose();
  Eigen::MatrixXd h = (a.hess - v * b.hess - cross - cross.transpose()) / b.value;
  return {v, std::move(g), std::move(h)};
}

/// Chain rule for a smooth g applied to a jet: g(u), g'(u) u', g'(u) u'' + g''(u) u' u'^T.
inline Jet2 chain(const Jet2& u, double g, double dg, double ddg) {
  return {g, dg * u.grad, dg * u.hess + ddg * (u.grad * u.grad.transpose())};
}

inline Jet2 sin(const Jet2& u) {
  return chain(u, std::sin(u.value), std::cos(u.value), -std::sin(u.value));
}

inline Jet2 cos(const Jet2& u) {
  return chain(u, std::cos(u.value), -std::sin(u.value), -std::cos(u.value));
}

inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.value);
  return chain(u, e, e, e);
}

inline Jet2 log(const Jet2& u) {
  if (u.value <= 0.0) throw EvalError("log of non-positive value");
  return chain(u, std::log(u.value), 1.0 / u.value, -1.0 / (u.value * u.value));
}

/// Integer power u^m. m = 0 gives the constant 1; negative m requires u != 0.
inline Jet2 pow_int(const Jet2& u, int m) {
  if (m == 0) return Jet2::constant(1.0, u.dim());
  if (u.value == 0.0 && m < 0) throw EvalError("negative power of zero");
  auto ipow = [](double x, int k) {
    double r = 1.0, b = x;
    bool neg = k < 0;
    for (unsigned e = neg ? -static_cast<unsigned>(k) : k; e; e >>= 1) {
      if (e & 1) r *= b;
      b *= b;
    }
    return neg ? 1.0 / r : r;
  };
  auto safe = [&](int k) { return k == 0 ? 1.0 : ipow(u.value, k); };
  const double c1 = m * safe(m - 1);
  const double c2 = m == 1 ? 0.0 : m * (m - 1) * safe(m - 2);
  return chain(u, safe(m), c1, c2);
}

}  // namespace nij

#endif
