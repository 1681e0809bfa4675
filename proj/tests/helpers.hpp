#ifndef NIJ_TESTS_HELPERS_HPP
#define NIJ_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "nij/geometry.hpp"
#include "nij/liealg.hpp"

namespace nijtest {

using nij::Chart;
using nij::Expr;
using nij::ExprPtr;
using nij::NOperatorField;
using nij::VectorField;

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

inline Chart chart_n(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return Chart(std::move(names));
}

/// Random expressions over the full DSL operation set. Division denominators
/// and log arguments are built as c + u^2 with c >= 0.5 so evaluation stays
/// total on bounded boxes.
class ExprGen {
 public:
  ExprGen(Chart chart, std::uint64_t seed, int max_depth = 4)
      : chart_(std::move(chart)), rng_(seed), max_depth_(max_depth) {}

  ExprPtr gen() { return gen(0); }

  Eigen::VectorXd point(double halfwidth = 2.0) {
    Eigen::VectorXd p(chart_.dim());
    for (int i = 0; i < p.size(); ++i) p[i] = uniform(-halfwidth, halfwidth);
    return p;
  }

 private:
  Chart chart_;
  std::mt19937_64 rng_;
  int max_depth_;

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int pick(int n) { return static_cast<int>(rng_() % n); }

  ExprPtr leaf() {
    if (pick(3) == 0) return Expr::constant(std::round(uniform(-4.0, 4.0) * 4.0) / 4.0);
    const int v = pick(chart_.dim());
    return Expr::variable(v, chart_.names[v]);
  }

  ExprPtr positive(int depth) {
    // c + u^2, strictly positive
    return Expr::binary(nij::BinOp::Add, Expr::constant(0.5 + uniform(0.0, 1.5)),
                        Expr::pow(gen(depth + 1), 2));
  }

  ExprPtr gen(int depth) {
    if (depth >= max_depth_) return leaf();
    switch (pick(10)) {
      case 0: return leaf();
      case 1: return Expr::binary(nij::BinOp::Add, gen(depth + 1), gen(depth + 1));
      case 2: return Expr::binary(nij::BinOp::Sub, gen(depth + 1), gen(depth + 1));
      case 3: return Expr::binary(nij::BinOp::Mul, gen(depth + 1), gen(depth + 1));
      case 4: return Expr::binary(nij::BinOp::Div, gen(depth + 1), positive(depth + 1));
      case 5: return Expr::neg(gen(depth + 1));
      case 6: return Expr::pow(gen(depth + 1), pick(4));
      case 7: return Expr::call(pick(2) ? nij::Fn::Sin : nij::Fn::Cos, gen(depth + 1));
      case 8: return Expr::call(nij::Fn::Log, positive(depth + 1));
      default: return Expr::call(nij::Fn::Exp,
                                 Expr::binary(nij::BinOp::Mul, Expr::constant(0.25),
                                              gen(depth + 1)));
    }
  }
};

/// Random polynomial expression of total degree <= 2 with small integer-ish
/// coefficients.
inline ExprPtr random_quadratic(const Chart& chart, std::mt19937_64& rng) {
  const int n = chart.dim();
  auto coeff = [&rng]() {
    return static_cast<double>(static_cast<int>(rng() % 7)) - 3.0;
  };
  auto var = [&chart](int i) { return Expr::variable(i, chart.names[i]); };
  ExprPtr acc = Expr::constant(coeff());
  for (int i = 0; i < n; ++i)
    acc = Expr::add(acc, Expr::mul(Expr::constant(coeff()), var(i)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      acc = Expr::add(acc, Expr::mul(Expr::constant(coeff()),
                                     Expr::mul(var(i), var(j))));
  return acc;
}

inline NOperatorField random_polynomial_operator(const Chart& chart,
                                                 std::mt19937_64& rng) {
  NOperatorField N{chart, {}};
  for (int i = 0; i < chart.dim(); ++i) {
    std::vector<ExprPtr> row;
    for (int j = 0; j < chart.dim(); ++j) row.push_back(random_quadratic(chart, rng));
    N.entries.push_back(std::move(row));
  }
  return N;
}

inline VectorField random_affine_field(const Chart& chart, std::mt19937_64& rng) {
  const int n = chart.dim();
  auto coeff = [&rng]() {
    return static_cast<double>(static_cast<int>(rng() % 5)) - 2.0;
  };
  VectorField f{chart, {}};
  for (int i = 0; i < n; ++i) {
    ExprPtr acc = Expr::constant(coeff());
    for (int j = 0; j < n; ++j)
      acc = Expr::add(acc, Expr::mul(Expr::constant(coeff()),
                                     Expr::variable(j, chart.names[j])));
    f.comps.push_back(std::move(acc));
  }
  return f;
}

/// aff(C): [e1,e3]=e3, [e1,e4]=e4, [e2,e3]=e4, [e2,e4]=-e3. Multiplication by
/// i maps e1->e2, e3->e4; it is a genuine complex structure on this solvable
/// algebra.
inline nij::LieAlgebra affine_complex() {
  nij::LieAlgebra a = nij::LieAlgebra::abelian(4);
  auto set = [&a](int i, int j, int k, double v) {
    a.c[k](i, j) += v;
    a.c[k](j, i) -= v;
  };
  set(0, 2, 2, 1.0);
  set(0, 3, 3, 1.0);
  set(1, 2, 3, 1.0);
  set(1, 3, 2, -1.0);
  return a;
}

struct HomInstance {
  std::string name;
  nij::HomogeneousDatum datum;
  Eigen::MatrixXd op;
  bool expect_complex = false;
};

/// Eight homogeneous instances, alternating genuine complex structures with
/// designed failures; both criterion routes must agree on each.
inline std::vector<HomInstance> hom_corpus() {
  std::vector<HomInstance> out;
  auto rot2 = [](double c, double s) {
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
  };

  {
    nij::HomogeneousDatum d;
    d.algebra = nij::LieAlgebra::abelian(2);
    d.k_basis = Eigen::MatrixXd(2, 0);
    d.ad_samples = {Eigen::Matrix2d::Identity(), rot2(0.6, 0.8)};
    Eigen::MatrixXd J = rot2(0.0, 1.0);
    out.push_back({"abelian2_J", d, J, true});
    out.push_back({"abelian2_2J", d, 2.0 * J, false});
  }
  {
    nij::HomogeneousDatum d;
    d.algebra = nij::LieAlgebra::catalogue("so3");
    d.k_basis = Eigen::MatrixXd(3, 1);
    d.k_basis << 0, 0, 1;
    Eigen::Matrix3d about_z = Eigen::Matrix3d::Identity();
    about_z.topLeftCorner(2, 2) = rot2(0.28, 0.96);
    d.ad_samples = {Eigen::Matrix3d::Identity(), about_z};
    Eigen::MatrixXd N = Eigen::Matrix3d::Zero();
    N.topLeftCorner(2, 2) = rot2(0.0, 1.0);
    out.push_back({"so3_sphere_rotation", d, N, true});
    Eigen::MatrixXd scaled = N;
    scaled.topLeftCorner(2, 2) = rot2(0.0, 2.0);
    out.push_back({"so3_sphere_scaled", d, scaled, false});
  }
  {
    nij::HomogeneousDatum d;
    d.algebra = affine_complex();
    d.k_basis = Eigen::MatrixXd(4, 0);
    Eigen::Matrix4d stretch = Eigen::Vector4d(1, 1, 2, 2).asDiagonal();
    Eigen::Matrix4d twist = Eigen::Matrix4d::Identity();
    twist.bottomRightCorner(2, 2) = rot2(0.6, 0.8);
    d.ad_samples = {stretch, twist};
    Eigen::MatrixXd N = Eigen::Matrix4d::Zero();
    N(1, 0) = 1;
    N(0, 1) = -1;
    N(3, 2) = 1;
    N(2, 3) = -1;
    out.push_back({"affine_complex_i", d, N, true});
    out.push_back({"affine_complex_2i", d, 2.0 * N, false});
  }
  {
    nij::HomogeneousDatum d;
    d.algebra = nij::LieAlgebra::catalogue("heisenberg_3");
    d.k_basis = Eigen::MatrixXd(3, 1);
    d.k_basis << 0, 0, 1;  // the center
    Eigen::Matrix3d ad = Eigen::Matrix3d::Identity();
    ad(2, 0) = -0.5;
    ad(2, 1) = 1.5;
    d.ad_samples = {Eigen::Matrix3d::Identity(), ad};
    Eigen::MatrixXd N = Eigen::Matrix3d::Zero();
    N.topLeftCorner(2, 2) = rot2(0.0, 1.0);
    N(2, 2) = 1.0;
    out.push_back({"heisenberg_center_rotation", d, N, true});
    Eigen::MatrixXd stretched = N;
    stretched.topLeftCorner(2, 2) = rot2(0.0, 2.0);
    out.push_back({"heisenberg_center_stretched", d, stretched, false});
  }
  return out;
}

}  // namespace nijtest

#endif
