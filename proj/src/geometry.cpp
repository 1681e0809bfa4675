#include "nij/geometry.hpp"

#include <random>

namespace nij {

// ---------------------------------------------------------------------------
// VectorField

Eigen::VectorXd VectorField::eval(const Eigen::VectorXd& p) const {
  Eigen::VectorXd out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = eval_real(*comps[i], p);
  return out;
}

Eigen::MatrixXd VectorField::jacobian(const Eigen::VectorXd& p) const {
  const int n = static_cast<int>(p.size());
  Eigen::MatrixXd jac(dim(), n);
  for (int i = 0; i < dim(); ++i) jac.row(i) = eval_jet(*comps[i], p).grad.transpose();
  return jac;
}

VectorField VectorField::basis(const Chart& chart, int index) {
  VectorField f{chart, {}};
  for (int i = 0; i < chart.dim(); ++i)
    f.comps.push_back(Expr::constant(i == index ? 1.0 : 0.0));
  return f;
}

VectorField VectorField::constant(const Chart& chart, const Eigen::VectorXd& v) {
  VectorField f{chart, {}};
  for (int i = 0; i < v.size(); ++i) f.comps.push_back(Expr::constant(v[i]));
  return f;
}

// ---------------------------------------------------------------------------
// NOperatorField

Eigen::MatrixXd NOperatorField::eval(const Eigen::VectorXd& p) const {
  const int n = dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = eval_real(*entries[i][j], p);
  return m;
}

std::vector<Eigen::MatrixXd> NOperatorField::partials(const Eigen::VectorXd& p) const {
  const int n = dim();
  const int nc = static_cast<int>(p.size());
  std::vector<Eigen::MatrixXd> out(nc, Eigen::MatrixXd(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Jet2 jet = eval_jet(*entries[i][j], p);
      for (int k = 0; k < nc; ++k) out[k](i, j) = jet.grad[k];
    }
  return out;
}

Eigen::MatrixXd NOperatorField::dir_deriv(const Eigen::VectorXd& dir,
                                          const Eigen::VectorXd& p) const {
  const int n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = eval_jet(*entries[i][j], p).grad.dot(dir);
  return m;
}

NOperatorField NOperatorField::constant(const Chart& chart, const Eigen::MatrixXd& m) {
  NOperatorField N{chart, {}};
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<ExprPtr> row;
    for (int j = 0; j < m.cols(); ++j) row.push_back(Expr::constant(m(i, j)));
    N.entries.push_back(std::move(row));
  }
  return N;
}

NOperatorField NOperatorField::identity(const Chart& chart) {
  return constant(chart, Eigen::MatrixXd::Identity(chart.dim(), chart.dim()));
}

NOperatorField NOperatorField::from_strings(
    const Chart& chart, const std::vector<std::vector<std::string>>& rows) {
  NOperatorField N{chart, {}};
  for (const auto& row : rows) {
    std::vector<ExprPtr> r;
    for (const auto& s : row) r.push_back(parse(s, chart));
    N.entries.push_back(std::move(r));
  }
  return N;
}

// ---------------------------------------------------------------------------
// Sampler

std::vector<Eigen::VectorXd> Sampler::points() const {
  const int n = static_cast<int>(lo.size());
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    // 53 uniform mantissa bits; avoids distribution-implementation variance.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  for (int c = 0; c < count; ++c) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit();
    pts.push_back(std::move(p));
  }
  return pts;
}

Sampler Sampler::centered_box(int dim, double halfwidth, int count, std::uint64_t seed) {
  Sampler s;
  s.lo = Eigen::VectorXd::Constant(dim, -halfwidth);
  s.hi = Eigen::VectorXd::Constant(dim, halfwidth);
  s.count = count;
  s.seed = seed;
  return s;
}

// ---------------------------------------------------------------------------
// Pointwise calculus

Eigen::VectorXd lie_bracket(const VectorField& X, const VectorField& Y,
                            const Eigen::VectorXd& p) {
  return X.jacobian(p) * Y.eval(p) - Y.jacobian(p) * X.eval(p);
}

Eigen::VectorXd apply_N(const NOperatorField& N, const Eigen::VectorXd& v,
                        const Eigen::VectorXd& p) {
  return N.eval(p) * v;
}

Eigen::VectorXd torsion_tensor(const NOperatorField& N, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd Np = N.eval(p);
  const std::vector<Eigen::MatrixXd> dN = N.partials(p);
  const int nc = static_cast<int>(p.size());
  auto dir = [&](const Eigen::VectorXd& w) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N.dim(), N.dim());
    for (int k = 0; k < nc; ++k) m += w[k] * dN[k];
    return m;
  };
  const Eigen::VectorXd Nu = Np * u;
  const Eigen::VectorXd Nv = Np * v;
  return dir(Nv) * u - dir(Nu) * v - Np * (dir(v) * u - dir(u) * v);
}

Eigen::VectorXd torsion_definition(const NOperatorField& N, const VectorField& X,
                                   const VectorField& Y, const Eigen::VectorXd& p) {
  const int n = N.dim();
  const Eigen::MatrixXd Np = N.eval(p);
  const std::vector<Eigen::MatrixXd> dN = N.partials(p);

  const Eigen::VectorXd Xp = X.eval(p);
  const Eigen::VectorXd Yp = Y.eval(p);
  const Eigen::MatrixXd JX = X.jacobian(p);
  const Eigen::MatrixXd JY = Y.jacobian(p);

  // D(NX) column k = (dN/dx_k) X_p + N (DX e_k)
  auto composite_jac = [&](const Eigen::VectorXd& val, const Eigen::MatrixXd& jac) {
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) m.col(k) = dN[k] * val;
    return Eigen::MatrixXd(m + Np * jac);
  };

  const Eigen::VectorXd NXp = Np * Xp;
  const Eigen::VectorXd NYp = Np * Yp;
  const Eigen::MatrixXd JNX = composite_jac(Xp, JX);
  const Eigen::MatrixXd JNY = composite_jac(Yp, JY);

  const Eigen::VectorXd br_NX_NY = JNX * NYp - JNY * NXp;
  const Eigen::VectorXd br_NX_Y = JNX * Yp - JY * NXp;
  const Eigen::VectorXd br_X_NY = JX * NYp - JNY * Xp;
  const Eigen::VectorXd br_X_Y = JX * Yp - JY * Xp;

  return br_NX_NY - Np * (br_NX_Y + br_X_NY - Np * br_X_Y);
}

Eigen::VectorXd contracted_bracket(const NOperatorField& N, const VectorField& X,
                                   const VectorField& Y, const Eigen::VectorXd& p) {
  const int n = N.dim();
  const Eigen::MatrixXd Np = N.eval(p);
  const std::vector<Eigen::MatrixXd> dN = N.partials(p);

  const Eigen::VectorXd Xp = X.eval(p);
  const Eigen::VectorXd Yp = Y.eval(p);
  const Eigen::MatrixXd JX = X.jacobian(p);
  const Eigen::MatrixXd JY = Y.jacobian(p);

  auto composite_jac = [&](const Eigen::VectorXd& val, const Eigen::MatrixXd& jac) {
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) m.col(k) = dN[k] * val;
    return Eigen::MatrixXd(m + Np * jac);
  };

  const Eigen::VectorXd NXp = Np * Xp;
  const Eigen::VectorXd NYp = Np * Yp;
  const Eigen::MatrixXd JNX = composite_jac(Xp, JX);
  const Eigen::MatrixXd JNY = composite_jac(Yp, JY);

  const Eigen::VectorXd br_NX_Y = JNX * Yp - JY * NXp;
  const Eigen::VectorXd br_X_NY = JX * NYp - JNY * Xp;
  const Eigen::VectorXd br_X_Y = JX * Yp - JY * Xp;

  return br_NX_Y + br_X_NY - Np * br_X_Y;
}

// ---------------------------------------------------------------------------
// Sampled verdicts

StructureResult check_structure(const NOperatorField& N, StructureKind kind,
                                const Sampler& sampler, double tol) {
  const int n = N.dim();
  StructureResult res;
  res.ok = true;
  for (const auto& p : sampler.points()) {
    const Eigen::MatrixXd Np = N.eval(p);
    Eigen::MatrixXd defect = Np * Np;
    switch (kind) {
      case StructureKind::AlmostComplex:
        defect += Eigen::MatrixXd::Identity(n, n);
        break;
      case StructureKind::AlmostProduct:
        defect -= Eigen::MatrixXd::Identity(n, n);
        break;
      case StructureKind::AlmostTangent:
        break;
    }
    const double norm = defect.cwiseAbs().maxCoeff();
    if (norm > res.worst) {
      res.worst = norm;
      res.witness = p;
    }
  }
  res.ok = res.worst <= tol;
  return res;
}

NijenhuisResult is_nijenhuis(const NOperatorField& N, const Sampler& sampler,
                             double tol) {
  const int n = N.dim();
  NijenhuisResult res;
  res.worst.norm = -1.0;
  for (const auto& p : sampler.points()) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Eigen::VectorXd u = Eigen::VectorXd::Unit(n, i);
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, j);
        Eigen::VectorXd t = torsion_tensor(N, u, v, p);
        const double norm = t.size() ? t.cwiseAbs().maxCoeff() : 0.0;
        if (norm > res.worst.norm) {
          res.worst = {p, u, v, t, TorsionMethod::Tensor, norm};
        }
      }
    }
  }
  if (res.worst.norm < 0.0) res.worst.norm = 0.0;  // 1-dimensional chart: no pairs
  res.ok = res.worst.norm <= tol;
  return res;
}

// ---------------------------------------------------------------------------
// Symbolic field algebra

VectorField vf_apply_N(const NOperatorField& N, const VectorField& X) {
  VectorField out{X.chart, {}};
  const int n = N.dim();
  for (int i = 0; i < n; ++i) {
    ExprPtr acc = Expr::constant(0.0);
    for (int j = 0; j < n; ++j) acc = Expr::add(acc, Expr::mul(N.entries[i][j], X.comps[j]));
    out.comps.push_back(std::move(acc));
  }
  return out;
}

VectorField vf_scale(const ExprPtr& f, const VectorField& X) {
  VectorField out{X.chart, {}};
  for (const auto& c : X.comps) out.comps.push_back(Expr::mul(f, c));
  return out;
}

VectorField vf_bracket(const VectorField& X, const VectorField& Y) {
  VectorField out{X.chart, {}};
  const int n = X.dim();
  for (int i = 0; i < n; ++i) {
    ExprPtr acc = Expr::constant(0.0);
    for (int j = 0; j < n; ++j) {
      acc = Expr::add(acc, Expr::mul(differentiate(*X.comps[i], j), Y.comps[j]));
      acc = Expr::sub(acc, Expr::mul(differentiate(*Y.comps[i], j), X.comps[j]));
    }
    out.comps.push_back(std::move(acc));
  }
  return out;
}

VectorField vf_contracted(const NOperatorField& N, const VectorField& X,
                          const VectorField& Y) {
  const VectorField NX = vf_apply_N(N, X);
  const VectorField NY = vf_apply_N(N, Y);
  const VectorField t1 = vf_bracket(NX, Y);
  const VectorField t2 = vf_bracket(X, NY);
  const VectorField t3 = vf_apply_N(N, vf_bracket(X, Y));
  VectorField out{X.chart, {}};
  for (int i = 0; i < X.dim(); ++i)
    out.comps.push_back(
        Expr::sub(Expr::add(t1.comps[i], t2.comps[i]), t3.comps[i]));
  return out;
}

VectorField vf_torsion(const NOperatorField& N, const VectorField& X,
                       const VectorField& Y) {
  const VectorField NX = vf_apply_N(N, X);
  const VectorField NY = vf_apply_N(N, Y);
  const VectorField lead = vf_bracket(NX, NY);
  const VectorField corr = vf_apply_N(N, vf_contracted(N, X, Y));
  VectorField out{X.chart, {}};
  for (int i = 0; i < X.dim(); ++i)
    out.comps.push_back(Expr::sub(lead.comps[i], corr.comps[i]));
  return out;
}

}  // namespace nij
