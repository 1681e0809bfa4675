#include <doctest.h>

#include "helpers.hpp"
#include "nij/liealg.hpp"

using namespace nij;

TEST_CASE("catalogue algebras validate and have the expected brackets") {
  LieAlgebra so3 = LieAlgebra::catalogue("so3");
  CHECK_NOTHROW(so3.validate());
  Eigen::Vector3d e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  CHECK((alg_bracket(so3, e1, e2) - e3).cwiseAbs().maxCoeff() == 0.0);
  CHECK((alg_bracket(so3, e2, e3) - e1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((alg_bracket(so3, e3, e1) - e2).cwiseAbs().maxCoeff() == 0.0);
  CHECK((alg_bracket(so3, e2, e1) + e3).cwiseAbs().maxCoeff() == 0.0);

  LieAlgebra aff = LieAlgebra::catalogue("affine_2d");
  CHECK_NOTHROW(aff.validate());
  Eigen::Vector2d f1(1, 0), f2(0, 1);
  CHECK((alg_bracket(aff, f1, f2) - f2).cwiseAbs().maxCoeff() == 0.0);

  LieAlgebra heis = LieAlgebra::catalogue("heisenberg_3");
  CHECK_NOTHROW(heis.validate());
  CHECK((alg_bracket(heis, e1, e2) - e3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(alg_bracket(heis, e1, e3).cwiseAbs().maxCoeff() == 0.0);

  CHECK(LieAlgebra::catalogue("abelian_5").dim == 5);
  CHECK_THROWS_AS(LieAlgebra::catalogue("nope"), std::invalid_argument);
  CHECK_NOTHROW(nijtest::affine_complex().validate());
}

TEST_CASE("validate rejects bad structure constants and names the triple") {
  LieAlgebra bad = LieAlgebra::abelian(3);
  bad.c[2](0, 1) = 1.0;  // not antisymmetric
  try {
    bad.validate();
    FAIL_CHECK("expected antisymmetry failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("antisymmetry") != std::string::npos);
  }

  // break the Jacobi identity: [e1,e2]=e3, [e1,e3]=e1, rest zero
  LieAlgebra nj = LieAlgebra::abelian(3);
  auto set = [&nj](int i, int j, int k, double v) {
    nj.c[k](i, j) += v;
    nj.c[k](j, i) -= v;
  };
  set(0, 1, 2, 1.0);
  set(0, 2, 0, 1.0);
  try {
    nj.validate();
    FAIL_CHECK("expected Jacobi failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("Jacobi") != std::string::npos);
    CHECK(std::string(e.what()).find("(1,2,3)") != std::string::npos);
  }
}

TEST_CASE("so3 with N = diag(1,1,2) has torsion e3 on (e1,e2) and none elsewhere") {
  LieAlgebra so3 = LieAlgebra::catalogue("so3");
  Eigen::MatrixXd N = Eigen::Vector3d(1, 1, 2).asDiagonal();
  Eigen::Vector3d e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  Eigen::VectorXd t12 = alg_torsion(so3, N, e1, e2);
  CHECK((t12 - e3).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(alg_torsion(so3, N, e2, e3).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(alg_torsion(so3, N, e1, e3).cwiseAbs().maxCoeff() <= 1e-13);

  AlgNijenhuisResult r = alg_is_nijenhuis(so3, N, 1e-13);
  CHECK_FALSE(r.ok);
  CHECK(r.worst.i == 0);
  CHECK(r.worst.j == 1);
  CHECK(r.worst.norm == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("diagonal operators on affine_2d are Nijenhuis") {
  LieAlgebra aff = LieAlgebra::catalogue("affine_2d");
  for (double a : {1.0, 2.0, -0.5}) {
    for (double b : {1.0, 3.0, 0.25}) {
      Eigen::MatrixXd N = Eigen::Vector2d(a, b).asDiagonal();
      AlgNijenhuisResult r = alg_is_nijenhuis(aff, N, 1e-13);
      CHECK(r.ok);
      CHECK(r.contracted_jacobi_defect <= 1e-10);
    }
  }
}

TEST_CASE("multiplication by i on aff(C) is Nijenhuis, identity always is") {
  LieAlgebra affc = nijtest::affine_complex();
  Eigen::Matrix4d N = Eigen::Matrix4d::Zero();
  N(1, 0) = 1;
  N(0, 1) = -1;
  N(3, 2) = 1;
  N(2, 3) = -1;
  CHECK(alg_is_nijenhuis(affc, N, 1e-13).ok);
  CHECK(alg_is_nijenhuis(affc, Eigen::MatrixXd::Identity(4, 4), 1e-13).ok);
}

TEST_CASE("span_residual basics") {
  Eigen::MatrixXd basis(3, 1);
  basis << 0, 0, 2;
  CHECK(span_residual(basis, Eigen::Vector3d(0, 0, 5)) <= 1e-13);
  CHECK(span_residual(basis, Eigen::Vector3d(1, 0, 5)) == doctest::Approx(1.0));
  Eigen::MatrixXd empty(3, 0);
  CHECK(span_residual(empty, Eigen::Vector3d(3, 4, 0)) == doctest::Approx(5.0));
  CHECK(span_residual(empty, Eigen::Vector3d::Zero()) == 0.0);
}

TEST_CASE("HomogeneousDatum validation catches broken data") {
  nijtest::HomInstance inst = nijtest::hom_corpus()[2];  // so3 with k = span(e3)
  CHECK_NOTHROW(inst.datum.validate());

  nij::HomogeneousDatum not_sub = inst.datum;
  not_sub.k_basis = Eigen::MatrixXd(3, 2);
  not_sub.k_basis << 1, 0, 0, 1, 0, 0;  // span(e1,e2) is not a subalgebra of so3
  CHECK_THROWS_AS(not_sub.validate(), std::invalid_argument);

  nij::HomogeneousDatum bad_ad = inst.datum;
  Eigen::Matrix3d shear = Eigen::Matrix3d::Identity();
  shear(0, 1) = 1.0;  // not an so3 bracket automorphism
  bad_ad.ad_samples = {shear};
  CHECK_THROWS_AS(bad_ad.validate(), std::invalid_argument);

  nij::HomogeneousDatum deficient = inst.datum;
  deficient.k_basis = Eigen::MatrixXd(3, 2);
  deficient.k_basis << 0, 0, 0, 0, 1, 2;  // duplicate direction
  CHECK_THROWS_AS(deficient.validate(), std::invalid_argument);
}

TEST_CASE("homogeneous projectability: Ad-criterion") {
  auto corpus = nijtest::hom_corpus();
  for (const auto& inst : corpus) {
    CAPTURE(inst.name);
    CHECK_NOTHROW(inst.datum.validate());
    HomProjectableResult pr = check_homogeneous_projectable(inst.datum, inst.op, 1e-10);
    CHECK(pr.ok);  // every corpus operator is chosen projectable
  }
  // an operator moving k out of itself is rejected
  nijtest::HomInstance so3 = corpus[2];
  Eigen::Matrix3d bad = Eigen::Matrix3d::Zero();
  bad(0, 2) = 1.0;  // N e3 = e1, leaves k = span(e3)
  HomProjectableResult pr = check_homogeneous_projectable(so3.datum, bad, 1e-10);
  CHECK_FALSE(pr.ok);
  CHECK(pr.worst_k_residual > 0.1);
}

TEST_CASE("homogeneous complex criterion: both routes agree on the whole corpus") {
  for (const auto& inst : nijtest::hom_corpus()) {
    CAPTURE(inst.name);
    HomComplexResult cx = check_homogeneous_complex(inst.datum, inst.op, 1e-10);
    CHECK(cx.agree);
    CHECK(cx.route_k == inst.expect_complex);
    CHECK(cx.route_zplus == inst.expect_complex);
    CHECK(cx.verdict == inst.expect_complex);
  }
}

TEST_CASE("algebra bracket matches the invariant-frame chart computation") {
  // On the affine group {(a,b) : a > 0} of maps x -> a x + b, the frame
  // F1 = a d/da + b d/db (dilation) and F2 = d/db (translation) satisfies
  // [F1, F2] = F2 under this library's bracket sign, reproducing
  // [e1, e2] = e2 from affine_2d.
  Chart c({"a", "b"});
  VectorField F1{c, {parse("a", c), parse("b", c)}};
  VectorField F2{c, {parse("0", c), parse("1", c)}};
  LieAlgebra aff = LieAlgebra::catalogue("affine_2d");
  Eigen::Vector2d e1(1, 0), e2(0, 1);
  Eigen::VectorXd coeff_bracket = alg_bracket(aff, e1, e2);  // = e2
  for (const auto& p : Sampler::centered_box(2, 0.4, 8, 33).points()) {
    Eigen::VectorXd shifted = p + Eigen::Vector2d(2.0, 0.0);  // keep a > 0
    Eigen::VectorXd chart_bracket = lie_bracket(F1, F2, shifted);
    Eigen::VectorXd expected = coeff_bracket[0] * F1.eval(shifted) +
                               coeff_bracket[1] * F2.eval(shifted);
    CHECK((chart_bracket - expected).cwiseAbs().maxCoeff() <= 1e-8);
  }
}
