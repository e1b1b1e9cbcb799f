#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "diracgap/boundary.hpp"
#include "diracgap/error.hpp"

using namespace diracgap;

namespace {
constexpr double kPi = std::numbers::pi;
const double kS2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("beta and B on the four sign branches") {
  // sin ≥ 0, cos > 0
  CHECK(beta(kPi / 4) == doctest::Approx(kS2 - 1.0).epsilon(1e-15));
  CHECK(b_factor(kPi / 4) == doctest::Approx(kS2 - 1.0).epsilon(1e-15));
  // sin ≥ 0, cos < 0
  CHECK(beta(3 * kPi / 4) == doctest::Approx(-(kS2 - 1.0)).epsilon(1e-15));
  CHECK(b_factor(3 * kPi / 4) == doctest::Approx(kS2 - 1.0).epsilon(1e-15));
  // sin < 0, cos > 0
  CHECK(beta(-kPi / 4) == doctest::Approx(kS2 + 1.0).epsilon(1e-15));
  CHECK(b_factor(-kPi / 4) == doctest::Approx(kS2 - 1.0).epsilon(1e-15));
  // sin < 0, cos < 0
  CHECK(beta(-3 * kPi / 4) == doctest::Approx(-(kS2 + 1.0)).epsilon(1e-15));
  CHECK(b_factor(-3 * kPi / 4) == doctest::Approx(kS2 - 1.0).epsilon(1e-15));
}

TEST_CASE("B closed forms") {
  CHECK(b_factor(0.0) == 1.0);
  CHECK(b_factor(kPi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b_factor(kPi / 6) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(b_factor(kPi / 3) == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(beta(0.0) == 1.0);
  CHECK(beta(kPi) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("B decreases toward pi/2") {
  double prev = 2.0;
  for (int i = 0; i < 50; ++i) {
    const double b = b_factor(i * (kPi / 2) / 50.0);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("near zigzag is rejected") {
  for (double eta : {kPi / 2, -kPi / 2, kPi / 2 + 1e-10, 3 * kPi / 2}) {
    try {
      b_factor(eta);
      FAIL("expected near-zigzag");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::near_zigzag);
    }
  }
  CHECK_NOTHROW(b_factor(kPi / 2 - 1e-6));
  CHECK_THROWS_AS(BoundaryFamily::from_eta(kPi / 2), Error);
}

TEST_CASE("projectors encode u2 = beta t u1") {
  for (double eta : {0.0, kPi / 6, kPi / 4, -kPi / 3, kPi, 2.5})
    for (double phi : {0.0, 1.1, 3.0}) {
      const Complex t = std::polar(1.0, phi);
      const ProjectorPair p = projector(eta, t);
      const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
      CHECK((p.plus * p.plus - p.plus).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((p.plus + p.minus - id).cwiseAbs().maxCoeff() < 1e-15);
      Eigen::Vector2cd u(1.0, beta(eta) * t);
      CHECK((p.minus * u).norm() < 1e-14 * u.norm());
    }
  CHECK_THROWS_AS(projector(0.0, Complex(1.1, 0.0)), Error);
}

TEST_CASE("valley matrices are Hermitian and unitary with rank-2 projectors") {
  for (ValleyKind kind : {ValleyKind::zigzag, ValleyKind::infinite_mass, ValleyKind::armchair})
    for (double phase : {0.0, kPi / 3})
      for (double phi : {0.0, 0.8, 2.9}) {
        const ValleyBoundary vb{kind, std::polar(1.0, phase)};
        const Eigen::Matrix4cd a = valley_matrix(vb, std::polar(1.0, phi));
        const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
        CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((a * a - id).cwiseAbs().maxCoeff() <= 1e-14);
        Eigen::JacobiSVD<Eigen::Matrix4cd> svd(valley_projector(vb, std::polar(1.0, phi)));
        CHECK((svd.singularValues().array() > 1e-8).count() == 2);
      }
}

TEST_CASE("valley kind names round-trip") {
  for (ValleyKind kind : {ValleyKind::zigzag, ValleyKind::infinite_mass, ValleyKind::armchair})
    CHECK(valley_kind_from_string(to_string(kind)) == kind);
  CHECK_THROWS_AS(valley_kind_from_string("bearded"), Error);
}

TEST_CASE("infinite-mass valley blocks match eta 0 and eta pi") {
  const Complex t = std::polar(1.0, 0.3);
  const Eigen::Matrix4cd a = valley_matrix({ValleyKind::infinite_mass, 1.0}, t);
  CHECK((a.topLeftCorner<2, 2>() - a_matrix(0.0, t)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a.bottomRightCorner<2, 2>() - a_matrix(kPi, t)).cwiseAbs().maxCoeff() < 1e-15);
}
