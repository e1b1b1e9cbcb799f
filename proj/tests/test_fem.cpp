#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diracgap/disc_analytic.hpp"
#include "diracgap/eigensolver.hpp"
#include "diracgap/error.hpp"
#include "diracgap/fem.hpp"

using namespace diracgap;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("assembled matrices are exactly Hermitian") {
  const auto mesh = std::make_shared<const Mesh>(triangulate(BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}}), 0.1));
  for (double eta : {0.0, kPi / 6, kPi / 4, -kPi / 3, kPi, 2.0}) {
    const AssembledProblem p = assemble(mesh, BoundaryFamily::from_eta(eta));
    CHECK(hermitian_defect(p.form) == 0.0);
    CHECK(hermitian_defect(p.mass) == 0.0);
    const AssembledProblem q = assemble_first_order(mesh, BoundaryFamily::from_eta(eta));
    CHECK(hermitian_defect(q.form) == 0.0);
  }
}

TEST_CASE("constrained space dimensions") {
  const Mesh m = triangulate(BoundaryCurve::disc(1.0), 0.2);
  const AssembledProblem p = assemble(m, BoundaryFamily::from_eta(0.0));
  CHECK(p.dimension() == 2 * m.interior_count() + m.boundary_count());
  CHECK(p.reduction.rows() == 2 * m.vertex_count());
  CHECK(p.reduction.cols() == p.dimension());
}

TEST_CASE("expanded vectors satisfy the nodal boundary condition") {
  const Mesh m = triangulate(BoundaryCurve::ellipse(1.5, 0.75), 0.2);
  const BoundaryFamily f = BoundaryFamily::from_eta(kPi / 5);
  const ConstrainedSpace s = two_spinor_space(m, f);
  const Vector x = Vector::LinSpaced(s.size(), 0.3, 2.0).cast<Complex>() * Complex(1.0, 0.5);
  const Vector u = s.expand(x);
  for (const auto& node : m.boundary)
    CHECK(std::abs(u(2 * node.vertex + 1) - f.beta * node.tangent * u(2 * node.vertex)) < 1e-14);
  CHECK((u - s.reduction() * x).norm() < 1e-13);
}

TEST_CASE("near zigzag cannot be assembled") {
  const Mesh m = triangulate(BoundaryCurve::disc(1.0), 0.2);
  BoundaryFamily f;
  f.eta = kPi / 2;
  CHECK_THROWS_AS(assemble(m, f), Error);
}

TEST_CASE("discrete scaling is exact") {
  const auto c = BoundaryCurve::ellipse(1.5, 0.75);
  const Mesh m = triangulate(c, 0.15);
  const EigenResult base = smallest_eigenpairs(assemble(m, BoundaryFamily::from_eta(kPi / 4)), 4, 1e-10);
  for (double r : {0.5, 3.0}) {
    const EigenResult s = smallest_eigenpairs(assemble(scaled(m, r), BoundaryFamily::from_eta(kPi / 4)), 4, 1e-10);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(s.gaps[i] * r / base.gaps[i] - 1.0) <= 1e-10);
  }
}

TEST_CASE("spectrum is invariant under rotation") {
  const Mesh m = triangulate(BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}}), 0.15);
  const BoundaryFamily f = BoundaryFamily::from_eta(kPi / 6);
  const EigenResult a = smallest_eigenpairs(assemble(m, f), 4, 1e-10);
  const EigenResult b = smallest_eigenpairs(assemble(rotated(m, 0.77), f), 4, 1e-10);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-9 * a.eigenvalues[i]);
}

TEST_CASE("squared form is positive for eta 0 and tracks the disc value") {
  const auto mesh = std::make_shared<const Mesh>(triangulate(BoundaryCurve::disc(1.0), 0.1));
  const EigenResult r = smallest_eigenpairs(assemble(mesh, BoundaryFamily::from_eta(0.0)), 4, 1e-9);
  CHECK(r.eigenvalues[0] > 0.0);
  CHECK(std::abs(r.gaps[0] / k0(1.0) - 1.0) < 0.01);
}

TEST_CASE("first-order filter keeps confirmed eigenvalues") {
  const FilteredSpectrum f = filter_first_order({-1.31, 1.31, -1.43, 1.43, 2.6, 9.0}, {2.05, 2.06, 6.9}, 0.05);
  CHECK(f.accepted.size() == 3);
  CHECK(f.rejected.size() == 2);
  CHECK(f.out_of_window == 1);
}

TEST_CASE("first-order pencil: filtered gap within 2 percent, spurious modes rejected") {
  const auto mesh = std::make_shared<const Mesh>(triangulate(BoundaryCurve::disc(1.0), 0.1));
  const AssembledProblem first = assemble_first_order(mesh, BoundaryFamily::from_eta(0.0));
  const std::vector<double> spec = dense_spectrum(first.form, first.mass);
  const EigenResult sq = smallest_eigenpairs(assemble(mesh, BoundaryFamily::from_eta(0.0)), 8, 1e-9);
  const FilteredSpectrum f = filter_first_order(spec, sq.eigenvalues, 0.05);
  double gap = 1e300;
  for (double l : f.accepted) gap = std::min(gap, std::abs(l));
  CHECK(std::abs(gap / k0(1.0) - 1.0) < 0.02);
  CHECK(!f.rejected.empty());
}

TEST_CASE("scalar matrices") {
  const Mesh m = triangulate(BoundaryCurve::disc(1.0), 0.2);
  const RealSparseMatrix k = scalar_stiffness(m);
  const RealSparseMatrix mm = scalar_mass(m);
  const RealVector one = RealVector::Ones(m.vertex_count());
  CHECK((k * one).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(one.dot(mm * one) == doctest::Approx(mesh_area(m)).epsilon(1e-13));
}

TEST_CASE("triplet export") {
  SparseMatrix a(2, 2);
  a.insert(0, 1) = Complex(1.5, -2.0);
  a.insert(1, 0) = Complex(1.5, 2.0);
  std::ostringstream os;
  write_triplets(os, a);
  CHECK(os.str() == "1 0 1.5 2\n0 1 1.5 -2\n");
}
