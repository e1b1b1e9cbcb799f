#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diracgap/error.hpp"
#include "diracgap/mesh.hpp"

using namespace diracgap;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("disc ring mesh counts") {
  const Mesh m = triangulate(BoundaryCurve::disc(1.0), 0.1);
  CHECK(m.rings == 10);
  CHECK(m.vertex_count() == 1 + 3 * 10 * 11);
  CHECK(m.triangle_count() == 6 * 10 * 10);
  CHECK(m.boundary_count() == 60);
  CHECK(m.h_eff == doctest::Approx(0.1));
  CHECK_NOTHROW(check_mesh(m));
}

TEST_CASE("mesh area converges to the domain area") {
  const auto c = BoundaryCurve::ellipse(1.5, 0.75);
  const double exact = area(c);
  const double e1 = std::abs(mesh_area(triangulate(c, 0.1)) - exact);
  const double e2 = std::abs(mesh_area(triangulate(c, 0.05)) - exact);
  CHECK(e2 < e1);
  CHECK(e1 / e2 > 3.0);
}

TEST_CASE("diameter constant and aspect ratio hold on all curves") {
  for (const auto& c :
       {BoundaryCurve::disc(1.0), BoundaryCurve::ellipse(1.5, 0.75), BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}})})
    for (double h : {0.2, 0.1, 0.05}) {
      const Mesh m = triangulate(c, h);
      CHECK(max_triangle_diameter(m) <= kMeshDiameterConstant * h);
      CHECK(worst_aspect_ratio(m) <= MeshOptions{}.max_aspect_ratio);
      CHECK_NOTHROW(check_mesh(m));
    }
}

TEST_CASE("boundary quadrature integrates exact arclength") {
  const auto c = BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}});
  const Mesh m = triangulate(c, 0.1);
  double len = 0.0, curv = 0.0;
  for (const auto& e : m.boundary_edges) {
    len += e.length;
    for (const auto& q : e.quad) curv += q.ds_weight * q.curvature;
  }
  CHECK(len == doctest::Approx(perimeter(c)).epsilon(1e-10));
  CHECK(curv == doctest::Approx(2.0 * kPi).epsilon(1e-6));
}

TEST_CASE("mesh size outside the valid range is rejected") {
  const auto c = BoundaryCurve::disc(1.0);
  CHECK_THROWS_AS(triangulate(c, 0.5), Error);
  CHECK_THROWS_AS(triangulate(c, 0.0), Error);
  CHECK_THROWS_AS(triangulate(c, -0.1), Error);
  try {
    triangulate(c, 0.6);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("scaled and rotated meshes") {
  const Mesh m = triangulate(BoundaryCurve::disc(1.0), 0.2);
  const Mesh s = scaled(m, 3.0);
  CHECK(mesh_area(s) == doctest::Approx(9.0 * mesh_area(m)).epsilon(1e-14));
  CHECK(s.boundary[0].curvature == doctest::Approx(m.boundary[0].curvature / 3.0));
  const Mesh r = rotated(m, 0.4);
  CHECK(mesh_area(r) == doctest::Approx(mesh_area(m)).epsilon(1e-14));
  CHECK(std::abs(r.boundary[3].tangent - m.boundary[3].tangent * std::polar(1.0, 0.4)) < 1e-14);
  CHECK_NOTHROW(check_mesh(r));
}

TEST_CASE("boundary nodes are counterclockwise with consistent edges") {
  const Mesh m = triangulate(BoundaryCurve::ellipse(1.5, 0.75), 0.1);
  for (int i = 0; i < m.boundary_count(); ++i) {
    const auto& e = m.boundary_edges[i];
    CHECK(e.v0 == m.boundary[i].vertex);
    CHECK(e.v1 == m.boundary[(i + 1) % m.boundary_count()].vertex);
    CHECK(e.triangle >= 0);
    CHECK(m.on_boundary(e.v0));
  }
}
