#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diracgap/error.hpp"
#include "diracgap/geometry.hpp"

using namespace diracgap;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<BoundaryCurve> curves() {
  return {BoundaryCurve::disc(1.0), BoundaryCurve::ellipse(1.5, 0.75), BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}})};
}
}  // namespace

TEST_CASE("areas match closed forms") {
  CHECK(area(BoundaryCurve::disc(1.0)) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(area(BoundaryCurve::disc(2.5)) == doctest::Approx(kPi * 6.25).epsilon(1e-13));
  CHECK(area(BoundaryCurve::ellipse(1.5, 0.75)) == doctest::Approx(kPi * 1.125).epsilon(1e-13));
  // r = 1 + 0.2 cos 3θ: ½∫r² = π(1 + 0.02)
  CHECK(area(BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}})) == doctest::Approx(kPi * 1.02).epsilon(1e-13));
}

TEST_CASE("total curvature is 2 pi") {
  for (const auto& c : curves()) CHECK(std::abs(total_curvature(c) - 2.0 * kPi) <= 1e-8);
}

TEST_CASE("disc frame and curvature") {
  const auto c = BoundaryCurve::disc(2.0);
  for (double th : {0.0, 0.7, 2.0, 4.5}) {
    const CurvePoint p = c.evaluate(th);
    CHECK(p.curvature == doctest::Approx(0.5));
    CHECK(p.speed == doctest::Approx(2.0));
    CHECK(std::abs(p.tangent - Complex(-std::sin(th), std::cos(th))) < 1e-14);
    CHECK((p.normal - Eigen::Vector2d(std::cos(th), std::sin(th))).norm() < 1e-14);
  }
  CHECK(perimeter(c) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
}

TEST_CASE("frame is orthonormal and positively oriented") {
  for (const auto& c : curves())
    for (int i = 0; i < 37; ++i) {
      const CurvePoint p = c.evaluate(0.17 * i);
      CHECK(std::abs(std::abs(p.tangent) - 1.0) < 1e-14);
      CHECK(std::abs(p.normal.norm() - 1.0) < 1e-14);
      CHECK(std::abs(p.tangent.real() * p.normal.x() + p.tangent.imag() * p.normal.y()) < 1e-14);
      // n = (t2, -t1)
      CHECK(std::abs(p.normal.x() - p.tangent.imag()) < 1e-14);
      CHECK(std::abs(p.normal.y() + p.tangent.real()) < 1e-14);
    }
}

TEST_CASE("ellipse curvature at the axis ends") {
  const auto c = BoundaryCurve::ellipse(1.5, 0.75);
  CHECK(c.evaluate(0.0).curvature == doctest::Approx(1.5 / (0.75 * 0.75)));
  CHECK(c.evaluate(kPi / 2).curvature == doctest::Approx(0.75 / (1.5 * 1.5)));
}

TEST_CASE("arclength and diameter") {
  const auto c = BoundaryCurve::disc(1.0);
  CHECK(arclength(c, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(diameter(c) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(diameter(BoundaryCurve::ellipse(1.5, 0.75)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("scaling multiplies lengths and areas") {
  for (const auto& c : curves()) {
    const auto s = c.scaled(3.0);
    CHECK(area(s) == doctest::Approx(9.0 * area(c)).epsilon(1e-12));
    CHECK(perimeter(s) == doctest::Approx(3.0 * perimeter(c)).epsilon(1e-12));
  }
}

TEST_CASE("invalid curves are rejected") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::config_error;
  };
  CHECK(code([] { BoundaryCurve::disc(0.0); }) == Errc::invalid_curve);
  CHECK(code([] { BoundaryCurve::disc(-1.0); }) == Errc::invalid_curve);
  CHECK(code([] { BoundaryCurve::ellipse(1.0, std::nan("")); }) == Errc::invalid_curve);
  CHECK(code([] { BoundaryCurve::fourier(1.0, {{3, 1.2, 0.0}}); }) == Errc::invalid_curve);
  CHECK(code([] { BoundaryCurve::fourier(1.0, {{0, 0.1, 0.0}}); }) == Errc::invalid_curve);
}

TEST_CASE("identifiers") {
  CHECK(BoundaryCurve::disc(1.0).id().find("disc") == 0);
  CHECK(BoundaryCurve::ellipse(1.5, 0.75).id().find("ellipse") == 0);
  CHECK(BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}}).id().find("fourier") == 0);
}
