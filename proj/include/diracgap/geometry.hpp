#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "diracgap/linalg.hpp"

namespace diracgap {

enum class CurveKind { disc, ellipse, fourier };

/// One term a cos(nθ) + b sin(nθ) of a fourier-star radius.
struct Harmonic {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
};

/// Frame and curvature of the boundary at one parameter value.
///
/// The curve runs counterclockwise, so the outward normal n and the unit
/// tangent t form a positively oriented pair (t is n rotated by +90°) and
/// ∂_s t = -κ n. The tangent is also given as the unit complex number
/// t1 + i t2.
struct CurvePoint {
  Eigen::Vector2d point;
  Eigen::Vector2d normal;
  Complex tangent;
  double curvature = 0.0;
  /// |dp/dθ|, so ds = speed dθ.
  double speed = 0.0;
};

/// Closed C² star-shaped boundary curve p(θ), θ ∈ [0, 2π).
///
/// disc and fourier-star use the polar angle; the ellipse uses the
/// eccentric anomaly p(θ) = (a cos θ, b sin θ). In every case ρ p(θ) for
/// ρ ∈ [0, 1] sweeps the enclosed domain, which is what the ring mesher
/// relies on.
class BoundaryCurve {
 public:
  static BoundaryCurve disc(double radius);
  static BoundaryCurve ellipse(double a, double b);
  static BoundaryCurve fourier(double r0, std::vector<Harmonic> harmonics);

  CurveKind kind() const noexcept { return kind_; }
  double radius() const noexcept { return r0_; }
  double semi_axis_a() const noexcept { return a_; }
  double semi_axis_b() const noexcept { return b_; }
  const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }

  Eigen::Vector2d position(double theta) const;
  Eigen::Vector2d first_derivative(double theta) const;
  Eigen::Vector2d second_derivative(double theta) const;
  CurvePoint evaluate(double theta) const;

  /// Upper bound of |p(θ)| over the curve.
  double max_radius() const;

  /// Same shape scaled about the origin by factor > 0.
  BoundaryCurve scaled(double factor) const;

  /// Short identifier such as "ellipse(a=1.5,b=0.75)".
  std::string id() const;

 private:
  BoundaryCurve() = default;
  void polar(double theta, double& r, double& dr, double& ddr) const;

  CurveKind kind_ = CurveKind::disc;
  double r0_ = 1.0;
  double a_ = 1.0;
  double b_ = 1.0;
  std::vector<Harmonic> harmonics_;
};

/// |Ω| from Green's theorem, ½∮(x y' - y x') dθ, by the periodic trapezoid rule.
double area(const BoundaryCurve& curve, int nodes = 4096);

/// ∮ κ ds; equals 2π for every simple closed C² curve.
double total_curvature(const BoundaryCurve& curve, int nodes = 4096);

double perimeter(const BoundaryCurve& curve, int nodes = 4096);

/// Arclength of the curve between two parameter values (θ0 < θ1), Gauss-Legendre.
double arclength(const BoundaryCurve& curve, double theta0, double theta1);

/// Domain diameter, max |p(θ) - p(θ')| over a sampled boundary.
double diameter(const BoundaryCurve& curve, int samples = 720);

}  // namespace diracgap
