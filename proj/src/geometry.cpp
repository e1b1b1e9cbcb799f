#include "diracgap/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRadiusSamples = 8192;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(Errc::invalid_curve, std::string(name) + " must be positive and finite");
}

}  // namespace

BoundaryCurve BoundaryCurve::disc(double radius) {
  require_positive(radius, "disc radius R");
  BoundaryCurve c;
  c.kind_ = CurveKind::disc;
  c.r0_ = radius;
  return c;
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b) {
  require_positive(a, "ellipse semi-axis a");
  require_positive(b, "ellipse semi-axis b");
  BoundaryCurve c;
  c.kind_ = CurveKind::ellipse;
  c.a_ = a;
  c.b_ = b;
  return c;
}

BoundaryCurve BoundaryCurve::fourier(double r0, std::vector<Harmonic> harmonics) {
  require_positive(r0, "fourier base radius r0");
  double amplitude = 0.0;
  for (const auto& h : harmonics) {
    if (h.n < 1 || h.n > 64)
      throw Error(Errc::invalid_curve, "fourier harmonic index must lie in [1, 64]");
    if (!std::isfinite(h.a) || !std::isfinite(h.b))
      throw Error(Errc::invalid_curve, "fourier harmonic coefficients must be finite");
    amplitude += std::hypot(h.a, h.b);
  }
  BoundaryCurve c;
  c.kind_ = CurveKind::fourier;
  c.r0_ = r0;
  c.harmonics_ = std::move(harmonics);
  if (amplitude >= r0) {
    // Not certified by the triangle inequality; sample densely.
    double min_r = r0;
    for (int i = 0; i < kRadiusSamples; ++i) {
      double r, dr, ddr;
      c.polar(kTwoPi * i / kRadiusSamples, r, dr, ddr);
      min_r = std::min(min_r, r);
    }
    if (!(min_r > 1e-9 * r0))
      throw Error(Errc::invalid_curve, "fourier-star radius r(θ) must stay positive");
  }
  return c;
}

void BoundaryCurve::polar(double theta, double& r, double& dr, double& ddr) const {
  r = r0_;
  dr = 0.0;
  ddr = 0.0;
  if (kind_ != CurveKind::fourier) return;
  for (const auto& h : harmonics_) {
    const double c = std::cos(h.n * theta);
    const double s = std::sin(h.n * theta);
    const double n = static_cast<double>(h.n);
    r += h.a * c + h.b * s;
    dr += n * (-h.a * s + h.b * c);
    ddr += -n * n * (h.a * c + h.b * s);
  }
}

Eigen::Vector2d BoundaryCurve::position(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  if (kind_ == CurveKind::ellipse) return {a_ * c, b_ * s};
  double r, dr, ddr;
  polar(theta, r, dr, ddr);
  return {r * c, r * s};
}

Eigen::Vector2d BoundaryCurve::first_derivative(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  if (kind_ == CurveKind::ellipse) return {-a_ * s, b_ * c};
  double r, dr, ddr;
  polar(theta, r, dr, ddr);
  return {dr * c - r * s, dr * s + r * c};
}

Eigen::Vector2d BoundaryCurve::second_derivative(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  if (kind_ == CurveKind::ellipse) return {-a_ * c, -b_ * s};
  double r, dr, ddr;
  polar(theta, r, dr, ddr);
  return {ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s};
}

CurvePoint BoundaryCurve::evaluate(double theta) const {
  const Eigen::Vector2d d1 = first_derivative(theta);
  const Eigen::Vector2d d2 = second_derivative(theta);
  const double speed = d1.norm();
  CurvePoint out;
  out.point = position(theta);
  out.speed = speed;
  out.tangent = Complex(d1.x() / speed, d1.y() / speed);
  out.normal = Eigen::Vector2d(out.tangent.imag(), -out.tangent.real());
  out.curvature = (d1.x() * d2.y() - d1.y() * d2.x()) / (speed * speed * speed);
  return out;
}

double BoundaryCurve::max_radius() const {
  switch (kind_) {
    case CurveKind::disc: return r0_;
    case CurveKind::ellipse: return std::max(a_, b_);
    case CurveKind::fourier: break;
  }
  double max_r = 0.0;
  for (int i = 0; i < kRadiusSamples; ++i) {
    double r, dr, ddr;
    polar(kTwoPi * i / kRadiusSamples, r, dr, ddr);
    max_r = std::max(max_r, r);
  }
  return max_r;
}

BoundaryCurve BoundaryCurve::scaled(double factor) const {
  require_positive(factor, "scale factor");
  BoundaryCurve c = *this;
  c.r0_ *= factor;
  c.a_ *= factor;
  c.b_ *= factor;
  for (auto& h : c.harmonics_) {
    h.a *= factor;
    h.b *= factor;
  }
  return c;
}

std::string BoundaryCurve::id() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind_) {
    case CurveKind::disc: os << "disc(R=" << r0_ << ")"; break;
    case CurveKind::ellipse: os << "ellipse(a=" << a_ << ",b=" << b_ << ")"; break;
    case CurveKind::fourier:
      os << "fourier(r0=" << r0_;
      for (const auto& h : harmonics_) os << ";n=" << h.n << ",a=" << h.a << ",b=" << h.b;
      os << ")";
      break;
  }
  return os.str();
}

double area(const BoundaryCurve& curve, int nodes) {
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = kTwoPi * i / nodes;
    const Eigen::Vector2d p = curve.position(theta);
    const Eigen::Vector2d d = curve.first_derivative(theta);
    sum += p.x() * d.y() - p.y() * d.x();
  }
  return 0.5 * sum * kTwoPi / nodes;
}

double total_curvature(const BoundaryCurve& curve, int nodes) {
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const CurvePoint cp = curve.evaluate(kTwoPi * i / nodes);
    sum += cp.curvature * cp.speed;
  }
  return sum * kTwoPi / nodes;
}

double perimeter(const BoundaryCurve& curve, int nodes) {
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) sum += curve.first_derivative(kTwoPi * i / nodes).norm();
  return sum * kTwoPi / nodes;
}

double arclength(const BoundaryCurve& curve, double theta0, double theta1) {
  constexpr int kPieces = 4;
  const double piece = (theta1 - theta0) / kPieces;
  double sum = 0.0;
  for (int p = 0; p < kPieces; ++p) {
    const double mid = theta0 + (p + 0.5) * piece;
    for (std::size_t q = 0; q < kGlNodes.size(); ++q)
      sum += kGlWeights[q] * curve.first_derivative(mid + 0.5 * piece * kGlNodes[q]).norm();
  }
  return 0.5 * piece * sum;
}

double diameter(const BoundaryCurve& curve, int samples) {
  std::vector<Eigen::Vector2d> pts(samples);
  for (int i = 0; i < samples; ++i) pts[i] = curve.position(kTwoPi * i / samples);
  double d = 0.0;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

}  // namespace diracgap
