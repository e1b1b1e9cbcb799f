#pragma once

#include <string>

#include <Eigen/Core>

#include "diracgap/linalg.hpp"

namespace diracgap {

/// |cos η| at or below this is treated as the zigzag case and rejected.
inline constexpr double kZigzagTolerance = 1e-9;

/// Constant-η local boundary condition P₋,η u = 0 on ∂Ω.
///
/// On the boundary it reads u₂ = β t u₁ with signed β = (1 - sin η)/cos η;
/// the gap factor is B = min(|β|, 1/|β|).
struct BoundaryFamily {
  double eta = 0.0;
  double beta = 1.0;
  double b = 1.0;

  static BoundaryFamily from_eta(double eta);

  /// η ∈ {0, π} up to 1e-12.
  bool infinite_mass() const;
};

/// Throws near_zigzag when |cos η| ≤ 1e-9.
double b_factor(double eta);
double beta(double eta);

template <typename Real>
using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real>
using Matrix4c = Eigen::Matrix<std::complex<Real>, 4, 4>;

template <typename Real = double>
Matrix2c<Real> sigma1() {
  Matrix2c<Real> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
Matrix2c<Real> sigma2() {
  using C = std::complex<Real>;
  Matrix2c<Real> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Real = double>
Matrix2c<Real> sigma3() {
  Matrix2c<Real> m;
  m << 1, 0, 0, -1;
  return m;
}

/// σ·t = t₁σ₁ + t₂σ₂ = [[0, t*], [t, 0]] for the tangent as a complex number.
template <typename Real = double>
Matrix2c<Real> sigma_dot(std::complex<Real> t) {
  Matrix2c<Real> m;
  m << std::complex<Real>(0), std::conj(t), t, std::complex<Real>(0);
  return m;
}

/// A_η = cos η σ·t + sin η σ₃.
template <typename Real = double>
Matrix2c<Real> a_matrix(Real eta, std::complex<Real> t) {
  return std::cos(eta) * sigma_dot(t) + std::sin(eta) * sigma3<Real>();
}

struct ProjectorPair {
  Eigen::Matrix2cd plus;
  Eigen::Matrix2cd minus;
};

/// P± = (1 ± A_η)/2; |t| must be 1 within 1e-12.
ProjectorPair projector(double eta, Complex t);

enum class ValleyKind { zigzag, infinite_mass, armchair };

const char* to_string(ValleyKind kind);
ValleyKind valley_kind_from_string(const std::string& name);

/// Four-spinor boundary condition P₋(A)ψ = 0 for H = diag(T, T).
struct ValleyBoundary {
  ValleyKind kind = ValleyKind::infinite_mass;
  Complex nu{1.0, 0.0};  ///< armchair phase, |ν| = 1
};

/// zigzag: diag(σ₃, -σ₃); infinite mass: diag(σ·t, -σ·t);
/// armchair: [[0, ν* σ·t], [ν σ·t, 0]].
Eigen::Matrix4cd valley_matrix(const ValleyBoundary& vb, Complex t);

/// (1 + A)/2 for the valley matrix.
Eigen::Matrix4cd valley_projector(const ValleyBoundary& vb, Complex t);

}  // namespace diracgap
