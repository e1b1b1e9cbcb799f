#include "diracgap/boundary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

void require_not_zigzag(double eta) {
  if (std::abs(std::cos(eta)) <= kZigzagTolerance) {
    std::ostringstream os;
    os.precision(10);
    os << "eta=" << eta << " has |cos eta| <= " << kZigzagTolerance
       << "; the gap bound and the eigenvalue pipelines require cos eta != 0 (zigzag case)";
    throw Error(Errc::near_zigzag, os.str());
  }
}

void require_unit(Complex z, const char* what) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw Error(Errc::invalid_argument, std::string(what) + " must have modulus 1");
}

}  // namespace

double beta(double eta) {
  require_not_zigzag(eta);
  const double s = std::sin(eta), c = std::cos(eta);
  // (1 - sin η)/cos η = cos η/(1 + sin η); pick the form without cancellation.
  return s >= 0.0 ? c / (1.0 + s) : (1.0 - s) / c;
}

double b_factor(double eta) {
  const double ab = std::abs(beta(eta));
  return std::min(ab, 1.0 / ab);
}

BoundaryFamily BoundaryFamily::from_eta(double eta) {
  BoundaryFamily f;
  f.eta = eta;
  f.beta = diracgap::beta(eta);
  const double ab = std::abs(f.beta);
  f.b = std::min(ab, 1.0 / ab);
  return f;
}

bool BoundaryFamily::infinite_mass() const {
  return std::abs(std::sin(eta)) <= 1e-12;
}

ProjectorPair projector(double eta, Complex t) {
  require_unit(t, "tangent t");
  const Eigen::Matrix2cd a = a_matrix(eta, t);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return {0.5 * (id + a), 0.5 * (id - a)};
}

const char* to_string(ValleyKind kind) {
  switch (kind) {
    case ValleyKind::zigzag: return "zigzag";
    case ValleyKind::infinite_mass: return "infinite-mass";
    case ValleyKind::armchair: return "armchair";
  }
  return "unknown";
}

ValleyKind valley_kind_from_string(const std::string& name) {
  if (name == "zigzag") return ValleyKind::zigzag;
  if (name == "infinite-mass") return ValleyKind::infinite_mass;
  if (name == "armchair") return ValleyKind::armchair;
  throw Error(Errc::invalid_argument, "unknown boundary kind '" + name +
                                          "' (expected infinite-mass, armchair or zigzag)");
}

Eigen::Matrix4cd valley_matrix(const ValleyBoundary& vb, Complex t) {
  require_unit(t, "tangent t");
  require_unit(vb.nu, "armchair phase nu");
  Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
  switch (vb.kind) {
    case ValleyKind::zigzag:
      a.topLeftCorner<2, 2>() = sigma3();
      a.bottomRightCorner<2, 2>() = -sigma3();
      break;
    case ValleyKind::infinite_mass:
      a.topLeftCorner<2, 2>() = sigma_dot(t);
      a.bottomRightCorner<2, 2>() = -sigma_dot(t);
      break;
    case ValleyKind::armchair:
      a.topRightCorner<2, 2>() = std::conj(vb.nu) * sigma_dot(t);
      a.bottomLeftCorner<2, 2>() = vb.nu * sigma_dot(t);
      break;
  }
  return a;
}

Eigen::Matrix4cd valley_projector(const ValleyBoundary& vb, Complex t) {
  return 0.5 * (Eigen::Matrix4cd::Identity() + valley_matrix(vb, t));
}

}  // namespace diracgap
