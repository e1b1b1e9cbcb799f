#include "diracgap/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SparseLU>

#include "diracgap/error.hpp"
#include "diracgap/quadrature.hpp"

namespace diracgap {

namespace {

constexpr double kPi = std::numbers::pi;

Complex gradient_apply(const Eigen::Matrix<double, 2, 3>& g, const Eigen::Vector3cd& values, int axis) {
  return values(0) * g(axis, 0) + values(1) * g(axis, 1) + values(2) * g(axis, 2);
}

// (T x) on one triangle for a P1 spinor x given by its three nodal spinors.
Eigen::Vector2cd dirac_on_triangle(const Eigen::Matrix<double, 2, 3>& g, const Eigen::Vector3cd& x1,
                                   const Eigen::Vector3cd& x2) {
  const Complex d1x1 = gradient_apply(g, x1, 0), d2x1 = gradient_apply(g, x1, 1);
  const Complex d1x2 = gradient_apply(g, x2, 0), d2x2 = gradient_apply(g, x2, 1);
  return {-kI * d1x2 - d2x2, -kI * d1x1 + d2x1};
}

Eigen::Vector3cd component(const Mesh& mesh, const Vector& u, int t, int c) {
  const auto& tri = mesh.triangles.col(t);
  return {u(2 * tri(0) + c), u(2 * tri(1) + c), u(2 * tri(2) + c)};
}

}  // namespace

double gap_lower_bound(double area, double eta) {
  if (!(area > 0.0)) throw Error(Errc::invalid_argument, "area must be positive");
  return std::sqrt(2.0 * kPi / area) * b_factor(eta);
}

double physical_gap(double area_nm2) {
  if (!(area_nm2 > 0.0)) throw Error(Errc::invalid_argument, "area must be positive");
  return 2.0 * std::sqrt(2.0 * kPi) * kHbarFermiVelocity / std::sqrt(area_nm2);
}

GapReport check_gap(const EigenResult& result, double area, double eta, double budget) {
  if (result.eigenvalues.empty()) throw Error(Errc::invalid_argument, "eigen result is empty");
  GapReport r;
  r.area = area;
  r.eta = eta;
  r.b = b_factor(eta);
  r.bound = gap_lower_bound(area, eta);
  r.gap = std::sqrt(std::max(result.eigenvalues.front(), 0.0));
  r.margin = r.gap - r.bound;
  r.budget = budget;
  r.pass = r.gap >= r.bound - budget;
  return r;
}

LemmaReport lemma_decompose(const Mesh& mesh, const Vector& u, const BoundaryFamily& family_in) {
  const BoundaryFamily family = BoundaryFamily::from_eta(family_in.eta);
  const int nv = mesh.vertex_count();
  if (u.size() != 2 * nv) throw Error(Errc::invalid_argument, "spinor field must have 2 entries per vertex");

  LemmaReport rep;
  const double scale = std::max(u.cwiseAbs().maxCoeff(), 1e-300);
  for (const auto& node : mesh.boundary) {
    const Complex defect = u(2 * node.vertex + 1) - family.beta * node.tangent * u(2 * node.vertex);
    rep.bc_residual = std::max(rep.bc_residual, std::abs(defect) / scale);
  }
  if (rep.bc_residual > 1e-10) {
    std::ostringstream os;
    os << "nodal boundary condition residual " << rep.bc_residual << " exceeds 1e-10";
    throw Error(Errc::bc_violation, os.str());
  }

  const double beta = family.beta;
  rep.first_component_branch = std::abs(beta) <= 1.0;
  rep.v = u;
  rep.w = Vector::Zero(2 * nv);
  for (int i = 0; i < nv; ++i) {
    if (rep.first_component_branch) {
      rep.v(2 * i) = beta * u(2 * i);
      rep.w(2 * i) = (1.0 - beta) * u(2 * i);
    } else {
      rep.v(2 * i + 1) = u(2 * i + 1) / beta;
      rep.w(2 * i + 1) = (1.0 - 1.0 / beta) * u(2 * i + 1);
    }
  }

  const int c = rep.first_component_branch ? 0 : 1;
  const double sign = rep.first_component_branch ? 1.0 : -1.0;  // G = -i∂₁ ± ∂₂
  double tv2 = 0.0, gc2 = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = triangle_area(mesh, t);
    const Eigen::Matrix<double, 2, 3> g = barycentric_gradients(mesh, t);
    const Eigen::Vector2cd tv = dirac_on_triangle(g, component(mesh, rep.v, t, 0), component(mesh, rep.v, t, 1));
    const Eigen::Vector2cd tw = dirac_on_triangle(g, component(mesh, rep.w, t, 0), component(mesh, rep.w, t, 1));
    const Eigen::Vector3cd uc = component(mesh, u, t, c);
    const Complex gu = -kI * gradient_apply(g, uc, 0) + sign * gradient_apply(g, uc, 1);
    rep.tw_norm2 += area * tw.squaredNorm();
    rep.cross += area * tv.dot(tw);
    tv2 += area * tv.squaredNorm();
    gc2 += area * std::norm(gu);
  }
  rep.lhs = rep.tw_norm2 + 2.0 * rep.cross.real();
  rep.rhs = (1.0 - family.b * family.b) * gc2;
  const double denom = std::sqrt(tv2 * rep.tw_norm2);
  rep.cross_imag_relative = denom > 0.0 ? std::abs(rep.cross.imag()) / denom : 0.0;
  const double diff = std::abs(rep.lhs - rep.rhs);
  rep.relative_error = std::abs(rep.rhs) > 0.0 ? diff / std::abs(rep.rhs) : diff;
  return rep;
}

double lemma_reference_rhs(const Mesh& mesh, const BoundaryFamily& family_in,
                           const std::function<Eigen::Vector2cd(const Eigen::Vector2d&)>& gradient) {
  const BoundaryFamily family = BoundaryFamily::from_eta(family_in.eta);
  const double sign = std::abs(family.beta) <= 1.0 ? 1.0 : -1.0;
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles.col(t);
    const double area = triangle_area(mesh, t);
    for (const auto& qp : quadrature::kTriangle7) {
      const Eigen::Vector2d x = qp.bary[0] * mesh.vertices.col(tri(0)) + qp.bary[1] * mesh.vertices.col(tri(1)) +
                                qp.bary[2] * mesh.vertices.col(tri(2));
      const Eigen::Vector2cd d = gradient(x);
      sum += area * qp.weight * std::norm(-kI * d(0) + sign * d(1));
    }
  }
  return (1.0 - family.b * family.b) * sum;
}

NeumannSolution solve_neumann(const Mesh& mesh, const BoundaryCurve& curve) {
  NeumannSolution ns;
  ns.area = area(curve);
  ns.c = -kPi / ns.area;
  ns.solvability_residual = -0.5 * total_curvature(curve) - ns.c * ns.area;
  if (std::abs(ns.solvability_residual) > 1e-8) {
    std::ostringstream os;
    os << "Neumann compatibility residual " << ns.solvability_residual << " exceeds 1e-8";
    throw Error(Errc::singular_system, os.str());
  }

  const int nv = mesh.vertex_count();
  const RealSparseMatrix k = scalar_stiffness(mesh);
  const RealSparseMatrix m = scalar_mass(mesh);
  const RealVector lumped = m * RealVector::Ones(nv);

  // Weak form: (∇f, ∇φ) = -C ∫φ + ∮(-κ/2) φ ds.
  RealVector rhs = -ns.c * lumped;
  for (const auto& e : mesh.boundary_edges)
    for (const auto& q : e.quad) {
      const double g = -0.5 * q.curvature * q.ds_weight;
      rhs(e.v0) += g * (1.0 - q.xi);
      rhs(e.v1) += g * q.xi;
    }

  // Bordered system [K m; mᵀ 0] enforcing ∫f = 0.
  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < k.outerSize(); ++col)
    for (RealSparseMatrix::InnerIterator it(k, col); it; ++it) triplets.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < nv; ++i) {
    triplets.emplace_back(i, nv, lumped(i));
    triplets.emplace_back(nv, i, lumped(i));
  }
  RealSparseMatrix bordered(nv + 1, nv + 1);
  bordered.setFromTriplets(triplets.begin(), triplets.end());
  bordered.makeCompressed();
  RealVector b(nv + 1);
  b.head(nv) = rhs;
  b(nv) = 0.0;
  Eigen::SparseLU<RealSparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(bordered);
  if (lu.info() != Eigen::Success) throw Error(Errc::singular_system, "Neumann system factorization failed");
  const RealVector sol = lu.solve(b);
  ns.f = sol.head(nv);
  ns.discrete_compatibility = sol(nv);
  ns.linear_residual = (bordered * sol - b).cwiseAbs().maxCoeff();
  ns.mean = lumped.dot(ns.f);

  const RealVector kf = k * ns.f;
  double scale = 0.0;
  for (int i = 0; i < nv; ++i) {
    scale = std::max(scale, std::abs(ns.c * lumped(i)));
    if (!mesh.on_boundary(i)) ns.interior_residual = std::max(ns.interior_residual, std::abs(kf(i) + ns.c * lumped(i)));
  }
  if (scale > 0.0) ns.interior_residual /= scale;

  double num = 0.0, den = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    const Eigen::Matrix<double, 2, 3> g = barycentric_gradients(mesh, e.triangle);
    const auto& tri = mesh.triangles.col(e.triangle);
    const Eigen::Vector2d grad = g * Eigen::Vector3d(ns.f(tri(0)), ns.f(tri(1)), ns.f(tri(2)));
    for (const auto& q : e.quad) {
      const double flux = grad.dot(q.normal);
      num += q.ds_weight * std::pow(flux + 0.5 * q.curvature, 2);
      den += q.ds_weight * std::pow(0.5 * q.curvature, 2);
    }
  }
  ns.boundary_flux_residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return ns;
}

ProofCheckReport proof_inequality_check(const EigenResult& result, const NeumannSolution& neumann,
                                        const AssembledProblem& problem, double budget_mu, int pair,
                                        double residual_gate) {
  if (!problem.family.infinite_mass()) {
    std::ostringstream os;
    os << "proof inequality check needs eta in {0, pi}; got eta=" << problem.family.eta;
    throw Error(Errc::wrong_eta, os.str());
  }
  if (problem.first_order) throw Error(Errc::invalid_argument, "proof check needs the squared-form problem");
  if (pair < 0 || pair >= result.size()) throw Error(Errc::invalid_argument, "eigenpair index out of range");
  const Mesh& mesh = *problem.mesh;
  if (neumann.f.size() != mesh.vertex_count())
    throw Error(Errc::invalid_argument, "Neumann solution lives on a different mesh");

  ProofCheckReport rep;
  rep.pair = pair;
  rep.mu = result.eigenvalues[pair];
  rep.c = neumann.c;
  rep.budget = budget_mu;
  rep.residual_gate = residual_gate > 0.0 ? residual_gate : std::max(10.0 * result.tol, 1e-6);
  const Vector x = result.vectors.col(pair);
  const Vector mx = problem.mass * x;
  rep.residual = (problem.form * x - rep.mu * mx).norm() / mx.norm();
  rep.eigenpair_ok = rep.residual <= rep.residual_gate;

  const Vector u = problem.space.expand(x);
  double weighted = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles.col(t);
    const double area = triangle_area(mesh, t);
    for (const auto& qp : quadrature::kTriangle7) {
      double f = 0.0;
      Eigen::Vector2cd val = Eigen::Vector2cd::Zero();
      for (int a = 0; a < 3; ++a) {
        f += qp.bary[a] * neumann.f(tri(a));
        val += qp.bary[a] * u.segment<2>(2 * tri(a));
      }
      weighted += area * qp.weight * std::exp(-2.0 * f) * val.squaredNorm();
    }
  }
  rep.weighted_norm = weighted;
  rep.lhs = 0.5 * rep.mu * weighted;
  // Δf = C inside and κ/2 + ∂_n f = 0 on the boundary, so only the volume term survives.
  rep.rhs = -neumann.c * weighted;
  rep.margin = (rep.lhs - rep.rhs) / weighted;
  rep.pass = rep.eigenpair_ok && rep.margin >= -budget_mu;
  return rep;
}

}  // namespace diracgap
