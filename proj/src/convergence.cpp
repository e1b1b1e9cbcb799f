#include "diracgap/convergence.hpp"

#include <cmath>
#include <memory>

#include "diracgap/eigensolver.hpp"
#include "diracgap/error.hpp"
#include "diracgap/fem.hpp"
#include "diracgap/mesh.hpp"

namespace diracgap {

RichardsonEstimate richardson(const std::vector<double>& h, const std::vector<double>& values) {
  if (h.size() != values.size() || h.size() < 3)
    throw Error(Errc::invalid_argument, "Richardson extrapolation needs at least 3 (h, value) pairs");
  const std::size_t n = h.size();
  const double h1 = h[n - 3], h2 = h[n - 2], h3 = h[n - 1];
  const double v1 = values[n - 3], v2 = values[n - 2], v3 = values[n - 1];
  if (!(h1 > h2 && h2 > h3 && h3 > 0.0))
    throw Error(Errc::invalid_argument, "mesh sizes must be positive and strictly decreasing");

  RichardsonEstimate est;
  const double d12 = v1 - v2, d23 = v2 - v3;
  est.monotone = d12 * d23 > 0.0 && std::abs(d23) < std::abs(d12);
  if (!est.monotone) {
    est.extrapolated = v3;
    est.error_estimate = std::abs(d23);
    return est;
  }

  const double target = d12 / d23;
  auto ratio = [&](double p) {
    return (std::pow(h1, p) - std::pow(h2, p)) / (std::pow(h2, p) - std::pow(h3, p));
  };
  double lo = 0.25, hi = 8.0;
  const double rlo = ratio(lo) - target, rhi = ratio(hi) - target;
  if (rlo * rhi > 0.0) {
    est.extrapolated = v3;
    est.error_estimate = std::abs(d23);
    return est;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((ratio(mid) - target) * rlo > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double p = 0.5 * (lo + hi);
  est.order_found = true;
  est.observed_order = p;
  const double h2p = std::pow(h2, p), h3p = std::pow(h3, p);
  est.extrapolated = v3 - d23 * h3p / (h2p - h3p);
  est.error_estimate = std::abs(est.extrapolated - v3);
  return est;
}

ConvergenceStudy convergence_study(const BoundaryCurve& curve, double eta, const std::vector<double>& hs, int k,
                                   double tol, std::uint64_t seed) {
  if (hs.size() < 3) throw Error(Errc::invalid_argument, "convergence study needs at least 3 mesh sizes");
  for (std::size_t i = 1; i < hs.size(); ++i)
    if (!(hs[i] < hs[i - 1])) throw Error(Errc::invalid_argument, "mesh sizes must be strictly decreasing");
  const BoundaryFamily family = BoundaryFamily::from_eta(eta);

  ConvergenceStudy study;
  std::vector<double> heff, gaps;
  for (double h : hs) {
    auto mesh = std::make_shared<const Mesh>(triangulate(curve, h));
    const AssembledProblem problem = assemble(mesh, family);
    const EigenResult res = smallest_eigenpairs(problem, k, tol, seed);
    ConvergenceLevel level;
    level.h = h;
    level.h_eff = mesh->h_eff;
    level.rings = mesh->rings;
    level.dimension = problem.dimension();
    level.mu1 = res.eigenvalues.front();
    level.gap = res.gaps.front();
    level.residual = res.residuals.front();
    study.levels.push_back(level);
    heff.push_back(level.h_eff);
    gaps.push_back(level.gap);
  }
  study.estimate = richardson(heff, gaps);
  return study;
}

}  // namespace diracgap
