#pragma once

#include <cstdint>
#include <vector>

#include "diracgap/geometry.hpp"

namespace diracgap {

struct RichardsonEstimate {
  double extrapolated = 0.0;
  double error_estimate = 0.0;  ///< |extrapolated - finest value|
  double observed_order = 0.0;
  bool monotone = true;
  bool order_found = false;
};

/// Extrapolation over the last three (h, value) pairs with the order solved
/// from the data. Non-monotone sequences fall back to |v₃ - v₂|.
RichardsonEstimate richardson(const std::vector<double>& h, const std::vector<double>& values);

struct ConvergenceLevel {
  double h = 0.0;
  double h_eff = 0.0;
  int rings = 0;
  int dimension = 0;
  double mu1 = 0.0;
  double gap = 0.0;
  double residual = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  RichardsonEstimate estimate;  ///< on the gap √μ₁ against h_eff

  double budget() const { return 3.0 * estimate.error_estimate; }
};

/// Solves the squared-form problem on each mesh size (at least 3, decreasing).
ConvergenceStudy convergence_study(const BoundaryCurve& curve, double eta, const std::vector<double>& hs,
                                   int k = 4, double tol = 1e-8, std::uint64_t seed = 42);

}  // namespace diracgap
