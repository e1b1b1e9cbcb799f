#pragma once

#include <array>

namespace diracgap::quadrature {

/// Barycentric point and weight (weights sum to 1; multiply by the area).
struct TrianglePoint {
  std::array<double, 3> bary;
  double weight;
};

/// Degree-5, 7-point rule.
inline constexpr std::array<TrianglePoint, 7> kTriangle7 = {{
    {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225},
    {{0.059715871789770, 0.470142064105115, 0.470142064105115}, 0.132394152788506},
    {{0.470142064105115, 0.059715871789770, 0.470142064105115}, 0.132394152788506},
    {{0.470142064105115, 0.470142064105115, 0.059715871789770}, 0.132394152788506},
    {{0.797426985353087, 0.101286507323456, 0.101286507323456}, 0.125939180544827},
    {{0.101286507323456, 0.797426985353087, 0.101286507323456}, 0.125939180544827},
    {{0.101286507323456, 0.101286507323456, 0.797426985353087}, 0.125939180544827},
}};

}  // namespace diracgap::quadrature
