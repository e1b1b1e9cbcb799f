#pragma once

#include <vector>

namespace diracgap {

/// Bessel function of the first kind J_n(x) for 0 ≤ n ≤ 50, |x| ≤ 100.
///
/// Ascending series for |x| < 5, Miller backward recurrence normalized by
/// J₀ + 2ΣJ_{2k} = 1 otherwise. Absolute error below 1e-12 on the range.
double bessel_j(int n, double x);

/// One root of the disc radial condition J_m(kR) = s J_{m+1}(kR).
struct DiscRoot {
  int m = 0;       ///< angular index; negative m = -(n+1) encodes J_n = -J_{n+1}
  int index = 0;   ///< 1-based order within this m
  double k = 0.0;
  double residual = 0.0;  ///< |J_m(kR) - s J_{m+1}(kR)| at the stored k
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

struct DiscSpectrum {
  double radius = 1.0;
  std::vector<DiscRoot> roots;

  /// All stored k values, ascending.
  std::vector<double> sorted_k() const;
};

/// Smallest positive k with J₀(kR) = J₁(kR): the lowest infinite-mass
/// eigenvalue of the disc of radius R.
double k0(double radius);

/// Roots of J_m(kR) = J_{m+1}(kR) for 0 ≤ m ≤ m_max, first per_m each, in
/// the window kR ∈ [1e-3, 20]. With include_mirror the roots of
/// J_m = -J_{m+1} (positive eigenvalues of angular index -(m+1)) are added.
DiscSpectrum disc_eigenvalues(double radius, int m_max, int per_m, bool include_mirror = false);

}  // namespace diracgap
