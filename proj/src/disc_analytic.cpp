#include "diracgap/disc_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

constexpr double kScanLo = 1e-3;
constexpr double kScanHi = 20.0;
constexpr double kScanStep = 1e-3;
constexpr double kSeriesLimit = 5.0;

double series(int n, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double miller(int n, double x) {
  const double top = std::max<double>(n, x);
  int start = static_cast<int>(top) + 20 + static_cast<int>(std::sqrt(40.0 * top));
  start += start % 2;
  double j_next = 0.0;  // J_{k+1}
  double j = 1.0;       // J_k, k = start
  double sum = 2.0 * j; // start is even
  double result = 0.0;
  for (int k = start; k > 0; --k) {
    const double j_prev = (2.0 * k / x) * j - j_next;
    j_next = j;
    j = j_prev;  // now J_{k-1}
    if (k - 1 == n) result = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) sum += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      j_next *= 1e-250;
      result *= 1e-250;
      sum *= 1e-250;
    }
  }
  sum += j;
  return result / sum;
}

// F(x) = J_m(x) - sign J_{m+1}(x)
double radial(int m, int sign, double x) { return bessel_j(m, x) - sign * bessel_j(m + 1, x); }

DiscRoot polish(int m, int sign, double lo, double hi) {
  DiscRoot root;
  root.bracket_lo = lo;
  root.bracket_hi = hi;
  double flo = radial(m, sign, lo), fhi = radial(m, sign, hi);
  if (flo * fhi > 0.0) throw Error(Errc::bracketing_failure, "root bracket lost its sign change");
  // Illinois regula falsi, bisecting every third step.
  double wlo = flo, whi = fhi;  // weighted copies used for the secant
  int last = 0;
  double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double best_f = std::min(std::abs(flo), std::abs(fhi));
  for (int it = 1; it <= 200; ++it) {
    root.iterations = it;
    double x = (lo * whi - hi * wlo) / (whi - wlo);
    if (!(x > lo && x < hi) || it % 3 == 0) x = 0.5 * (lo + hi);
    const double fx = radial(m, sign, x);
    if (std::abs(fx) < best_f) {
      best = x;
      best_f = std::abs(fx);
    }
    if (fx == 0.0) break;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = wlo = fx;
      if (last == -1) whi *= 0.5;
      last = -1;
    } else {
      hi = x;
      fhi = whi = fx;
      if (last == 1) wlo *= 0.5;
      last = 1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  root.k = best;
  return root;
}

std::vector<DiscRoot> scan(int m, int sign, int count) {
  std::vector<DiscRoot> roots;
  double x0 = kScanLo;
  double f0 = radial(m, sign, x0);
  const int steps = static_cast<int>(std::round((kScanHi - kScanLo) / kScanStep));
  for (int i = 1; i <= steps && static_cast<int>(roots.size()) < count; ++i) {
    const double x1 = kScanLo + i * kScanStep;
    const double f1 = radial(m, sign, x1);
    if (f0 == 0.0) {
      DiscRoot r;
      r.k = x0;
      r.bracket_lo = r.bracket_hi = x0;
      roots.push_back(r);
    } else if (f0 * f1 < 0.0) {
      roots.push_back(polish(m, sign, x0, x1));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

void require_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(Errc::invalid_argument, "disc radius must be positive and finite");
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0 || n > 50 || !(std::abs(x) <= 100.0)) {
    std::ostringstream os;
    os << "bessel_j(" << n << ", " << x << ") outside 0 <= n <= 50, |x| <= 100";
    throw Error(Errc::domain_error, os.str());
  }
  if (x < 0.0) return (n % 2 ? -1.0 : 1.0) * bessel_j(n, -x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return x < kSeriesLimit ? series(n, x) : miller(n, x);
}

std::vector<double> DiscSpectrum::sorted_k() const {
  std::vector<double> ks;
  for (const auto& r : roots) ks.push_back(r.k);
  std::sort(ks.begin(), ks.end());
  return ks;
}

double k0(double radius) {
  require_radius(radius);
  const auto roots = scan(0, 1, 1);
  if (roots.empty()) throw Error(Errc::bracketing_failure, "no root of J0 = J1 in the scan window");
  return roots.front().k / radius;
}

DiscSpectrum disc_eigenvalues(double radius, int m_max, int per_m, bool include_mirror) {
  require_radius(radius);
  if (m_max < 0 || m_max > 20) throw Error(Errc::invalid_argument, "m_max must lie in [0, 20]");
  if (per_m < 1 || per_m > 10) throw Error(Errc::invalid_argument, "per_m must lie in [1, 10]");
  DiscSpectrum spectrum;
  spectrum.radius = radius;
  for (int sign : {1, -1}) {
    if (sign < 0 && !include_mirror) break;
    for (int m = 0; m <= m_max; ++m) {
      auto roots = scan(m, sign, per_m);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        DiscRoot r = roots[i];
        r.m = sign > 0 ? m : -(m + 1);
        r.index = static_cast<int>(i) + 1;
        r.k = roots[i].k / radius;
        r.residual = std::abs(radial(m, sign, r.k * radius));
        r.bracket_lo /= radius;
        r.bracket_hi /= radius;
        spectrum.roots.push_back(r);
      }
    }
  }
  return spectrum;
}

}  // namespace diracgap
