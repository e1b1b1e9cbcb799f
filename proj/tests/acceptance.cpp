#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "diracgap/convergence.hpp"
#include "diracgap/disc_analytic.hpp"
#include "diracgap/eigensolver.hpp"
#include "diracgap/error.hpp"
#include "diracgap/fem.hpp"
#include "diracgap/theorem.hpp"
#include "diracgap/valley.hpp"

using namespace diracgap;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Domain {
  std::string name;
  BoundaryCurve curve;
};

std::vector<Domain> domains() {
  return {{"disc", BoundaryCurve::disc(1.0)},
          {"ellipse", BoundaryCurve::ellipse(1.5, 0.75)},
          {"star", BoundaryCurve::fourier(1.0, {{3, 0.2, 0.0}})}};
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

Outcome disc_value() {
  const auto t0 = std::chrono::steady_clock::now();
  const double k = k0(1.0);
  const DiscSpectrum s = disc_eigenvalues(1.0, 0, 1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double residual = s.roots.front().residual;
  const bool pass = std::abs(k - 1.435) <= 5e-4 && residual <= 1e-12 && seconds < 1.0;
  return {pass, "k0=" + fmt("%.10f", k) + " residual=" + fmt("%.1e", residual) + " time=" + fmt("%.3fs", seconds)};
}

Outcome disc_comparison() {
  const auto t0 = std::chrono::steady_clock::now();
  const double k = k0(1.0);
  const double bound = gap_lower_bound(kPi, 0.0);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double margin = k - bound;
  const bool pass = k > std::sqrt(2.0) && k > bound && std::abs(margin - 0.0207) <= 5e-4 && seconds < 1.0;
  return {pass, "k0-sqrt2=" + fmt("%.6f", margin) + " time=" + fmt("%.3fs", seconds)};
}

Outcome fem_oracle() {
  const ConvergenceStudy s = convergence_study(BoundaryCurve::disc(1.0), 0.0, {0.2, 0.1, 0.05});
  const double k = k0(1.0);
  const double rel = std::abs(s.levels.back().gap / k - 1.0);
  const double extrap = std::abs(s.estimate.extrapolated - k);
  const bool pass = rel <= 0.01 && extrap <= 2e-3;
  return {pass, "h=0.05 rel.err=" + fmt("%.2e", rel) + " richardson err=" + fmt("%.2e", extrap) +
                    " order=" + fmt("%.2f", s.estimate.observed_order)};
}

Outcome theorem_matrix() {
  int passed = 0, cells = 0;
  double worst = 1e300;
  std::string failures;
  for (const auto& d : domains())
    for (double eta : {0.0, kPi / 6, kPi / 4, kPi / 3, kPi}) {
      ++cells;
      const ConvergenceStudy s = convergence_study(d.curve, eta, {0.2, 0.1, 0.05});
      EigenResult r;
      r.eigenvalues = {s.levels.back().mu1};
      const GapReport g = check_gap(r, area(d.curve), eta, s.budget());
      worst = std::min(worst, g.margin + g.budget);
      if (g.pass) {
        ++passed;
      } else {
        failures += " " + d.name + "@" + fmt("%.4f", eta);
      }
    }
  return {passed == cells, std::to_string(passed) + "/" + std::to_string(cells) +
                               " cells, min(margin+budget)=" + fmt("%.4f", worst) + failures};
}

Outcome scaling() {
  double worst = 0.0;
  for (const auto& d : domains()) {
    const Mesh m = triangulate(d.curve, 0.1);
    const BoundaryFamily f = BoundaryFamily::from_eta(kPi / 4);
    const EigenResult base = smallest_eigenpairs(assemble(m, f), 4, 1e-10);
    for (double r : {0.5, 3.0}) {
      const EigenResult s = smallest_eigenpairs(assemble(scaled(m, r), f), 4, 1e-10);
      for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(s.gaps[i] * r / base.gaps[i] - 1.0));
    }
  }
  return {worst <= 1e-10, "max relative deviation " + fmt("%.2e", worst)};
}

Outcome neumann_machinery() {
  double solvability = 0.0;
  for (const auto& d : domains())
    solvability = std::max(solvability, std::abs(solve_neumann(triangulate(d.curve, 0.1), d.curve).solvability_residual));

  const auto disc = BoundaryCurve::disc(1.0);
  std::vector<double> errors;
  for (double h : {0.1, 0.05, 0.025}) {
    const Mesh m = triangulate(disc, h);
    const NeumannSolution ns = solve_neumann(m, disc);
    RealVector d(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v) d(v) = ns.f(v) + m.vertices.col(v).squaredNorm() / 4.0;
    errors.push_back((d.array() - d.mean()).abs().maxCoeff());
  }
  const double order1 = std::log2(errors[0] / errors[1]);
  const double order2 = std::log2(errors[1] / errors[2]);

  int checks = 0, passed = 0;
  double worst = 1e300;
  for (const auto& d : domains())
    for (double eta : {0.0, kPi}) {
      const ConvergenceStudy s = convergence_study(d.curve, eta, {0.2, 0.1, 0.05});
      const auto mesh = std::make_shared<const Mesh>(triangulate(d.curve, 0.05));
      const AssembledProblem p = assemble(mesh, BoundaryFamily::from_eta(eta));
      const EigenResult r = smallest_eigenpairs(p, 4, 1e-9);
      const NeumannSolution ns = solve_neumann(*mesh, d.curve);
      for (int i = 0; i < r.size(); ++i) {
        const ProofCheckReport pc = proof_inequality_check(r, ns, p, r.gaps[i] * s.budget(), i);
        if (!pc.eigenpair_ok) continue;
        ++checks;
        if (pc.pass) ++passed;
        worst = std::min(worst, pc.margin + pc.budget);
      }
    }
  const bool orders_ok = order1 >= 1.5 && order1 <= 2.5 && order2 >= 1.5 && order2 <= 2.5;
  const bool pass = solvability <= 1e-8 && orders_ok && checks > 0 && passed == checks;
  return {pass, "solvability=" + fmt("%.1e", solvability) + " disc f orders " + fmt("%.2f", order1) + "," +
                    fmt("%.2f", order2) + " proof checks " + std::to_string(passed) + "/" + std::to_string(checks) +
                    " min(margin+budget)=" + fmt("%.4f", worst)};
}

Outcome lemma_identity() {
  const BoundaryFamily f = BoundaryFamily::from_eta(kPi / 4);
  const auto disc = BoundaryCurve::disc(1.0);
  auto field = [&](const Mesh& m) {
    Vector u(2 * m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v) {
      const double x = m.vertices(0, v), y = m.vertices(1, v);
      const Complex u1 = std::exp(x - y * y);
      const int slot = m.boundary_slot[v];
      const Complex t = slot >= 0 ? m.boundary[slot].tangent : kI * Complex(x, y);
      u(2 * v) = u1;
      u(2 * v + 1) = f.beta * t * u1;
    }
    return u;
  };
  auto gradient = [](const Eigen::Vector2d& p) {
    const double u = std::exp(p.x() - p.y() * p.y());
    return Eigen::Vector2cd(u, -2.0 * p.y() * u);
  };
  std::vector<double> errors;
  double imag = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const Mesh m = triangulate(disc, h);
    const LemmaReport r = lemma_decompose(m, field(m), f);
    const double ref = lemma_reference_rhs(m, f, gradient);
    errors.push_back(std::abs(r.lhs - ref) / std::abs(ref));
    imag = std::max(imag, r.cross_imag_relative);
  }
  const bool pass = errors[1] <= 1e-3 && errors[1] < errors[0] && errors[2] < errors[1] && imag <= 1e-12;
  return {pass, "rel.err h=0.1,0.05,0.025: " + fmt("%.2e", errors[0]) + " " + fmt("%.2e", errors[1]) + " " +
                    fmt("%.2e", errors[2]) + " Im<Tv,Tw>=" + fmt("%.1e", imag)};
}

Outcome valley_reductions() {
  const auto disc = BoundaryCurve::disc(1.0);
  const auto mesh = std::make_shared<const Mesh>(triangulate(disc, 0.1));
  const AssembledProblem k0p = assemble_first_order(mesh, BoundaryFamily::from_eta(0.0));
  const AssembledProblem kpi = assemble_first_order(mesh, BoundaryFamily::from_eta(kPi));

  const FourSpinorProblem im = assemble_four_spinor(mesh, {ValleyKind::infinite_mass, 1.0});
  const SpectralEquivalenceReport u = infinite_mass_union_check(im, k0p, kpi, 1e-10);

  std::vector<double> spectra[2];
  double armchair_dev = 0.0;
  int idx = 0;
  for (double phase : {0.0, kPi / 3}) {
    const FourSpinorProblem ac = assemble_four_spinor(mesh, {ValleyKind::armchair, std::polar(1.0, phase)});
    permute_armchair(ac);
    const SpectralEquivalenceReport r = spectral_equivalence_check(ac, k0p, 1e-10);
    armchair_dev = std::max(armchair_dev, r.max_deviation);
    spectra[idx++] = r.four_spinor;
  }
  double nu_dev = 0.0;
  for (std::size_t i = 0; i < spectra[0].size(); ++i) nu_dev = std::max(nu_dev, std::abs(spectra[0][i] - spectra[1][i]));

  const EigenResult ritz = smallest_eigenpairs(assemble(mesh, BoundaryFamily::from_eta(0.0)), 8, 1e-9);
  const FilteredSpectrum filtered = filter_first_order(spectra[0], ritz.eigenvalues, 0.05);
  double gap = 1e300;
  for (double l : filtered.accepted) gap = std::min(gap, std::abs(l));
  const ConvergenceStudy s = convergence_study(disc, 0.0, {0.4, 0.2, 0.1});
  const double bound = gap_lower_bound(area(disc), 0.0);
  const bool gap_ok = gap >= bound - s.budget();

  const bool pass = u.pass && armchair_dev <= 1e-10 && nu_dev <= 1e-10 && gap_ok;
  return {pass, "union dev=" + fmt("%.1e", u.max_deviation) + " armchair dev=" + fmt("%.1e", armchair_dev) +
                    " nu dev=" + fmt("%.1e", nu_dev) + " armchair gap=" + fmt("%.4f", gap) +
                    " bound=" + fmt("%.4f", bound) + " budget=" + fmt("%.1e", s.budget())};
}

Outcome property_suite() {
  double herm = 0.0;
  for (const auto& d : domains()) {
    const auto mesh = std::make_shared<const Mesh>(triangulate(d.curve, 0.1));
    for (double eta : {0.0, kPi / 6, kPi / 4, kPi / 3, kPi, -1.0}) {
      const AssembledProblem p = assemble(mesh, BoundaryFamily::from_eta(eta));
      const AssembledProblem q = assemble_first_order(mesh, BoundaryFamily::from_eta(eta));
      herm = std::max({herm, hermitian_defect(p.form), hermitian_defect(p.mass), hermitian_defect(q.form)});
    }
    for (ValleyKind kind : {ValleyKind::infinite_mass, ValleyKind::armchair}) {
      const FourSpinorProblem v = assemble_four_spinor(mesh, {kind, std::polar(1.0, 0.7)});
      herm = std::max({herm, hermitian_defect(v.hamiltonian), hermitian_defect(v.mass)});
    }
  }

  double curvature = 0.0;
  for (const auto& d : domains()) curvature = std::max(curvature, std::abs(total_curvature(d.curve) - 2.0 * kPi));

  const double s2 = std::sqrt(2.0);
  const double branch = std::max({std::abs(beta(kPi / 4) - (s2 - 1.0)), std::abs(beta(3 * kPi / 4) + (s2 - 1.0)),
                                  std::abs(beta(-kPi / 4) - (s2 + 1.0)), std::abs(beta(-3 * kPi / 4) + (s2 + 1.0)),
                                  std::abs(b_factor(kPi / 4) - (s2 - 1.0)), std::abs(b_factor(-3 * kPi / 4) - (s2 - 1.0))});

  const auto mesh = std::make_shared<const Mesh>(triangulate(BoundaryCurve::ellipse(1.5, 0.75), 0.1));
  const AssembledProblem p = assemble(mesh, BoundaryFamily::from_eta(kPi / 6));
  const EigenResult a = smallest_eigenpairs(p, 4, 1e-9, 42);
  const EigenResult b = smallest_eigenpairs(p, 4, 1e-9, 42);
  const bool same = std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(), 4 * sizeof(double)) == 0 &&
                    std::memcmp(a.vectors.data(), b.vectors.data(), a.vectors.size() * sizeof(Complex)) == 0;

  const bool pass = herm == 0.0 && curvature <= 1e-8 && branch <= 1e-15 && same;
  return {pass, "hermitian defect=" + fmt("%.1e", herm) + " curvature err=" + fmt("%.1e", curvature) +
                    " branch err=" + fmt("%.1e", branch) + (same ? " deterministic" : " NOT deterministic")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 disc analytic value", disc_value},
      {"2 k0 versus sqrt(2)", disc_comparison},
      {"3 FEM versus disc oracle", fem_oracle},
      {"4 gap bound matrix", theorem_matrix},
      {"5 exact discrete scaling", scaling},
      {"6 Neumann proof machinery", neumann_machinery},
      {"7 lemma identity", lemma_identity},
      {"8 valley reductions", valley_reductions},
      {"9 property suite", property_suite},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %-28s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
