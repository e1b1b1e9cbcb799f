#include "diracgap/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "diracgap/boundary.hpp"
#include "diracgap/convergence.hpp"
#include "diracgap/disc_analytic.hpp"
#include "diracgap/domain_io.hpp"
#include "diracgap/eigensolver.hpp"
#include "diracgap/error.hpp"
#include "diracgap/fem.hpp"
#include "diracgap/mesh.hpp"
#include "diracgap/theorem.hpp"
#include "diracgap/valley.hpp"

#ifndef DIRACGAP_VERSION
#define DIRACGAP_VERSION "unknown"
#endif

namespace diracgap {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

struct RunConfig {
  std::string command;
  std::string domain;
  std::string eta = "0";
  std::string etas = "0,pi/6,pi/4,pi/3,pi";
  std::string bc = "armchair";
  std::string nu_phase = "0";
  std::string which = "form";
  std::string out;
  std::vector<double> hs;
  double h = 0.05;
  int k = 4;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::optional<double> budget;
  bool strict = false;
  double radius = 1.0;
  int m_max = 5;
  int per_m = 3;
  bool mirror = false;

  std::string canonical() const {
    std::ostringstream os;
    os << std::setprecision(17) << command << '|' << domain << '|' << eta << '|' << etas << '|' << bc << '|'
       << nu_phase << '|' << which << '|' << h << '|' << k << '|' << tol << '|' << seed << '|'
       << (budget ? std::to_string(*budget) : "auto") << '|' << strict << '|' << radius << '|' << m_max << '|'
       << per_m << '|' << mirror;
    for (double x : hs) os << '|' << x;
    return os.str();
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json provenance(const RunConfig& cfg) {
  return {{"version", DIRACGAP_VERSION}, {"config_hash", fnv1a_hex(cfg.canonical())}, {"seed", cfg.seed}};
}

std::string csv_header(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# diracgap " << DIRACGAP_VERSION << " config_hash=" << fnv1a_hex(cfg.canonical()) << " seed=" << cfg.seed
     << '\n';
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw Error(Errc::io_error, "cannot write output file '" + cfg.out + "'");
  file << text;
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) values.push_back(parse_angle(item));
  if (values.empty()) throw Error(Errc::config_error, "angle list is empty");
  return values;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(Errc::config_error, message);
}

void validate_common(const RunConfig& cfg, const BoundaryCurve& curve) {
  require(std::isfinite(cfg.h) && cfg.h > 0.0, "--h must be positive");
  const double diam = diameter(curve);
  if (!(cfg.h < diam / 4.0)) {
    std::ostringstream os;
    os << "--h " << cfg.h << " must be below diameter/4 = " << diam / 4.0 << " for this domain";
    throw Error(Errc::config_error, os.str());
  }
  require(cfg.k >= 1, "--k must be at least 1");
  require(cfg.tol > 1e-14 && cfg.tol < 1e-2, "--tol must lie in (1e-14, 1e-2)");
  if (cfg.budget) require(std::isfinite(*cfg.budget) && *cfg.budget >= 0.0, "--budget must be non-negative");
}

BoundaryCurve require_domain(const RunConfig& cfg) {
  require(!cfg.domain.empty(), "--domain <file.json> is required");
  return load_domain(cfg.domain);
}

struct Budget {
  double value = 0.0;
  bool override = false;
  std::optional<ConvergenceStudy> study;
};

// Richardson budget from levels {4h, 2h, h}, or {h, h/2, h/4} when 4h is too coarse.
Budget gap_budget(const RunConfig& cfg, const BoundaryCurve& curve, double eta) {
  Budget b;
  if (cfg.budget) {
    b.value = *cfg.budget;
    b.override = true;
    return b;
  }
  const double diam = diameter(curve);
  const std::vector<double> levels = 4.0 * cfg.h < diam / 4.0 ? std::vector<double>{4.0 * cfg.h, 2.0 * cfg.h, cfg.h}
                                                              : std::vector<double>{cfg.h, cfg.h / 2.0, cfg.h / 4.0};
  b.study = convergence_study(curve, eta, levels, std::max(cfg.k, 2), cfg.tol, cfg.seed);
  b.value = b.study->budget();
  return b;
}

json study_json(const ConvergenceStudy& s) {
  json levels = json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"h", l.h}, {"h_eff", l.h_eff}, {"dimension", l.dimension}, {"mu1", l.mu1}, {"gap", l.gap}});
  return {{"levels", levels},
          {"extrapolated", s.estimate.extrapolated},
          {"error_estimate", s.estimate.error_estimate},
          {"observed_order", s.estimate.observed_order},
          {"monotone", s.estimate.monotone}};
}

struct Solved {
  std::shared_ptr<const Mesh> mesh;
  AssembledProblem problem;
  EigenResult result;
  json timings;
};

Solved solve_problem(const RunConfig& cfg, const BoundaryCurve& curve, double eta) {
  Solved s;
  auto t0 = Clock::now();
  s.mesh = std::make_shared<const Mesh>(triangulate(curve, cfg.h));
  const double t_mesh = seconds_since(t0);
  t0 = Clock::now();
  s.problem = assemble(s.mesh, BoundaryFamily::from_eta(eta));
  const double t_assemble = seconds_since(t0);
  t0 = Clock::now();
  s.result = smallest_eigenpairs(s.problem, cfg.k, cfg.tol, cfg.seed);
  verify_residuals(s.problem, s.result);
  const double t_solve = seconds_since(t0);
  s.timings = {{"mesh_s", t_mesh}, {"assemble_s", t_assemble}, {"solve_s", t_solve}};
  return s;
}

json gap_json(const GapReport& g) {
  return {{"area", g.area},     {"eta", g.eta},       {"B", g.b},           {"bound", g.bound},
          {"gap", g.gap},       {"margin", g.margin}, {"budget", g.budget}, {"verdict", g.pass ? "PASS" : "FAIL"}};
}

int run_solve(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCurve curve = require_domain(cfg);
  const double eta = parse_angle(cfg.eta);
  const BoundaryFamily family = BoundaryFamily::from_eta(eta);
  validate_common(cfg, curve);

  Solved s = solve_problem(cfg, curve, eta);
  auto t0 = Clock::now();
  const Budget budget = gap_budget(cfg, curve, eta);
  s.timings["budget_s"] = seconds_since(t0);
  const double a = area(curve);
  const GapReport g = check_gap(s.result, a, eta, budget.value);

  json j = provenance(cfg);
  j["domain"] = curve.id();
  j["eta"] = eta;
  j["B"] = family.b;
  j["area"] = a;
  j["h"] = cfg.h;
  j["h_eff"] = s.mesh->h_eff;
  j["dimension"] = s.problem.dimension();
  j["method"] = s.result.method;
  j["eigenvalues_mu"] = s.result.eigenvalues;
  j["gaps_abs_lambda"] = s.result.gaps;
  j["residuals"] = s.result.residuals;
  j["bound"] = g.bound;
  j["budget"] = g.budget;
  j["budget_source"] = budget.override ? "override" : "richardson";
  j["margin"] = g.margin;
  j["verdict"] = g.pass ? "PASS" : "FAIL";
  j["timings"] = s.timings;
  emit(cfg, j.dump(2) + "\n", out);
  return (!g.pass && cfg.strict) ? kExitBoundFail : kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCurve curve = require_domain(cfg);
  const double eta = parse_angle(cfg.eta);
  BoundaryFamily::from_eta(eta);
  validate_common(cfg, curve);

  Solved s = solve_problem(cfg, curve, eta);
  const Budget budget = gap_budget(cfg, curve, eta);
  const GapReport g = check_gap(s.result, area(curve), eta, budget.value);

  json j = provenance(cfg);
  j["domain"] = curve.id();
  j["h"] = cfg.h;
  j["gap_report"] = gap_json(g);
  if (budget.study) j["convergence"] = study_json(*budget.study);
  bool pass = g.pass;
  if (s.problem.family.infinite_mass()) {
    const NeumannSolution ns = solve_neumann(*s.mesh, curve);
    j["neumann"] = {{"C", ns.c},
                    {"solvability_residual", ns.solvability_residual},
                    {"linear_residual", ns.linear_residual},
                    {"interior_residual", ns.interior_residual},
                    {"boundary_flux_residual", ns.boundary_flux_residual}};
    json checks = json::array();
    for (int i = 0; i < s.result.size(); ++i) {
      // A gap error δ moves μ by about 2|λ|δ, so the margin (units of λ²) by |λ|δ.
      const double budget_mu = s.result.gaps[i] * budget.value;
      const ProofCheckReport pc = proof_inequality_check(s.result, ns, s.problem, budget_mu, i);
      checks.push_back({{"pair", pc.pair},
                        {"mu", pc.mu},
                        {"weighted_norm", pc.weighted_norm},
                        {"lhs", pc.lhs},
                        {"rhs", pc.rhs},
                        {"margin", pc.margin},
                        {"budget", pc.budget},
                        {"residual", pc.residual},
                        {"eigenpair_ok", pc.eigenpair_ok},
                        {"verdict", pc.pass ? "PASS" : "FAIL"}});
      pass = pass && pc.pass;
    }
    j["proof_checks"] = checks;
  } else {
    j["proof_checks"] = nullptr;
    j["proof_note"] = "proof inequality check applies to eta in {0, pi}";
  }
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["timings"] = s.timings;
  emit(cfg, j.dump(2) + "\n", out);
  return (!pass && cfg.strict) ? kExitBoundFail : kExitOk;
}

int thread_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DIRACGAP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error(Errc::config_error, "DIRACGAP_THREADS must be a positive integer");
    n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

template <typename Job>
void parallel_for(std::size_t jobs, Job&& job) {
  const int threads = thread_count(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) job(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BoundaryCurve curve = require_domain(cfg);
  const std::vector<double> etas = parse_angle_list(cfg.etas);
  for (double eta : etas) BoundaryFamily::from_eta(eta);
  validate_common(cfg, curve);
  const double a = area(curve);

  std::vector<std::string> rows(etas.size());
  std::vector<int> status(etas.size(), kExitOk);
  parallel_for(etas.size(), [&](std::size_t i) {
    const double eta = etas[i];
    try {
      const Budget budget = gap_budget(cfg, curve, eta);
      const auto mesh = std::make_shared<const Mesh>(triangulate(curve, cfg.h));
      const AssembledProblem problem = assemble(mesh, BoundaryFamily::from_eta(eta));
      const EigenResult res = smallest_eigenpairs(problem, cfg.k, cfg.tol, cfg.seed);
      const GapReport g = check_gap(res, a, eta, budget.value);
      rows[i] = fmt(eta) + "," + fmt(g.b) + "," + fmt(g.bound) + "," + fmt(g.gap) + "," + fmt(g.margin) + "," +
                (g.pass ? "true" : "false");
      if (!g.pass) status[i] = kExitBoundFail;
    } catch (const Error& e) {
      rows[i] = fmt(eta) + ",nan,nan,nan,nan,error:" + to_string(e.code());
      status[i] = kExitSolverFailure;
    }
  });

  std::string text = csv_header(cfg) + "eta,B,bound,gap_fem,margin,pass\n";
  int code = kExitOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    text += rows[i] + "\n";
    if (status[i] == kExitSolverFailure) {
      err << "sweep row eta=" << etas[i] << " failed: " << rows[i] << '\n';
      code = kExitSolverFailure;
    } else if (status[i] == kExitBoundFail && cfg.strict && code == kExitOk) {
      code = kExitBoundFail;
    }
  }
  emit(cfg, text, out);
  return code;
}

int run_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BoundaryCurve curve = require_domain(cfg);
  const double eta = parse_angle(cfg.eta);
  BoundaryFamily::from_eta(eta);
  std::vector<double> hs = cfg.hs.empty() ? std::vector<double>{0.2, 0.1, 0.05} : cfg.hs;
  require(hs.size() >= 3, "--hs needs at least 3 mesh sizes");
  for (std::size_t i = 1; i < hs.size(); ++i) require(hs[i] < hs[i - 1], "--hs must be strictly decreasing");
  RunConfig first = cfg;
  first.h = hs.front();
  validate_common(first, curve);

  const ConvergenceStudy study = convergence_study(curve, eta, hs, std::max(cfg.k, 2), cfg.tol, cfg.seed);
  std::string text = csv_header(cfg) + "h,mu1,sqrt_mu1,richardson_estimate,observed_order\n";
  std::vector<double> heff, gaps;
  bool monotone = true;
  for (const auto& level : study.levels) {
    heff.push_back(level.h_eff);
    gaps.push_back(level.gap);
    std::string extrapolated, order;
    if (heff.size() >= 3) {
      const RichardsonEstimate est = richardson(heff, gaps);
      extrapolated = fmt(est.extrapolated);
      order = est.order_found ? fmt(est.observed_order) : "nan";
      monotone = monotone && est.monotone;
    }
    text += fmt(level.h) + "," + fmt(level.mu1) + "," + fmt(level.gap) + "," + extrapolated + "," + order + "\n";
  }
  if (!monotone) {
    text += "# non-monotone convergence: error estimate falls back to the last difference\n";
    err << "warning: non-monotone convergence sequence\n";
  }
  emit(cfg, text, out);
  return kExitOk;
}

int run_disc(const RunConfig& cfg, std::ostream& out) {
  require(std::isfinite(cfg.radius) && cfg.radius > 0.0, "--R must be positive");
  const DiscSpectrum spectrum = disc_eigenvalues(cfg.radius, cfg.m_max, cfg.per_m, cfg.mirror);
  std::string text = csv_header(cfg) + "m,index,k,residual\n";
  for (const auto& r : spectrum.roots) {
    std::ostringstream os;
    os << r.m << ',' << r.index << ',' << std::setprecision(17) << r.k << ',' << std::setprecision(3) << r.residual
       << '\n';
    text += os.str();
  }
  emit(cfg, text, out);
  return kExitOk;
}

int run_valley(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCurve curve = require_domain(cfg);
  ValleyBoundary vb;
  vb.kind = valley_kind_from_string(cfg.bc);
  vb.nu = std::polar(1.0, parse_angle(cfg.nu_phase));
  validate_common(cfg, curve);

  const auto mesh = std::make_shared<const Mesh>(triangulate(curve, cfg.h));
  const FourSpinorProblem problem = assemble_four_spinor(mesh, vb);
  const AssembledProblem eta0 = assemble_first_order(mesh, BoundaryFamily::from_eta(0.0));

  json j = provenance(cfg);
  j["domain"] = curve.id();
  j["bc"] = to_string(vb.kind);
  j["nu_phase"] = std::arg(vb.nu);
  j["h"] = cfg.h;
  j["dimension"] = problem.dimension();
  j["hermitian_defect"] = hermitian_defect(problem.hamiltonian);

  SpectralEquivalenceReport rep;
  if (vb.kind == ValleyKind::armchair) {
    const ArmchairBlocks blocks = permute_armchair(problem);
    j["structure"] = {{"diagonal_block_max", blocks.diagonal_block_max},
                      {"offdiagonal_mismatch", blocks.offdiagonal_mismatch},
                      {"boundary_matrix_deviation", blocks.boundary_matrix_deviation}};
    rep = spectral_equivalence_check(problem, eta0);
  } else {
    const AssembledProblem eta_pi = assemble_first_order(mesh, BoundaryFamily::from_eta(kPi));
    rep = infinite_mass_union_check(problem, eta0, eta_pi);
  }
  j["four_spinor_spectrum"] = rep.four_spinor;
  j["reference_spectrum"] = rep.reference;
  j["equivalence"] = {{"max_deviation", rep.max_deviation}, {"tol", rep.tol}, {"pass", rep.pass}};

  // Gap with B = 1: first-order eigenvalues confirmed by the squared form.
  const AssembledProblem squared = assemble(mesh, BoundaryFamily::from_eta(0.0));
  const int kq = std::max(cfg.k, 8);
  const EigenResult ritz = smallest_eigenpairs(squared, kq, cfg.tol, cfg.seed);
  const FilteredSpectrum filtered = filter_first_order(rep.four_spinor, ritz.eigenvalues, 0.05);
  double gap = std::numeric_limits<double>::infinity();
  for (double lambda : filtered.accepted) gap = std::min(gap, std::abs(lambda));
  const Budget budget = gap_budget(cfg, curve, 0.0);
  const double bound = gap_lower_bound(area(curve), 0.0);
  const bool pass = std::isfinite(gap) && gap >= bound - budget.value;
  j["gap"] = {{"abs_lambda_min", std::isfinite(gap) ? json(gap) : json(nullptr)},
              {"bound", bound},
              {"budget", budget.value},
              {"rejected_spurious", filtered.rejected.size()},
              {"verdict", pass ? "PASS" : "FAIL"}};
  emit(cfg, j.dump(2) + "\n", out);
  return (!pass && cfg.strict) ? kExitBoundFail : kExitOk;
}

int run_export(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCurve curve = require_domain(cfg);
  const double eta = parse_angle(cfg.eta);
  BoundaryFamily::from_eta(eta);
  validate_common(cfg, curve);
  const auto mesh = std::make_shared<const Mesh>(triangulate(curve, cfg.h));
  SparseMatrix a;
  if (cfg.which == "form") {
    a = assemble(mesh, BoundaryFamily::from_eta(eta)).form;
  } else if (cfg.which == "mass") {
    a = assemble(mesh, BoundaryFamily::from_eta(eta)).mass;
  } else if (cfg.which == "first-order") {
    a = assemble_first_order(mesh, BoundaryFamily::from_eta(eta)).form;
  } else if (cfg.which == "reduction") {
    a = two_spinor_space(*mesh, BoundaryFamily::from_eta(eta)).reduction();
  } else {
    throw Error(Errc::config_error, "--which must be form, mass, first-order or reduction");
  }
  std::ostringstream os;
  os << csv_header(cfg) << "# rows=" << a.rows() << " cols=" << a.cols() << " nnz=" << a.nonZeros() << '\n';
  write_triplets(os, a);
  emit(cfg, os.str(), out);
  return kExitOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::invalid_curve:
    case Errc::near_zigzag:
    case Errc::zigzag_spectral_use:
    case Errc::wrong_eta:
    case Errc::config_error:
    case Errc::io_error:
    case Errc::degenerate_mesh:
      return kExitConfigError;
    default:
      return kExitSolverFailure;
  }
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty()) throw Error(Errc::config_error, "empty angle");
  auto to_number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || !std::isfinite(v)) throw Error(Errc::config_error, "cannot parse angle '" + text + "'");
    return v;
  };
  const std::size_t pi = s.find("pi");
  if (pi == std::string::npos) return to_number(s);

  std::string before = s.substr(0, pi);
  std::string after = s.substr(pi + 2);
  double factor = 1.0;
  if (!before.empty() && before.back() == '*') before.pop_back();
  if (before == "-") factor = -1.0;
  else if (before == "+" || before.empty()) factor = 1.0;
  else factor = to_number(before);
  if (!after.empty()) {
    const char op = after.front();
    const double v = to_number(after.substr(1));
    if (op == '/') {
      if (v == 0.0) throw Error(Errc::config_error, "division by zero in angle '" + text + "'");
      factor /= v;
    } else if (op == '*') {
      factor *= v;
    } else {
      throw Error(Errc::config_error, "cannot parse angle '" + text + "'");
    }
  }
  return factor * kPi;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectral gap lab for the 2D Dirac operator with eta-family boundary conditions", "diracgap"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", DIRACGAP_VERSION);

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain, "Domain JSON file")->required();
    sub->add_option("--h", cfg.h, "Target mesh size");
    sub->add_option("--k", cfg.k, "Number of eigenpairs");
    sub->add_option("--tol", cfg.tol, "Relative residual tolerance");
    sub->add_option("--seed", cfg.seed, "Start-block seed");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };

  auto* solve = app.add_subcommand("solve", "Smallest eigenpairs and the gap verdict (JSON)");
  add_solver_flags(solve);
  solve->add_option("--eta", cfg.eta, "Boundary parameter in radians (accepts pi/4 etc.)");
  solve->add_option("--budget", cfg.budget, "Override the discretization budget on |lambda|");
  solve->add_flag("--strict", cfg.strict, "Exit 2 on a FAIL verdict");

  auto* verify = app.add_subcommand("verify", "Gap report plus Neumann proof checks (JSON)");
  add_solver_flags(verify);
  verify->add_option("--eta", cfg.eta, "Boundary parameter in radians");
  verify->add_option("--budget", cfg.budget, "Override the discretization budget on |lambda|");
  verify->add_flag("--strict", cfg.strict, "Exit 2 on a FAIL verdict");

  auto* sweep = app.add_subcommand("sweep", "Gap verdict over a list of eta values (CSV)");
  add_solver_flags(sweep);
  sweep->add_option("--etas", cfg.etas, "Comma-separated eta values");
  sweep->add_option("--budget", cfg.budget, "Override the discretization budget on |lambda|");
  sweep->add_flag("--strict", cfg.strict, "Exit 2 on any FAIL row");

  auto* converge = app.add_subcommand("converge", "Mesh convergence with Richardson extrapolation (CSV)");
  add_solver_flags(converge);
  converge->add_option("--eta", cfg.eta, "Boundary parameter in radians");
  converge->add_option("--hs", cfg.hs, "Decreasing mesh sizes (at least 3)")->delimiter(',');

  auto* disc = app.add_subcommand("disc", "Analytic disc spectrum (CSV)");
  disc->add_option("--R", cfg.radius, "Disc radius");
  disc->add_option("--m-max", cfg.m_max, "Largest angular index");
  disc->add_option("--per-m", cfg.per_m, "Roots per angular index");
  disc->add_flag("--mirror", cfg.mirror, "Include the J_n = -J_{n+1} family");
  disc->add_option("--out", cfg.out, "Output file (default stdout)");

  auto* valley = app.add_subcommand("valley", "Four-spinor valley boundary conditions (JSON)");
  add_solver_flags(valley);
  valley->add_option("--bc", cfg.bc, "infinite-mass, armchair or zigzag");
  valley->add_option("--nu-phase", cfg.nu_phase, "Armchair phase angle of nu");
  valley->add_flag("--strict", cfg.strict, "Exit 2 on a FAIL verdict");

  auto* exporter = app.add_subcommand("export-matrix", "Write a matrix as 'row col re im' triplets");
  add_solver_flags(exporter);
  exporter->add_option("--eta", cfg.eta, "Boundary parameter in radians");
  exporter->add_option("--which", cfg.which, "form, mass, first-order or reduction");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  try {
    if (*solve) { cfg.command = "solve"; return run_solve(cfg, out); }
    if (*verify) { cfg.command = "verify"; return run_verify(cfg, out); }
    if (*sweep) { cfg.command = "sweep"; return run_sweep(cfg, out, err); }
    if (*converge) { cfg.command = "converge"; return run_converge(cfg, out, err); }
    if (*disc) { cfg.command = "disc"; return run_disc(cfg, out); }
    if (*valley) {
      cfg.command = "valley";
      if (valley->count("--h") == 0) cfg.h = 0.1;
      return run_valley(cfg, out);
    }
    if (*exporter) { cfg.command = "export-matrix"; return run_export(cfg, out); }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitConfigError;
}

}  // namespace diracgap
