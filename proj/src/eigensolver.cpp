#include "diracgap/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

using Factorization = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;

// Uniform in [-1, 1] built from raw engine bits so the stream is the same
// on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }
  Matrix block(Eigen::Index rows, Eigen::Index cols) {
    Matrix x(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double re = uniform();
        x(i, j) = Complex(re, uniform());
      }
    return x;
  }

 private:
  std::mt19937_64 engine_;
};

double relative_residual(const SparseMatrix& a, const SparseMatrix& m, const Vector& x, double mu) {
  const Vector mx = m * x;
  const double denom = mx.norm();
  return denom > 0.0 ? (a * x - mu * mx).norm() / denom : std::numeric_limits<double>::infinity();
}

double orthonormality_defect(const SparseMatrix& m, const Matrix& x) {
  if (x.cols() == 0) return 0.0;
  const Matrix g = x.adjoint() * (m * x);
  return (g - Matrix::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff();
}

void check_mass(const SparseMatrix& m) {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt(m);
  if (llt.info() != Eigen::Success)
    throw Error(Errc::indefinite_mass, "mass matrix failed Cholesky factorization");
}

bool factor_ok(const Factorization& f) {
  if (f.info() != Eigen::Success) return false;
  const auto d = f.vectorD();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double v = std::abs(d(i));
    dmax = std::max(dmax, v);
    dmin = std::min(dmin, v);
  }
  return std::isfinite(dmax) && dmin > 1e-13 * dmax;
}

void validate(const SparseMatrix& a, const SparseMatrix& m, const EigenOptions& o) {
  if (a.rows() != a.cols() || m.rows() != m.cols() || a.rows() != m.rows())
    throw Error(Errc::invalid_argument, "pencil matrices must be square and of equal size");
  const Eigen::Index n = a.rows();
  if (o.k < 1 || o.k > n / 4) {
    std::ostringstream os;
    os << "eigenpair count k=" << o.k << " must satisfy 1 <= k <= dim/4 = " << n / 4;
    throw Error(Errc::invalid_argument, os.str());
  }
  if (!(o.tol > 1e-14 && o.tol < 1e-2))
    throw Error(Errc::invalid_argument, "residual tolerance must lie in (1e-14, 1e-2)");
}

struct Basis {
  Matrix v;   // M-orthonormal columns
  Matrix mv;  // M v
};

// M-orthonormalizes the columns of w against the basis and each other;
// dependent columns are replaced with fresh random directions.
void extend_basis(Basis& basis, Matrix w, const SparseMatrix& m, Rng& rng) {
  const Eigen::Index n = w.rows();
  Eigen::Index cols = basis.v.cols();
  basis.v.conservativeResize(n, cols + w.cols());
  basis.mv.conservativeResize(n, cols + w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    Vector x = w.col(j);
    for (int attempt = 0;; ++attempt) {
      const double before = std::sqrt(std::abs(x.dot(m * x)));
      for (int pass = 0; pass < 2; ++pass) {
        if (cols > 0) {
          const Vector c = basis.mv.leftCols(cols).adjoint() * x;
          x.noalias() -= basis.v.leftCols(cols) * c;
        }
      }
      const Vector mx = m * x;
      const double after = std::sqrt(std::abs(x.dot(mx)));
      if (after > 1e-10 * before && after > 0.0) {
        basis.v.col(cols) = x / after;
        basis.mv.col(cols) = mx / after;
        ++cols;
        break;
      }
      if (attempt > 8) throw Error(Errc::no_convergence, "could not extend the Krylov basis");
      x = rng.block(n, 1).col(0);
    }
  }
}

}  // namespace

EigenResult solve_pencil(const SparseMatrix& a, const SparseMatrix& m, const EigenOptions& options) {
  validate(a, m, options);
  check_mass(m);
  const int n = static_cast<int>(a.rows());
  const int k = options.k;
  const int block = std::max(1, std::min(options.block_size, k));
  int subspace = options.subspace > 0 ? options.subspace : std::max(8 * block, 3 * k + 2 * block);
  subspace = std::min(subspace, n);
  const int keep = std::max(k, std::min(k + block, subspace - 2 * block));
  if (subspace < keep + block) {
    if (n <= kDenseLimit) return dense_eigenpairs(a, m, k, options.target, options.shift);
    throw Error(Errc::invalid_argument, "Krylov subspace too small for the requested pairs");
  }

  double shift = options.shift;
  Factorization factor;
  factor.compute(SparseMatrix(a - shift * m));
  if (!factor_ok(factor) && options.target == EigenTarget::smallest) {
    // Guard shift below the spectrum's scale when S is singular at the requested shift.
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a.coeff(i, i) / m.coeff(i, i)));
    shift = options.shift - 1e-3 * std::max(scale, 1.0);
    factor.compute(SparseMatrix(a - shift * m));
  }
  if (!factor_ok(factor)) {
    if (options.dense_fallback && n <= kDenseLimit) return dense_eigenpairs(a, m, k, options.target, shift);
    throw Error(Errc::no_convergence, "shift-invert factorization failed");
  }

  Rng rng(options.seed);
  int applications = 0;
  auto apply = [&](const Matrix& x) {
    applications += static_cast<int>(x.cols());
    Matrix y = factor.solve(Matrix(m * x));
    return y;
  };

  Basis basis;
  Matrix pending = apply(rng.block(n, block));
  std::vector<double> last_residuals;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    while (basis.v.cols() + block <= subspace) {
      const Eigen::Index before = basis.v.cols();
      extend_basis(basis, pending, m, rng);
      pending = apply(basis.v.middleCols(before, block));
    }

    Matrix h = basis.v.adjoint() * (a * basis.v);
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> ritz(h);
    const RealVector theta = ritz.eigenvalues();
    std::vector<int> order(theta.size());
    std::iota(order.begin(), order.end(), 0);
    if (options.target == EigenTarget::nearest)
      std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return std::abs(theta(i) - shift) < std::abs(theta(j) - shift);
      });

    Matrix x(n, k);
    std::vector<double> mu(k), res(k);
    bool converged = true;
    for (int i = 0; i < k; ++i) {
      x.col(i) = basis.v * ritz.eigenvectors().col(order[i]);
      mu[i] = theta(order[i]);
      res[i] = relative_residual(a, m, x.col(i), mu[i]);
      converged = converged && res[i] <= options.tol;
    }
    last_residuals = res;

    if (converged) {
      std::vector<int> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return mu[i] < mu[j]; });
      EigenResult out;
      out.vectors.resize(n, k);
      for (int i = 0; i < k; ++i) {
        out.eigenvalues.push_back(mu[idx[i]]);
        out.gaps.push_back(std::sqrt(std::max(mu[idx[i]], 0.0)));
        out.residuals.push_back(res[idx[i]]);
        out.vectors.col(i) = x.col(idx[i]);
      }
      out.tol = options.tol;
      out.seed = options.seed;
      out.shift = shift;
      out.restarts = restart;
      out.operator_applications = applications;
      out.orthonormality_defect = orthonormality_defect(m, out.vectors);
      out.method = "block-shift-invert-lanczos";
      return out;
    }

    // Thick restart: keep the best Ritz vectors, continue from the unconverged ones.
    Matrix kept(n, keep);
    for (int i = 0; i < keep; ++i) kept.col(i) = basis.v * ritz.eigenvectors().col(order[i]);
    std::vector<int> next;
    for (int i = 0; i < keep && static_cast<int>(next.size()) < block; ++i)
      if (i >= k || res[i] > options.tol) next.push_back(i);
    Matrix seed_block(n, static_cast<Eigen::Index>(next.size()));
    for (std::size_t j = 0; j < next.size(); ++j) seed_block.col(j) = kept.col(next[j]);
    Basis fresh;
    extend_basis(fresh, kept, m, rng);
    basis = std::move(fresh);
    pending = apply(seed_block);
  }

  if (options.dense_fallback && n <= kDenseLimit) {
    EigenResult out = dense_eigenpairs(a, m, k, options.target, shift);
    out.method = "dense-fallback";
    return out;
  }
  std::ostringstream os;
  os << "no convergence after " << options.max_restarts << " restarts; residuals:";
  for (double r : last_residuals) os << ' ' << r;
  throw Error(Errc::no_convergence, os.str());
}

EigenResult smallest_eigenpairs(const AssembledProblem& problem, int k, double tol, std::uint64_t seed) {
  EigenOptions o;
  o.k = k;
  o.tol = tol;
  o.seed = seed;
  o.target = problem.first_order ? EigenTarget::nearest : EigenTarget::smallest;
  return solve_pencil(problem.form, problem.mass, o);
}

EigenResult dense_eigenpairs(const SparseMatrix& a, const SparseMatrix& m, int k, EigenTarget target,
                             double shift) {
  const Eigen::Index n = a.rows();
  if (n > 4 * kDenseLimit) throw Error(Errc::invalid_argument, "pencil too large for the dense solver");
  Matrix ad = Matrix(a);
  Matrix md = Matrix(m);
  ad = 0.5 * (ad + ad.adjoint()).eval();
  md = 0.5 * (md + md.adjoint()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(ad, md, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw Error(Errc::indefinite_mass, "dense generalized solve failed");
  const RealVector theta = solver.eigenvalues();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (target == EigenTarget::nearest)
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::abs(theta(i) - shift) < std::abs(theta(j) - shift); });
  const int count = k <= 0 ? static_cast<int>(n) : std::min<int>(k, static_cast<int>(n));
  std::vector<int> chosen(order.begin(), order.begin() + count);
  std::stable_sort(chosen.begin(), chosen.end(), [&](int i, int j) { return theta(i) < theta(j); });
  EigenResult out;
  out.vectors.resize(n, count);
  for (int i = 0; i < count; ++i) {
    const double mu = theta(chosen[i]);
    const Vector x = solver.eigenvectors().col(chosen[i]);
    out.eigenvalues.push_back(mu);
    out.gaps.push_back(std::sqrt(std::max(mu, 0.0)));
    out.residuals.push_back(relative_residual(a, m, x, mu));
    out.vectors.col(i) = x;
  }
  out.shift = shift;
  out.tol = 0.0;
  out.method = "dense";
  out.orthonormality_defect = orthonormality_defect(m, out.vectors);
  return out;
}

std::vector<double> dense_spectrum(const SparseMatrix& a, const SparseMatrix& m) {
  Matrix ad = Matrix(a);
  Matrix md = Matrix(m);
  ad = 0.5 * (ad + ad.adjoint()).eval();
  md = 0.5 * (md + md.adjoint()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(ad, md, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw Error(Errc::indefinite_mass, "dense generalized solve failed");
  const RealVector theta = solver.eigenvalues();
  return {theta.data(), theta.data() + theta.size()};
}

ResidualReport verify_residuals(const SparseMatrix& a, const SparseMatrix& m, const EigenResult& result) {
  ResidualReport report;
  report.tol = result.tol;
  for (int i = 0; i < result.size(); ++i) {
    const double r = relative_residual(a, m, result.vectors.col(i), result.eigenvalues[i]);
    const double reported = i < static_cast<int>(result.residuals.size()) ? result.residuals[i] : 0.0;
    report.reported.push_back(reported);
    report.recomputed.push_back(r);
    const bool ok = result.tol > 0.0 ? r <= result.tol : true;
    report.pass.push_back(ok);
    report.all_pass = report.all_pass && ok;
    report.max_residual = std::max(report.max_residual, r);
  }
  for (int i = 0; i < result.size(); ++i) {
    if (report.recomputed[i] > 10.0 * report.reported[i] && report.recomputed[i] > result.tol) {
      std::ostringstream os;
      os << "pair " << i << ": recomputed residual " << report.recomputed[i] << " exceeds reported "
         << report.reported[i] << " by more than 10x";
      throw Error(Errc::residual_mismatch, os.str());
    }
  }
  return report;
}

ResidualReport verify_residuals(const AssembledProblem& problem, const EigenResult& result) {
  return verify_residuals(problem.form, problem.mass, result);
}

}  // namespace diracgap
