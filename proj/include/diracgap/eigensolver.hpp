#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diracgap/fem.hpp"
#include "diracgap/linalg.hpp"

namespace diracgap {

enum class EigenTarget {
  smallest,  ///< algebraically smallest eigenvalues
  nearest,   ///< eigenvalues closest to the shift (indefinite pencils)
};

struct EigenOptions {
  int k = 4;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  EigenTarget target = EigenTarget::smallest;
  double shift = 0.0;
  int block_size = 4;
  int subspace = 0;  ///< Krylov basis size; 0 picks max(8 × block, 3k + 2 × block)
  int max_restarts = 200;
  bool dense_fallback = true;  ///< retry densely when Lanczos stalls and dim ≤ 2000
};

/// Generalized eigenpairs A x = μ M x, sorted ascending by μ.
struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<double> gaps;       ///< √max(μ, 0)
  Matrix vectors;                 ///< columns, M-orthonormal
  std::vector<double> residuals;  ///< ‖A x - μ M x‖ / ‖M x‖
  double tol = 0.0;
  std::uint64_t seed = 0;
  double shift = 0.0;
  int restarts = 0;
  int operator_applications = 0;
  double orthonormality_defect = 0.0;  ///< max |X* M X - I|
  std::string method;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

inline constexpr int kDenseLimit = 2000;

/// k smallest pairs of (S, M) by block shift-invert Lanczos with full
/// reorthogonalization and thick restart. Shift 0 is tried first; if
/// S is singular at 0 a small negative shift guard is used instead.
EigenResult smallest_eigenpairs(const AssembledProblem& problem, int k, double tol = 1e-8,
                                std::uint64_t seed = 42);

EigenResult solve_pencil(const SparseMatrix& a, const SparseMatrix& m, const EigenOptions& options);

/// Dense reference solver; every eigenpair when k <= 0.
EigenResult dense_eigenpairs(const SparseMatrix& a, const SparseMatrix& m, int k,
                             EigenTarget target = EigenTarget::smallest, double shift = 0.0);

/// All eigenvalues of the pencil, ascending (dense).
std::vector<double> dense_spectrum(const SparseMatrix& a, const SparseMatrix& m);

struct ResidualReport {
  std::vector<double> reported;
  std::vector<double> recomputed;
  std::vector<bool> pass;
  double max_residual = 0.0;
  double tol = 0.0;
  bool all_pass = true;
};

/// Recomputes residuals straight from the matrices. Throws residual_mismatch
/// if any recomputed residual exceeds both tol and 10× the reported one.
ResidualReport verify_residuals(const SparseMatrix& a, const SparseMatrix& m, const EigenResult& result);
ResidualReport verify_residuals(const AssembledProblem& problem, const EigenResult& result);

}  // namespace diracgap
