#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace diracgap {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;
using RealSparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Triplet = Eigen::Triplet<Complex, int>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest entry magnitude of a sparse matrix (0 for an empty matrix).
double max_abs(const SparseMatrix& a);

/// max |A - A*| entrywise.
double hermitian_defect(const SparseMatrix& a);

/// (A + A*) / 2; the result is Hermitian bit-for-bit.
SparseMatrix hermitian_part(const SparseMatrix& a);

/// x* A y.
Complex form(const SparseMatrix& a, const Vector& x, const Vector& y);

}  // namespace diracgap
