#include "diracgap/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace diracgap {

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double hermitian_defect(const SparseMatrix& a) {
  const SparseMatrix adj = a.adjoint();
  const SparseMatrix diff = a - adj;
  return max_abs(diff);
}

SparseMatrix hermitian_part(const SparseMatrix& a) {
  SparseMatrix adj = a.adjoint();
  SparseMatrix sum = a + adj;
  sum *= Complex(0.5, 0.0);
  sum.prune(Complex(0.0, 0.0), 0.0);
  sum.makeCompressed();
  return sum;
}

Complex form(const SparseMatrix& a, const Vector& x, const Vector& y) {
  return x.dot(a * y);
}

}  // namespace diracgap
