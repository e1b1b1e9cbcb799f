#include "diracgap/valley.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "diracgap/eigensolver.hpp"
#include "diracgap/error.hpp"

namespace diracgap {

namespace {

constexpr double kRankTolerance = 1e-8;

ConstrainedSpace four_spinor_space(const Mesh& mesh, const ValleyBoundary& vb) {
  ConstrainedSpace space;
  space.components = 4;
  const int nv = mesh.vertex_count();
  space.first.resize(nv);
  space.count.resize(nv);
  for (int v = 0; v < nv; ++v) {
    space.first[v] = space.size();
    const int slot = mesh.boundary_slot[v];
    if (slot < 0) {
      space.count[v] = 4;
      for (int c = 0; c < 4; ++c) {
        space.vertex.push_back(v);
        space.spinor.push_back(Eigen::Vector4cd::Unit(c));
      }
      continue;
    }
    const Complex t = mesh.boundary[slot].tangent;
    const Eigen::Matrix4cd p = valley_projector(vb, t);
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(p);
    const auto s = svd.singularValues();
    const int rank = static_cast<int>((s.array() > kRankTolerance).count());
    // 2P₊ = 1 + A, written out so the basis entries are exact.
    const Eigen::Matrix4cd a = valley_matrix(vb, t);
    Eigen::Matrix<Complex, 4, 2> basis;
    basis.col(0) = Eigen::Vector4cd::Unit(0) + a.col(0);
    basis.col(1) = Eigen::Vector4cd::Unit(2) + a.col(2);
    Eigen::JacobiSVD<Eigen::Matrix<Complex, 4, 2>> bsvd(basis);
    if (rank != 2 || bsvd.singularValues()(1) <= kRankTolerance) {
      std::ostringstream os;
      os << "rank of P+(A) at boundary vertex " << v << " is " << rank << ", expected 2";
      throw Error(Errc::degenerate_projector, os.str());
    }
    space.count[v] = 2;
    for (int c = 0; c < 2; ++c) {
      space.vertex.push_back(v);
      space.spinor.push_back(basis.col(c));
    }
  }
  return space;
}

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  return max_abs(SparseMatrix(a - b));
}

SparseMatrix block(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> col_pos(m.cols(), -1), row_pos(m.rows(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<int>(j);
  std::vector<Triplet> triplets;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      if (row_pos[it.row()] >= 0 && col_pos[it.col()] >= 0)
        triplets.emplace_back(row_pos[it.row()], col_pos[it.col()], it.value());
  SparseMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

double spectrum_deviation(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
  return dev;
}

SpectralEquivalenceReport compare_spectra(const FourSpinorProblem& problem, std::vector<double> reference,
                                          double tol, const char* what) {
  SpectralEquivalenceReport rep;
  rep.four_spinor = dense_spectrum(problem.hamiltonian, problem.mass);
  std::sort(reference.begin(), reference.end());
  rep.reference = std::move(reference);
  rep.max_deviation = spectrum_deviation(rep.four_spinor, rep.reference);
  rep.tol = tol;
  rep.pass = rep.max_deviation <= tol;
  if (!rep.pass) {
    std::ostringstream os;
    os << what << ": max eigenvalue deviation " << rep.max_deviation << " exceeds " << tol;
    throw Error(Errc::structure_mismatch, os.str());
  }
  return rep;
}

}  // namespace

FourSpinorProblem assemble_four_spinor(const Mesh& mesh, const ValleyBoundary& vb) {
  return assemble_four_spinor(std::make_shared<const Mesh>(mesh), vb);
}

FourSpinorProblem assemble_four_spinor(std::shared_ptr<const Mesh> mesh, const ValleyBoundary& vb) {
  if (vb.kind == ValleyKind::zigzag)
    throw Error(Errc::zigzag_spectral_use, "zigzag boundary is not self-adjoint on H1; no spectral use");
  FourSpinorProblem p;
  p.boundary = vb;
  p.mesh = std::move(mesh);
  p.space = four_spinor_space(*p.mesh, vb);
  p.reduction = p.space.reduction();
  p.hamiltonian = reduced_dirac(*p.mesh, p.space);
  p.mass = reduced_mass(*p.mesh, p.space);
  return p;
}

ArmchairBlocks permute_armchair(const FourSpinorProblem& problem) {
  if (problem.boundary.kind != ValleyKind::armchair)
    throw Error(Errc::invalid_argument, "permute_armchair needs an armchair problem");
  const Complex nu = problem.boundary.nu;
  const ConstrainedSpace& space = problem.space;
  const Mesh& mesh = *problem.mesh;

  // U_ν = diag(1, 1, ν*, ν*), then U_p swaps components 2 and 4.
  const int n = space.size();
  std::vector<Eigen::Vector4cd> transformed(n);
  std::vector<Complex> phase(n);
  std::vector<int> lead(n);
  for (int I = 0; I < n; ++I) {
    Eigen::Vector4cd e = space.spinor[I];
    e(2) *= std::conj(nu);
    e(3) *= std::conj(nu);
    std::swap(e(1), e(3));
    int c = 0;
    while (c < 4 && e(c) == Complex(0.0, 0.0)) ++c;
    lead[I] = c;
    phase[I] = e(c);
    transformed[I] = e / e(c);
  }

  ArmchairBlocks out;
  for (int I = 0; I < n; ++I) {
    const auto& e = transformed[I];
    const bool in_a = e(2) == Complex(0.0, 0.0) && e(3) == Complex(0.0, 0.0);
    const bool in_b = e(0) == Complex(0.0, 0.0) && e(1) == Complex(0.0, 0.0);
    if (in_a == in_b) {
      std::ostringstream os;
      os << "reduced DOF " << I << " mixes both component pairs after U_p";
      throw Error(Errc::structure_mismatch, os.str());
    }
    (in_a ? out.group_a : out.group_b).push_back(I);
  }
  auto by_vertex = [&](int i, int j) {
    return space.vertex[i] != space.vertex[j] ? space.vertex[i] < space.vertex[j] : lead[i] < lead[j];
  };
  std::sort(out.group_a.begin(), out.group_a.end(), by_vertex);
  std::sort(out.group_b.begin(), out.group_b.end(), by_vertex);

  // K̃ = D* K₄ D with D the conjugate leading-entry phases; identity when ν = 1.
  SparseMatrix k = problem.hamiltonian;
  SparseMatrix m = problem.mass;
  const bool trivial_phase =
      std::all_of(phase.begin(), phase.end(), [](Complex z) { return z == Complex(1.0, 0.0); });
  if (!trivial_phase) {
    Eigen::VectorXcd d(n);
    for (int I = 0; I < n; ++I) d(I) = std::conj(phase[I]);
    k = hermitian_part(SparseMatrix(d.conjugate().asDiagonal() * k * d.asDiagonal()));
    m = hermitian_part(SparseMatrix(d.conjugate().asDiagonal() * m * d.asDiagonal()));
  }
  out.k_aa = block(k, out.group_a, out.group_a);
  out.k_ab = block(k, out.group_a, out.group_b);
  out.k_ba = block(k, out.group_b, out.group_a);
  out.k_bb = block(k, out.group_b, out.group_b);
  out.m_aa = block(m, out.group_a, out.group_a);
  out.m_bb = block(m, out.group_b, out.group_b);

  out.diagonal_block_max = std::max(max_abs(out.k_aa), max_abs(out.k_bb));
  if (out.group_a.size() == out.group_b.size()) {
    out.offdiagonal_mismatch = max_abs_difference(out.k_ab, out.k_ba);
  } else {
    out.offdiagonal_mismatch = std::numeric_limits<double>::infinity();
  }

  // Ã = U_p U_ν A U_ν* U_p* must be diag(σ·t, σ·t) at every boundary node.
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(1, 3) = std::conj(nu);
  u(2, 2) = std::conj(nu);
  u(3, 1) = 1.0;
  for (const auto& node : mesh.boundary) {
    const Eigen::Matrix4cd at = u * valley_matrix(problem.boundary, node.tangent) * u.adjoint();
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected.topLeftCorner<2, 2>() = sigma_dot(node.tangent);
    expected.bottomRightCorner<2, 2>() = sigma_dot(node.tangent);
    out.boundary_matrix_deviation =
        std::max(out.boundary_matrix_deviation, (at - expected).cwiseAbs().maxCoeff());
  }

  const double scale = std::max(max_abs(k), 1.0);
  if (out.diagonal_block_max > 0.0 || out.offdiagonal_mismatch > 1e-12 * scale ||
      out.boundary_matrix_deviation > 1e-12) {
    std::ostringstream os;
    os << "armchair block structure violated: diagonal blocks " << out.diagonal_block_max
       << ", off-diagonal mismatch " << out.offdiagonal_mismatch << ", boundary matrix deviation "
       << out.boundary_matrix_deviation;
    throw Error(Errc::structure_mismatch, os.str());
  }
  return out;
}

SpectralEquivalenceReport spectral_equivalence_check(const FourSpinorProblem& problem,
                                                     const AssembledProblem& two_spinor, double tol) {
  if (problem.boundary.kind != ValleyKind::armchair)
    throw Error(Errc::invalid_argument, "spectral equivalence check needs an armchair problem");
  if (!two_spinor.first_order || std::abs(std::sin(two_spinor.family.eta)) > 1e-12 ||
      std::cos(two_spinor.family.eta) < 0.0)
    throw Error(Errc::invalid_argument, "reference must be the eta = 0 first-order problem");
  std::vector<double> reference;
  for (double lambda : dense_spectrum(two_spinor.form, two_spinor.mass)) {
    reference.push_back(lambda);
    reference.push_back(-lambda);
  }
  return compare_spectra(problem, std::move(reference), tol, "armchair spectrum");
}

SpectralEquivalenceReport infinite_mass_union_check(const FourSpinorProblem& problem,
                                                    const AssembledProblem& eta_zero,
                                                    const AssembledProblem& eta_pi, double tol) {
  if (problem.boundary.kind != ValleyKind::infinite_mass)
    throw Error(Errc::invalid_argument, "union check needs an infinite-mass problem");
  if (!eta_zero.first_order || !eta_pi.first_order)
    throw Error(Errc::invalid_argument, "union check compares first-order problems");
  std::vector<double> reference = dense_spectrum(eta_zero.form, eta_zero.mass);
  const std::vector<double> pi = dense_spectrum(eta_pi.form, eta_pi.mass);
  reference.insert(reference.end(), pi.begin(), pi.end());
  return compare_spectra(problem, std::move(reference), tol, "infinite-mass spectrum");
}

}  // namespace diracgap
