#pragma once

#include <memory>
#include <vector>

#include "diracgap/boundary.hpp"
#include "diracgap/fem.hpp"
#include "diracgap/mesh.hpp"

namespace diracgap {

/// H = diag(T, T) on four-spinors with P₋(A)ψ = 0 imposed nodally.
struct FourSpinorProblem {
  SparseMatrix hamiltonian;  ///< symmetrized first-order form K₄
  SparseMatrix mass;         ///< M₄
  SparseMatrix reduction;
  ConstrainedSpace space;    ///< 4 components; boundary nodes carry 2P₊(A)[e₁, e₃]
  ValleyBoundary boundary;
  std::shared_ptr<const Mesh> mesh;

  int dimension() const { return static_cast<int>(hamiltonian.rows()); }
};

/// Rejects zigzag (zigzag_spectral_use) and boundary nodes where rank P₊(A) ≠ 2.
FourSpinorProblem assemble_four_spinor(std::shared_ptr<const Mesh> mesh, const ValleyBoundary& vb);
FourSpinorProblem assemble_four_spinor(const Mesh& mesh, const ValleyBoundary& vb);

/// Armchair problem in the U_p U_ν frame, split into the DOF groups living
/// on transformed components (1, 2) and (3, 4).
struct ArmchairBlocks {
  SparseMatrix k_aa, k_ab, k_ba, k_bb;
  SparseMatrix m_aa, m_bb;
  std::vector<int> group_a;  ///< reduced DOF indices, vertex then component order
  std::vector<int> group_b;
  double diagonal_block_max = 0.0;       ///< max |K_aa|, |K_bb|
  double offdiagonal_mismatch = 0.0;     ///< max |K_ab - K_ba|
  double boundary_matrix_deviation = 0.0;  ///< max |Ã - diag(σ·t, σ·t)| over boundary nodes
};

/// Throws structure_mismatch when diagonal blocks are nonzero, off-diagonal
/// blocks differ beyond 1e-12 relative, or Ã deviates beyond 1e-12.
ArmchairBlocks permute_armchair(const FourSpinorProblem& problem);

struct SpectralEquivalenceReport {
  std::vector<double> four_spinor;  ///< ascending
  std::vector<double> reference;    ///< ascending
  double max_deviation = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Armchair: spec(K₄, M₄) = {±λ : λ ∈ spec(K, M)} with K the η = 0 first-order
/// problem on the same mesh. Dense; throws structure_mismatch beyond tol.
SpectralEquivalenceReport spectral_equivalence_check(const FourSpinorProblem& problem,
                                                     const AssembledProblem& two_spinor, double tol = 1e-10);

/// Infinite mass: spec(K₄, M₄) = spec(K_{η=0}) ∪ spec(K_{η=π}). Dense.
SpectralEquivalenceReport infinite_mass_union_check(const FourSpinorProblem& problem,
                                                    const AssembledProblem& eta_zero,
                                                    const AssembledProblem& eta_pi, double tol = 1e-10);

}  // namespace diracgap
