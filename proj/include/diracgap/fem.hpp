#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diracgap/boundary.hpp"
#include "diracgap/linalg.hpp"
#include "diracgap/mesh.hpp"

namespace diracgap {

/// Piecewise-linear spinor space with the boundary condition imposed nodally.
///
/// Each reduced DOF is one vertex times a fixed nodal spinor: interior
/// vertices carry the unit spinors, boundary vertices carry a basis of
/// range P₊ (for the η family that is the single vector (1, β t)).
struct ConstrainedSpace {
  int components = 2;
  std::vector<int> first;            ///< per vertex
  std::vector<int> count;            ///< per vertex
  std::vector<int> vertex;           ///< per reduced DOF
  std::vector<Eigen::VectorXcd> spinor;  ///< per reduced DOF, length = components

  int size() const { return static_cast<int>(vertex.size()); }

  /// Reduced -> full nodal map R; full index is components * v + c.
  SparseMatrix reduction() const;

  /// Full nodal vector R x.
  Vector expand(const Vector& reduced) const;
};

ConstrainedSpace two_spinor_space(const Mesh& mesh, const BoundaryFamily& family);

/// Sparse Hermitian pencil on a constrained space.
///
/// For assemble(), `form` discretizes q_η(u) = ‖D_η u‖²; for
/// assemble_first_order() it is the symmetrized first-order form
/// ½[(φ, Tu) + (Tφ, u)]. `mass` is the L² Gram matrix in both cases.
struct AssembledProblem {
  SparseMatrix form;
  SparseMatrix mass;
  SparseMatrix reduction;
  ConstrainedSpace space;
  BoundaryFamily family;
  std::shared_ptr<const Mesh> mesh;
  bool first_order = false;

  int dimension() const { return static_cast<int>(form.rows()); }
  double h() const { return mesh->h; }
  const std::string& domain() const { return mesh->domain; }
  int interior_vertices() const { return mesh->interior_count(); }
  int boundary_vertices() const { return mesh->boundary_count(); }
};

/// Squared-operator form
///   q_η(u, v) = (∇u, ∇v) + ∮ [β² κ u₁* v₁ + i(1 - β²) u₁* ∂_s v₁] ds
/// with exact κ and ds from the mesh's boundary quadrature. Throws
/// near_zigzag through the family; both matrices are Hermitian bit-for-bit.
AssembledProblem assemble(const Mesh& mesh, const BoundaryFamily& family);
AssembledProblem assemble(std::shared_ptr<const Mesh> mesh, const BoundaryFamily& family);

/// First-order (indefinite) pencil; experimental, see filter_first_order().
AssembledProblem assemble_first_order(const Mesh& mesh, const BoundaryFamily& family);
AssembledProblem assemble_first_order(std::shared_ptr<const Mesh> mesh, const BoundaryFamily& family);

/// Building blocks shared with the four-spinor assembly.
SparseMatrix reduced_mass(const Mesh& mesh, const ConstrainedSpace& space);
SparseMatrix reduced_stiffness(const Mesh& mesh, const ConstrainedSpace& space);
/// ½[(φ, Hu) + (Hφ, u)] with H = T on each consecutive pair of components.
SparseMatrix reduced_dirac(const Mesh& mesh, const ConstrainedSpace& space);

/// Scalar P1 matrices on the full vertex set.
RealSparseMatrix scalar_stiffness(const Mesh& mesh);
RealSparseMatrix scalar_mass(const Mesh& mesh);

/// Eigenvalues λ of the first-order pencil accepted because λ² lies within
/// relative tolerance of a squared-form Ritz value.
struct FilteredSpectrum {
  std::vector<double> accepted;
  std::vector<double> rejected;
  int out_of_window = 0;  ///< λ² beyond the largest Ritz value; not judged
};

FilteredSpectrum filter_first_order(const std::vector<double>& first_order_eigenvalues,
                                    const std::vector<double>& squared_ritz_values,
                                    double relative_tolerance);

/// Writes "row col re im" lines, 0-indexed, one stored entry per line.
void write_triplets(std::ostream& os, const SparseMatrix& a);

}  // namespace diracgap
