#include "diracgap/fem.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

double element_area(const Mesh& mesh, int t) { return triangle_area(mesh, t); }

// Σ e_I* X e_J over local DOF pairs of a triangle, X supplied per vertex pair.
template <typename Coupling>
void add_element_pairs(const Mesh& mesh, const ConstrainedSpace& space, int t, Coupling&& coupling,
                       std::vector<Triplet>& out) {
  const auto& tri = mesh.triangles.col(t);
  for (int a = 0; a < 3; ++a) {
    const int va = tri(a);
    for (int b = 0; b < 3; ++b) {
      const int vb = tri(b);
      for (int i = 0; i < space.count[va]; ++i) {
        const int I = space.first[va] + i;
        for (int j = 0; j < space.count[vb]; ++j) {
          const int J = space.first[vb] + j;
          const Complex value = coupling(a, b, space.spinor[I], space.spinor[J]);
          if (value != Complex(0.0, 0.0)) out.emplace_back(I, J, value);
        }
      }
    }
  }
}

SparseMatrix from_triplets(int n, const std::vector<Triplet>& triplets) {
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return hermitian_part(m);
}

// Pairwise Pauli action σ·g on a spinor with an even number of components.
Eigen::VectorXcd sigma_dot_apply(const Eigen::Vector2d& g, const Eigen::VectorXcd& x) {
  const Complex gz(g.x(), g.y());
  Eigen::VectorXcd y(x.size());
  for (Eigen::Index p = 0; p + 1 < x.size(); p += 2) {
    y(p) = std::conj(gz) * x(p + 1);
    y(p + 1) = gz * x(p);
  }
  return y;
}

AssembledProblem make_problem(std::shared_ptr<const Mesh> mesh, const BoundaryFamily& family,
                              bool first_order) {
  // Re-derive β and B so a hand-built family cannot bypass the zigzag check.
  const BoundaryFamily checked = BoundaryFamily::from_eta(family.eta);
  AssembledProblem p;
  p.family = checked;
  p.mesh = std::move(mesh);
  p.first_order = first_order;
  p.space = two_spinor_space(*p.mesh, checked);
  p.reduction = p.space.reduction();
  p.mass = reduced_mass(*p.mesh, p.space);
  return p;
}

}  // namespace

SparseMatrix ConstrainedSpace::reduction() const {
  const int nv = static_cast<int>(first.size());
  std::vector<Triplet> triplets;
  for (int I = 0; I < size(); ++I)
    for (int c = 0; c < components; ++c)
      if (spinor[I](c) != Complex(0.0, 0.0))
        triplets.emplace_back(components * vertex[I] + c, I, spinor[I](c));
  SparseMatrix r(components * nv, size());
  r.setFromTriplets(triplets.begin(), triplets.end());
  r.makeCompressed();
  return r;
}

Vector ConstrainedSpace::expand(const Vector& reduced) const {
  if (reduced.size() != size()) throw Error(Errc::invalid_argument, "reduced vector has the wrong length");
  const int nv = static_cast<int>(first.size());
  Vector full = Vector::Zero(components * nv);
  for (int I = 0; I < size(); ++I) full.segment(components * vertex[I], components) += reduced(I) * spinor[I];
  return full;
}

ConstrainedSpace two_spinor_space(const Mesh& mesh, const BoundaryFamily& family) {
  ConstrainedSpace space;
  space.components = 2;
  const int nv = mesh.vertex_count();
  space.first.resize(nv);
  space.count.resize(nv);
  for (int v = 0; v < nv; ++v) {
    space.first[v] = space.size();
    const int slot = mesh.boundary_slot[v];
    if (slot < 0) {
      space.count[v] = 2;
      for (int c = 0; c < 2; ++c) {
        space.vertex.push_back(v);
        space.spinor.push_back(Eigen::Vector2cd::Unit(c));
      }
    } else {
      space.count[v] = 1;
      space.vertex.push_back(v);
      Eigen::Vector2cd e;
      e << 1.0, family.beta * mesh.boundary[slot].tangent;
      space.spinor.push_back(e);
    }
  }
  return space;
}

SparseMatrix reduced_mass(const Mesh& mesh, const ConstrainedSpace& space) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.triangle_count()) * 9 * 4);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = element_area(mesh, t);
    add_element_pairs(mesh, space, t,
                      [&](int a, int b, const Eigen::VectorXcd& ei, const Eigen::VectorXcd& ej) {
                        const double m = (a == b ? 2.0 : 1.0) * area / 12.0;
                        return m * ei.dot(ej);
                      },
                      triplets);
  }
  return from_triplets(space.size(), triplets);
}

SparseMatrix reduced_stiffness(const Mesh& mesh, const ConstrainedSpace& space) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.triangle_count()) * 9 * 4);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = element_area(mesh, t);
    const Eigen::Matrix<double, 2, 3> g = barycentric_gradients(mesh, t);
    add_element_pairs(mesh, space, t,
                      [&](int a, int b, const Eigen::VectorXcd& ei, const Eigen::VectorXcd& ej) {
                        return area * g.col(a).dot(g.col(b)) * ei.dot(ej);
                      },
                      triplets);
  }
  return from_triplets(space.size(), triplets);
}

SparseMatrix reduced_dirac(const Mesh& mesh, const ConstrainedSpace& space) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.triangle_count()) * 9 * 4);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = element_area(mesh, t);
    const Eigen::Matrix<double, 2, 3> g = barycentric_gradients(mesh, t);
    add_element_pairs(mesh, space, t,
                      [&](int a, int b, const Eigen::VectorXcd& ei, const Eigen::VectorXcd& ej) {
                        // (|T|/6) e_I* [i σ·∇λ_a - i σ·∇λ_b] e_J
                        const Eigen::VectorXcd diff =
                            sigma_dot_apply(g.col(a), ej) - sigma_dot_apply(g.col(b), ej);
                        return (area / 6.0) * kI * ei.dot(diff);
                      },
                      triplets);
  }
  return from_triplets(space.size(), triplets);
}

AssembledProblem assemble(const Mesh& mesh, const BoundaryFamily& family) {
  return assemble(std::make_shared<const Mesh>(mesh), family);
}

AssembledProblem assemble(std::shared_ptr<const Mesh> mesh_ptr, const BoundaryFamily& family) {
  AssembledProblem p = make_problem(std::move(mesh_ptr), family, false);
  const Mesh& mesh = *p.mesh;
  const ConstrainedSpace& space = p.space;
  const double beta2 = p.family.beta * p.family.beta;
  const double tangential = 1.0 - beta2;

  std::vector<Triplet> triplets;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const int I = space.first[e.v0];
    const int J = space.first[e.v1];
    const Complex c0 = space.spinor[I](0);
    const Complex c1 = space.spinor[J](0);
    // β² ∮ κ u₁* v₁ ds with traces linear in the edge coordinate.
    double m00 = 0.0, m01 = 0.0, m11 = 0.0;
    for (const auto& q : e.quad) {
      const double n0 = 1.0 - q.xi, n1 = q.xi;
      const double w = q.ds_weight * q.curvature;
      m00 += w * n0 * n0;
      m01 += w * n0 * n1;
      m11 += w * n1 * n1;
    }
    triplets.emplace_back(I, I, beta2 * m00 * std::norm(c0));
    triplets.emplace_back(J, J, beta2 * m11 * std::norm(c1));
    triplets.emplace_back(I, J, beta2 * m01 * std::conj(c0) * c1);
    triplets.emplace_back(J, I, beta2 * m01 * std::conj(c1) * c0);
    // i(1-β²) ∮ u₁* ∂_s v₁ ds, antisymmetrized per edge: i(1-β²)/2 [[0, 1], [-1, 0]].
    if (tangential != 0.0) {
      triplets.emplace_back(I, J, 0.5 * tangential * kI * std::conj(c0) * c1);
      triplets.emplace_back(J, I, -0.5 * tangential * kI * std::conj(c1) * c0);
    }
  }
  SparseMatrix boundary_term(space.size(), space.size());
  boundary_term.setFromTriplets(triplets.begin(), triplets.end());
  p.form = hermitian_part(reduced_stiffness(mesh, space) + boundary_term);
  return p;
}

AssembledProblem assemble_first_order(const Mesh& mesh, const BoundaryFamily& family) {
  return assemble_first_order(std::make_shared<const Mesh>(mesh), family);
}

AssembledProblem assemble_first_order(std::shared_ptr<const Mesh> mesh_ptr, const BoundaryFamily& family) {
  AssembledProblem p = make_problem(std::move(mesh_ptr), family, true);
  p.form = reduced_dirac(*p.mesh, p.space);
  return p;
}

RealSparseMatrix scalar_stiffness(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = element_area(mesh, t);
    const Eigen::Matrix<double, 2, 3> g = barycentric_gradients(mesh, t);
    const auto& tri = mesh.triangles.col(t);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) triplets.emplace_back(tri(a), tri(b), area * g.col(a).dot(g.col(b)));
  }
  RealSparseMatrix k(mesh.vertex_count(), mesh.vertex_count());
  k.setFromTriplets(triplets.begin(), triplets.end());
  return k;
}

RealSparseMatrix scalar_mass(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = element_area(mesh, t);
    const auto& tri = mesh.triangles.col(t);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) triplets.emplace_back(tri(a), tri(b), (a == b ? 2.0 : 1.0) * area / 12.0);
  }
  RealSparseMatrix m(mesh.vertex_count(), mesh.vertex_count());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

FilteredSpectrum filter_first_order(const std::vector<double>& first_order_eigenvalues,
                                    const std::vector<double>& squared_ritz_values,
                                    double relative_tolerance) {
  FilteredSpectrum out;
  if (squared_ritz_values.empty()) {
    out.out_of_window = static_cast<int>(first_order_eigenvalues.size());
    return out;
  }
  const double window = *std::max_element(squared_ritz_values.begin(), squared_ritz_values.end()) *
                        (1.0 + relative_tolerance);
  for (double lambda : first_order_eigenvalues) {
    const double sq = lambda * lambda;
    if (sq > window) {
      ++out.out_of_window;
      continue;
    }
    bool matched = false;
    for (double mu : squared_ritz_values)
      if (std::abs(sq - mu) <= relative_tolerance * std::abs(mu)) matched = true;
    (matched ? out.accepted : out.rejected).push_back(lambda);
  }
  return out;
}

void write_triplets(std::ostream& os, const SparseMatrix& a) {
  os.precision(17);
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
}

}  // namespace diracgap
