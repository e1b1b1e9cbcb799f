#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "diracgap/geometry.hpp"

namespace diracgap {

/// Gauss point on a curved boundary edge; geometry is exact, not mesh-derived.
struct BoundaryQuadraturePoint {
  double xi = 0.0;         ///< local coordinate in [0, 1] along the edge
  double ds_weight = 0.0;  ///< Gauss weight × |dp/dθ| × Δθ
  double curvature = 0.0;
  Complex tangent{1.0, 0.0};
  Eigen::Vector2d normal = Eigen::Vector2d::Zero();
};

/// Boundary arc between two consecutive boundary vertices (counterclockwise).
struct BoundaryEdge {
  int v0 = 0;
  int v1 = 0;
  int triangle = -1;  ///< the single triangle owning the chord v0-v1
  double theta0 = 0.0;
  double theta1 = 0.0;
  double length = 0.0;  ///< exact arclength
  std::array<BoundaryQuadraturePoint, 3> quad{};
};

struct BoundaryNode {
  int vertex = 0;
  double theta = 0.0;
  Complex tangent{1.0, 0.0};
  double curvature = 0.0;
  double arc_weight = 0.0;  ///< half the arclength of the two adjacent edges
};

struct Mesh {
  Eigen::Matrix2Xd vertices;
  Eigen::Matrix3Xi triangles;
  std::vector<BoundaryNode> boundary;       ///< counterclockwise order
  std::vector<BoundaryEdge> boundary_edges; ///< edge i joins boundary[i] and boundary[i+1]
  std::vector<int> boundary_slot;           ///< per vertex: index into boundary, or -1
  double h = 0.0;       ///< requested target size
  double h_eff = 0.0;   ///< realized radial spacing, max radius / rings
  int rings = 0;
  std::string domain;

  int vertex_count() const { return static_cast<int>(vertices.cols()); }
  int triangle_count() const { return static_cast<int>(triangles.cols()); }
  int boundary_count() const { return static_cast<int>(boundary.size()); }
  int interior_count() const { return vertex_count() - boundary_count(); }
  bool on_boundary(int v) const { return boundary_slot[v] >= 0; }
};

struct MeshOptions {
  /// Reject meshes whose worst triangle exceeds this quality ratio
  /// (1 for an equilateral triangle).
  double max_aspect_ratio = 8.0;
};

/// Upper bound of max triangle diameter / h for meshes from triangulate()
/// on the curves this library builds.
inline constexpr double kMeshDiameterConstant = 2.5;

/// Mapped concentric-ring mesh: ring j of `rings` carries 6j vertices at
/// (j/rings) p(2πk/6j); rings = ceil(max radius / h).
/// Requires 0 < h < diameter/4.
Mesh triangulate(const BoundaryCurve& curve, double h, const MeshOptions& options = {});

/// All coordinates multiplied by factor; curvature and arclength data follow.
Mesh scaled(const Mesh& mesh, double factor);

/// Rigid rotation by angle about the origin; tangents pick up e^{i angle}.
Mesh rotated(const Mesh& mesh, double angle);

double triangle_area(const Mesh& mesh, int t);
double mesh_area(const Mesh& mesh);
double max_triangle_diameter(const Mesh& mesh);
double worst_aspect_ratio(const Mesh& mesh);

/// Gradients of the three barycentric functions of triangle t (columns).
Eigen::Matrix<double, 2, 3> barycentric_gradients(const Mesh& mesh, int t);

/// Throws degenerate_mesh if orientation or edge-sharing invariants fail.
void check_mesh(const Mesh& mesh);

}  // namespace diracgap
