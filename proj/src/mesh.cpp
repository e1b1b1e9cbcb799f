#include "diracgap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 3-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 3> kEdgeNodes = {0.5 - 0.3872983346207417, 0.5,
                                              0.5 + 0.3872983346207417};
constexpr std::array<double, 3> kEdgeWeights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

int ring_start(int j) { return j == 0 ? 0 : 1 + 3 * (j - 1) * j; }

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

double quality(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double ab = (b - a).norm(), bc = (c - b).norm(), ca = (a - c).norm();
  const double longest = std::max({ab, bc, ca});
  const double area = std::abs(signed_area(a, b, c));
  return longest * (ab + bc + ca) / (4.0 * std::sqrt(3.0) * area);
}

using EdgeOwners = std::map<std::pair<int, int>, std::vector<int>>;

EdgeOwners edge_owners(const Mesh& mesh) {
  EdgeOwners owners;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles.col(t);
    for (int a = 0; a < 3; ++a) {
      const int u = tri(a), v = tri((a + 1) % 3);
      owners[{std::min(u, v), std::max(u, v)}].push_back(t);
    }
  }
  return owners;
}

void link_boundary_triangles(Mesh& mesh) {
  const EdgeOwners owners = edge_owners(mesh);
  for (auto& e : mesh.boundary_edges) {
    const auto it = owners.find({std::min(e.v0, e.v1), std::max(e.v0, e.v1)});
    if (it != owners.end() && it->second.size() == 1) e.triangle = it->second.front();
  }
}

}  // namespace

Mesh triangulate(const BoundaryCurve& curve, double h, const MeshOptions& options) {
  const double diam = diameter(curve);
  if (!(h > 0.0) || !(h < diam / 4.0)) {
    std::ostringstream os;
    os << "mesh size h=" << h << " must satisfy 0 < h < diameter/4 = " << diam / 4.0;
    throw Error(Errc::invalid_argument, os.str());
  }
  const double r_max = curve.max_radius();
  const int rings = static_cast<int>(std::ceil(r_max / h - 1e-12));

  Mesh mesh;
  mesh.h = h;
  mesh.rings = rings;
  mesh.h_eff = r_max / rings;
  mesh.domain = curve.id();

  const int nv = ring_start(rings + 1);
  mesh.vertices.resize(2, nv);
  mesh.vertices.col(0).setZero();
  for (int j = 1; j <= rings; ++j) {
    const int count = 6 * j;
    const double rho = static_cast<double>(j) / rings;
    for (int k = 0; k < count; ++k)
      mesh.vertices.col(ring_start(j) + k) = rho * curve.position(kTwoPi * k / count);
  }

  std::vector<Eigen::Vector3i> tris;
  tris.reserve(6 * rings * rings);
  for (int k = 0; k < 6; ++k) tris.emplace_back(0, 1 + k, 1 + (k + 1) % 6);
  for (int j = 2; j <= rings; ++j) {
    const int ni = 6 * (j - 1), no = 6 * j;
    const int si = ring_start(j - 1), so = ring_start(j);
    int i = 0, o = 0;
    while (i < ni || o < no) {
      // Advance whichever ring has the smaller next angle: (o+1)/no vs (i+1)/ni.
      const bool outer = i >= ni || (o < no && static_cast<long>(o + 1) * ni <= static_cast<long>(i + 1) * no);
      if (outer) {
        tris.emplace_back(si + i % ni, so + o, so + (o + 1) % no);
        ++o;
      } else {
        tris.emplace_back(si + i, so + o % no, si + (i + 1) % ni);
        ++i;
      }
    }
  }
  mesh.triangles.resize(3, static_cast<int>(tris.size()));
  for (std::size_t t = 0; t < tris.size(); ++t) mesh.triangles.col(static_cast<int>(t)) = tris[t];

  // Boundary annotations from the exact parametrization.
  const int nb = 6 * rings;
  const int sb = ring_start(rings);
  mesh.boundary_slot.assign(nv, -1);
  mesh.boundary.resize(nb);
  for (int k = 0; k < nb; ++k) {
    const double theta = kTwoPi * k / nb;
    const CurvePoint cp = curve.evaluate(theta);
    BoundaryNode& node = mesh.boundary[k];
    node.vertex = sb + k;
    node.theta = theta;
    node.tangent = cp.tangent;
    node.curvature = cp.curvature;
    mesh.boundary_slot[sb + k] = k;
  }
  mesh.boundary_edges.resize(nb);
  for (int k = 0; k < nb; ++k) {
    BoundaryEdge& e = mesh.boundary_edges[k];
    e.v0 = sb + k;
    e.v1 = sb + (k + 1) % nb;
    e.theta0 = kTwoPi * k / nb;
    e.theta1 = kTwoPi * (k + 1) / nb;
    const double dtheta = e.theta1 - e.theta0;
    e.length = 0.0;
    for (std::size_t q = 0; q < 3; ++q) {
      const CurvePoint cp = curve.evaluate(e.theta0 + kEdgeNodes[q] * dtheta);
      BoundaryQuadraturePoint& bq = e.quad[q];
      bq.xi = kEdgeNodes[q];
      bq.ds_weight = kEdgeWeights[q] * cp.speed * dtheta;
      bq.curvature = cp.curvature;
      bq.tangent = cp.tangent;
      bq.normal = cp.normal;
    }
    e.length = arclength(curve, e.theta0, e.theta1);
  }
  for (int k = 0; k < nb; ++k)
    mesh.boundary[k].arc_weight =
        0.5 * (mesh.boundary_edges[k].length + mesh.boundary_edges[(k + nb - 1) % nb].length);

  link_boundary_triangles(mesh);
  check_mesh(mesh);
  const double worst = worst_aspect_ratio(mesh);
  if (worst > options.max_aspect_ratio) {
    std::ostringstream os;
    os << "worst triangle aspect ratio " << worst << " exceeds limit " << options.max_aspect_ratio;
    throw Error(Errc::degenerate_mesh, os.str());
  }
  return mesh;
}

Mesh scaled(const Mesh& mesh, double factor) {
  if (!(factor > 0.0)) throw Error(Errc::invalid_argument, "scale factor must be positive");
  Mesh out = mesh;
  out.vertices *= factor;
  out.h *= factor;
  out.h_eff *= factor;
  for (auto& node : out.boundary) {
    node.curvature /= factor;
    node.arc_weight *= factor;
  }
  for (auto& e : out.boundary_edges) {
    e.length *= factor;
    for (auto& q : e.quad) {
      q.ds_weight *= factor;
      q.curvature /= factor;
    }
  }
  std::ostringstream os;
  os.precision(12);
  os << mesh.domain << "*" << factor;
  out.domain = os.str();
  return out;
}

Mesh rotated(const Mesh& mesh, double angle) {
  Mesh out = mesh;
  const Eigen::Matrix2d rot = Eigen::Rotation2Dd(angle).toRotationMatrix();
  out.vertices = rot * mesh.vertices;
  const Complex phase = std::polar(1.0, angle);
  for (auto& node : out.boundary) node.tangent *= phase;
  for (auto& e : out.boundary_edges)
    for (auto& q : e.quad) {
      q.tangent *= phase;
      q.normal = rot * q.normal;
    }
  std::ostringstream os;
  os.precision(12);
  os << mesh.domain << "@" << angle;
  out.domain = os.str();
  return out;
}

double triangle_area(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles.col(t);
  return signed_area(mesh.vertices.col(tri(0)), mesh.vertices.col(tri(1)), mesh.vertices.col(tri(2)));
}

double mesh_area(const Mesh& mesh) {
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) sum += triangle_area(mesh, t);
  return sum;
}

double max_triangle_diameter(const Mesh& mesh) {
  double d = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles.col(t);
    for (int a = 0; a < 3; ++a)
      d = std::max(d, (mesh.vertices.col(tri(a)) - mesh.vertices.col(tri((a + 1) % 3))).norm());
  }
  return d;
}

double worst_aspect_ratio(const Mesh& mesh) {
  double worst = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles.col(t);
    worst = std::max(worst, quality(mesh.vertices.col(tri(0)), mesh.vertices.col(tri(1)),
                                    mesh.vertices.col(tri(2))));
  }
  return worst;
}

Eigen::Matrix<double, 2, 3> barycentric_gradients(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles.col(t);
  const Eigen::Vector2d p0 = mesh.vertices.col(tri(0));
  const Eigen::Vector2d p1 = mesh.vertices.col(tri(1));
  const Eigen::Vector2d p2 = mesh.vertices.col(tri(2));
  const double twice_area = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p1.y() - p0.y()) * (p2.x() - p0.x());
  Eigen::Matrix<double, 2, 3> g;
  // ∇λ_a = rot(-90°)(p_c - p_b) / (2|T|) for the opposite edge b -> c.
  g.col(0) << (p1.y() - p2.y()) / twice_area, (p2.x() - p1.x()) / twice_area;
  g.col(1) << (p2.y() - p0.y()) / twice_area, (p0.x() - p2.x()) / twice_area;
  g.col(2) << (p0.y() - p1.y()) / twice_area, (p1.x() - p0.x()) / twice_area;
  return g;
}

void check_mesh(const Mesh& mesh) {
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    if (!(triangle_area(mesh, t) > 0.0)) {
      std::ostringstream os;
      os << "triangle " << t << " is not positively oriented";
      throw Error(Errc::degenerate_mesh, os.str());
    }
  }
  const EdgeOwners owners = edge_owners(mesh);
  std::map<std::pair<int, int>, int> boundary_owner;
  for (const auto& [edge, tris] : owners) {
    const bool on_boundary = mesh.boundary_slot[edge.first] >= 0 && mesh.boundary_slot[edge.second] >= 0;
    if (tris.size() == 1) {
      if (!on_boundary) throw Error(Errc::degenerate_mesh, "interior edge owned by a single triangle");
      boundary_owner[edge] = tris.front();
    } else if (tris.size() != 2) {
      throw Error(Errc::degenerate_mesh, "edge shared by more than two triangles");
    }
  }
  if (boundary_owner.size() != mesh.boundary_edges.size())
    throw Error(Errc::degenerate_mesh, "boundary edge count does not match the boundary vertex cycle");
  for (const auto& e : mesh.boundary_edges) {
    const auto it = boundary_owner.find({std::min(e.v0, e.v1), std::max(e.v0, e.v1)});
    if (it == boundary_owner.end())
      throw Error(Errc::degenerate_mesh, "boundary arc without a matching mesh edge");
    if (e.triangle != it->second)
      throw Error(Errc::degenerate_mesh, "boundary arc linked to the wrong triangle");
  }
}

}  // namespace diracgap
