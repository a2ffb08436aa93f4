#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "decwave/mesh.hpp"

namespace decwave {

/// Circumcentric dual measures of a triangle mesh.
///
/// `dual_edge_length[e]` sums, over the triangles incident to `e`, the distance
/// from the triangle circumcenter to the edge midpoint. `dual_area[v]` sums, over
/// the triangles incident to `v`, the signed area of the quadrangle
/// (v, midpoint, circumcenter, midpoint) measured in the triangle's plane, so
/// the dual areas partition the surface even when circumcenters leave their
/// triangles.
struct DualMetrics {
  std::vector<double> primal_edge_length;
  std::vector<double> dual_edge_length;
  std::vector<double> dual_area;
  std::vector<Point> circumcenters;
  /// Signed circumcenter-to-midpoint distance per (triangle, local edge);
  /// positive when the circumcenter is on the triangle's side of the edge.
  std::vector<std::array<double, 3>> half_dual;
};

namespace detail {

// Circumcenter-to-midpoint distances below this fraction of the edge length are
// snapped to zero (right triangles put the circumcenter on the hypotenuse).
inline constexpr double kOnEdgeTolerance = 1e-10;

inline double signed_area(const Point& p, const Point& q, const Point& r, const Point& unit_normal) {
  return 0.5 * (q - p).cross(r - p).dot(unit_normal);
}

}  // namespace detail

inline DualMetrics dual_metrics(const SimplicialMesh& mesh) {
  DualMetrics m;
  const auto& verts = mesh.vertices();
  m.primal_edge_length.resize(mesh.edge_count());
  for (std::size_t e = 0; e < mesh.edge_count(); ++e)
    m.primal_edge_length[e] = (verts[mesh.edge(e).b] - verts[mesh.edge(e).a]).norm();
  m.dual_edge_length.assign(mesh.edge_count(), 0.0);
  m.dual_area.assign(mesh.vertex_count(), 0.0);
  m.circumcenters.resize(mesh.triangle_count());
  m.half_dual.resize(mesh.triangle_count());

  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangle(t);
    const Point& a = verts[tri[0]];
    const Point& b = verts[tri[1]];
    const Point& c = verts[tri[2]];
    Point cc;
    try {
      cc = circumcenter(a, b, c);
    } catch (const DegenerateTriangleError&) {
      throw DegenerateTriangleError("triangle " + std::to_string(t) + " is degenerate", 0);
    }
    m.circumcenters[t] = cc;
    const Point normal = (b - a).cross(c - a).normalized();

    std::array<Point, 3> mid;
    for (std::size_t k = 0; k < 3; ++k) mid[k] = 0.5 * (verts[tri[k]] + verts[tri[(k + 1) % 3]]);

    for (std::size_t k = 0; k < 3; ++k) {
      const Point& p = verts[tri[k]];
      const Point& q = verts[tri[(k + 1) % 3]];
      const Point inward = normal.cross(q - p).normalized();
      double s = (cc - mid[k]).dot(inward);
      if (std::abs(s) <= detail::kOnEdgeTolerance * (q - p).norm()) s = 0.0;
      m.half_dual[t][k] = s;
      m.dual_edge_length[mesh.triangle_edges()[t][k]] += std::abs(s);

      // Quadrangle at p: p -> mid(p,q) -> cc -> mid(r,p).
      const Point& mid_prev = mid[(k + 2) % 3];
      m.dual_area[tri[k]] +=
          detail::signed_area(p, mid[k], cc, normal) + detail::signed_area(p, cc, mid_prev, normal);
    }
  }
  return m;
}

enum class CircumcenterLocation { Interior, OnBoundary, Exterior };

struct WellCenteredReport {
  std::vector<CircumcenterLocation> location;
  std::size_t negative_contributions = 0;
  std::optional<std::size_t> worst_triangle;

  std::size_t count(CircumcenterLocation where) const {
    std::size_t n = 0;
    for (auto l : location) n += (l == where);
    return n;
  }
  bool has_exterior() const { return count(CircumcenterLocation::Exterior) > 0; }
};

inline const char* to_string(CircumcenterLocation l) {
  switch (l) {
    case CircumcenterLocation::Interior: return "interior";
    case CircumcenterLocation::OnBoundary: return "on_boundary";
    case CircumcenterLocation::Exterior: return "exterior";
  }
  return "?";
}

/// Classifies every triangle by where its circumcenter falls.
inline WellCenteredReport quality_report(const SimplicialMesh& mesh, const DualMetrics& metrics) {
  WellCenteredReport r;
  r.location.resize(mesh.triangle_count());
  double worst = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    double lowest = std::numeric_limits<double>::infinity();
    bool zero = false;
    for (std::size_t k = 0; k < 3; ++k) {
      const double s = metrics.half_dual[t][k] / metrics.primal_edge_length[mesh.triangle_edges()[t][k]];
      if (s < 0.0) ++r.negative_contributions;
      zero = zero || s == 0.0;
      lowest = std::min(lowest, s);
    }
    if (lowest < 0.0) {
      r.location[t] = CircumcenterLocation::Exterior;
      if (lowest < worst) {
        worst = lowest;
        r.worst_triangle = t;
      }
    } else {
      r.location[t] = zero ? CircumcenterLocation::OnBoundary : CircumcenterLocation::Interior;
    }
  }
  return r;
}

}  // namespace decwave
