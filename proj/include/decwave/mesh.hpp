#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "decwave/error.hpp"

namespace decwave {

using Point = Eigen::Vector3d;
using Triangle = std::array<std::size_t, 3>;

/// Undirected edge stored in canonical (min, max) order.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(std::size_t i, std::size_t j) { return i < j ? Edge{i, j} : Edge{j, i}; }

/// Triangles incident to one edge: one for boundary edges, two for interior edges.
struct EdgeTriangles {
  std::array<std::size_t, 2> triangles{};
  std::uint8_t count = 0;

  bool is_boundary() const { return count == 1; }
  std::span<const std::size_t> view() const { return {triangles.data(), count}; }
};

namespace detail {

// Relative threshold on |u x v| / (|u| |v|) below which a triangle is treated as collinear.
inline constexpr double kCollinearTolerance = 1e-12;

inline bool nearly_collinear(const Point& u, const Point& v) {
  const double scale = u.norm() * v.norm();
  return scale == 0.0 || u.cross(v).norm() <= kCollinearTolerance * scale;
}

}  // namespace detail

/// Circumcenter of a triangle embedded in 3-space. Lies in the triangle's plane.
inline Point circumcenter(const Point& a, const Point& b, const Point& c) {
  const Point u = b - a;
  const Point v = c - a;
  if (detail::nearly_collinear(u, v)) throw DegenerateTriangleError("collinear triangle vertices", 0);
  const Point w = u.cross(v);
  return a + (u.squaredNorm() * v.cross(w) + v.squaredNorm() * w.cross(u)) / (2.0 * w.squaredNorm());
}

inline double triangle_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

/// Triangle surface mesh in 3-space with derived edges and adjacency.
///
/// Construction validates the complex: indices in range, no degenerate
/// triangles, every edge shared by at most two triangles, and every vertex
/// referenced by at least one triangle. Edges are numbered in lexicographic
/// order of their canonical (min, max) vertex pair, so two meshes built from
/// the same input have identical edge numbering.
class SimplicialMesh {
 public:
  SimplicialMesh() = default;

  /// `face_lines`, when non-empty, gives the source line of each triangle and is
  /// only used to annotate errors.
  SimplicialMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
                 std::span<const std::size_t> face_lines = {})
      : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    build(face_lines);
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeTriangles>& edge_triangles() const { return edge_triangles_; }
  const std::vector<std::vector<std::size_t>>& vertex_edges() const { return vertex_edges_; }

  /// `triangle_edges()[t][k]` is the edge joining local vertices k and (k+1)%3 of triangle t.
  const std::vector<std::array<std::size_t, 3>>& triangle_edges() const { return triangle_edges_; }

  const Point& vertex(std::size_t v) const { return vertices_[v]; }
  const Triangle& triangle(std::size_t t) const { return triangles_[t]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  bool is_boundary_vertex(std::size_t v) const { return boundary_vertex_[v]; }

  std::vector<std::size_t> boundary_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (boundary_vertex_[v]) out.push_back(v);
    return out;
  }

  /// Index of `e` in the edge list, or edge_count() if absent.
  std::size_t find_edge(std::size_t i, std::size_t j) const {
    const Edge key = make_edge(i, j);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    return (it != edges_.end() && *it == key) ? static_cast<std::size_t>(it - edges_.begin()) : edges_.size();
  }

  /// Vertex at the other end of edge `e` from `v`.
  std::size_t opposite(std::size_t e, std::size_t v) const { return edges_[e].a == v ? edges_[e].b : edges_[e].a; }

  double total_area() const {
    double sum = 0.0;
    for (const auto& t : triangles_) sum += triangle_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    return sum;
  }

  /// Vertex closest to `p` (lowest index on ties).
  std::size_t nearest_vertex(const Point& p) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      const double d = (vertices_[v] - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    return best;
  }

 private:
  void build(std::span<const std::size_t> face_lines) {
    auto line_of = [&](std::size_t t) -> std::size_t { return t < face_lines.size() ? face_lines[t] : 0; };
    const std::size_t nv = vertices_.size();
    if (triangles_.empty()) throw MeshError("mesh has no triangles", 0);

    std::vector<Edge> all;
    all.reserve(3 * triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      const Triangle& tri = triangles_[t];
      for (std::size_t k = 0; k < 3; ++k) {
        if (tri[k] >= nv)
          throw MeshError("triangle " + std::to_string(t) + " references vertex " + std::to_string(tri[k]) +
                              " but the mesh has " + std::to_string(nv) + " vertices",
                          line_of(t));
      }
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
        throw DegenerateTriangleError("triangle " + std::to_string(t) + " repeats a vertex", line_of(t));
      if (detail::nearly_collinear(vertices_[tri[1]] - vertices_[tri[0]], vertices_[tri[2]] - vertices_[tri[0]]))
        throw DegenerateTriangleError("triangle " + std::to_string(t) + " has zero area", line_of(t));
      for (std::size_t k = 0; k < 3; ++k) all.push_back(make_edge(tri[k], tri[(k + 1) % 3]));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    edges_ = std::move(all);

    edge_triangles_.assign(edges_.size(), EdgeTriangles{});
    triangle_edges_.resize(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t e = find_edge(triangles_[t][k], triangles_[t][(k + 1) % 3]);
        EdgeTriangles& adj = edge_triangles_[e];
        if (adj.count == 2)
          throw NonManifoldError("edge (" + std::to_string(edges_[e].a) + ", " + std::to_string(edges_[e].b) +
                                     ") is shared by more than two triangles",
                                 line_of(t));
        adj.triangles[adj.count++] = t;
        triangle_edges_[t][k] = e;
      }
    }

    vertex_edges_.assign(nv, {});
    boundary_vertex_.assign(nv, false);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      vertex_edges_[edges_[e].a].push_back(e);
      vertex_edges_[edges_[e].b].push_back(e);
      if (edge_triangles_[e].is_boundary()) {
        boundary_vertex_[edges_[e].a] = true;
        boundary_vertex_[edges_[e].b] = true;
      }
    }
    for (std::size_t v = 0; v < nv; ++v)
      if (vertex_edges_[v].empty()) throw MeshError("vertex " + std::to_string(v) + " is not used by any triangle", 0);
  }

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<EdgeTriangles> edge_triangles_;
  std::vector<std::vector<std::size_t>> vertex_edges_;
  std::vector<std::array<std::size_t, 3>> triangle_edges_;
  std::vector<bool> boundary_vertex_;
};

}  // namespace decwave
