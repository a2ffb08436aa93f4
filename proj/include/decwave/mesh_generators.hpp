#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "decwave/mesh.hpp"

namespace decwave {

/// nx-by-ny grid of square cells with spacing h in the z=0 plane, each cell
/// split along its (i,j)-(i+1,j+1) diagonal. Vertex (i, j) has index j*(nx+1)+i.
inline SimplicialMesh rectangular_grid(std::size_t nx, std::size_t ny, double h, const Point& origin = Point::Zero()) {
  std::vector<Point> verts;
  verts.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i)
      verts.push_back(origin + Point(static_cast<double>(i) * h, static_cast<double>(j) * h, 0.0));
  std::vector<Triangle> tris;
  tris.reserve(2 * nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t v00 = j * (nx + 1) + i;
      const std::size_t v10 = v00 + 1;
      const std::size_t v01 = v00 + nx + 1;
      const std::size_t v11 = v01 + 1;
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
    }
  }
  return SimplicialMesh(std::move(verts), std::move(tris));
}

/// n-by-n grid covering [0, n h]^2.
inline SimplicialMesh square_grid(std::size_t n, double h) { return rectangular_grid(n, n, h); }

/// Six equilateral triangles of side `side` around a center vertex (index 0).
inline SimplicialMesh hexagon_fan(double side = 1.0) {
  std::vector<Point> verts{Point::Zero()};
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    verts.emplace_back(side * std::cos(a), side * std::sin(a), 0.0);
  }
  std::vector<Triangle> tris;
  for (std::size_t k = 0; k < 6; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 6});
  return SimplicialMesh(std::move(verts), std::move(tris));
}

/// Geodesic sphere: an icosahedron subdivided `levels` times and projected
/// onto the sphere. Vertex count is 10 * 4^levels + 2.
inline SimplicialMesh icosphere(std::size_t levels, double radius = 1.0) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point> verts{{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                           {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<Triangle> tris{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
                             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
                             {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (std::size_t level = 0; level < levels; ++level) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
    auto mid = [&](std::size_t a, std::size_t b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      verts.push_back((verts[a] + verts[b]).normalized());
      midpoint.emplace(key, verts.size() - 1);
      return verts.size() - 1;
    };
    std::vector<Triangle> next;
    next.reserve(4 * tris.size());
    for (const auto& t : tris) {
      const std::size_t ab = mid(t[0], t[1]);
      const std::size_t bc = mid(t[1], t[2]);
      const std::size_t ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  for (auto& v : verts) v *= radius;
  return SimplicialMesh(std::move(verts), std::move(tris));
}

}  // namespace decwave
