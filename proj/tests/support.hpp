#pragma once

// Test-only oracles and mesh fixtures. Nothing here calls into the operator
// assembly or the steppers; it recomputes expected values independently.

#include <cmath>
#include <cstddef>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "decwave/mesh.hpp"
#include "decwave/mesh_generators.hpp"

namespace decwave::fixtures {

/// Square grid with spacing h whose vertices are randomly displaced by up to
/// `jitter * h` in-plane (interior vertices only). Triangles stay valid for jitter < 0.25.
inline SimplicialMesh jittered_grid(std::size_t n, double h, double jitter, unsigned seed) {
  const SimplicialMesh base = square_grid(n, h);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-jitter * h, jitter * h);
  std::vector<Point> verts = base.vertices();
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (!base.is_boundary_vertex(v)) verts[v] += Point(d(rng), d(rng), 0.0);
  return SimplicialMesh(verts, base.triangles());
}

/// Equilateral triangle lattice (n x n rhombus of 2n^2 triangles, side h) with
/// interior vertices displaced by up to `jitter * h`. Small jitter keeps every
/// angle acute, so the mesh stays well-centered.
inline SimplicialMesh triangle_lattice(std::size_t n, double h, double jitter = 0.0, unsigned seed = 1) {
  std::vector<Point> verts;
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i <= n; ++i)
      verts.emplace_back(h * (static_cast<double>(i) + 0.5 * static_cast<double>(j)),
                         h * std::sqrt(3.0) / 2 * static_cast<double>(j), 0.0);
  std::vector<Triangle> tris;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = j * (n + 1) + i;
      tris.push_back({a, a + 1, a + n + 1});
      tris.push_back({a + 1, a + n + 2, a + n + 1});
    }
  SimplicialMesh base(verts, tris);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-jitter * h, jitter * h);
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (!base.is_boundary_vertex(v)) verts[v] += Point(d(rng), d(rng), 0.0);
  return SimplicialMesh(std::move(verts), std::move(tris));
}

/// Curved open surface: a grid lifted onto z = a sin(pi x) sin(pi y).
inline SimplicialMesh bumpy_patch(std::size_t n, double amplitude) {
  const SimplicialMesh base = square_grid(n, 1.0 / static_cast<double>(n));
  std::vector<Point> verts = base.vertices();
  for (auto& p : verts) p.z() = amplitude * std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  return SimplicialMesh(verts, base.triangles());
}

inline SimplicialMesh single_triangle(const Point& a, const Point& b, const Point& c) {
  return SimplicialMesh({a, b, c}, {{0, 1, 2}});
}

inline SimplicialMesh equilateral_triangle(double side = 1.0) {
  return single_triangle(Point(0, 0, 0), Point(side, 0, 0), Point(side / 2, side * std::sqrt(3.0) / 2, 0));
}

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Classical leapfrog update for u_tt = c^2 (5-point Laplacian) on an (n+1)x(n+1)
/// vertex grid indexed j*(n+1)+i. Boundary vertices are held at zero.
class Leapfrog5 {
 public:
  Leapfrog5(std::size_t n, double h, double c, double dt) : n_(n), r2_((c * dt / h) * (c * dt / h)) {}

  std::vector<double> step(const std::vector<double>& prev, const std::vector<double>& prev2) const {
    const std::size_t w = n_ + 1;
    std::vector<double> next(prev.size(), 0.0);
    for (std::size_t j = 1; j < n_; ++j) {
      for (std::size_t i = 1; i < n_; ++i) {
        const std::size_t k = j * w + i;
        const double lap = prev[k + 1] + prev[k - 1] + prev[k + w] + prev[k - w] - 4.0 * prev[k];
        next[k] = 2.0 * prev[k] - prev2[k] + r2_ * lap;
      }
    }
    return next;
  }

 private:
  std::size_t n_;
  double r2_;
};

/// Per-vertex Laplacian from the cotangent formulas, without circumcenters.
/// Per triangle, the circumcenter-to-midpoint distance of an edge is
/// (l/2) cot(opposite angle); the dual edge length sums its absolute values
/// and the vertex cell collects the signed areas l^2 cot / 8.
inline std::vector<double> cotan_laplacian(const SimplicialMesh& mesh, const std::vector<double>& f) {
  const std::size_t n = mesh.vertex_count();
  std::vector<double> area(n, 0.0);
  std::vector<std::vector<std::pair<std::size_t, double>>> nbr(n);
  auto add_weight = [&](std::size_t i, std::size_t j, double w) {
    for (auto& [k, acc] : nbr[i])
      if (k == j) {
        acc += w;
        return;
      }
    nbr[i].emplace_back(j, w);
  };
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t o = t[k], p = t[(k + 1) % 3], q = t[(k + 2) % 3];
      const Point u = mesh.vertex(p) - mesh.vertex(o), v = mesh.vertex(q) - mesh.vertex(o);
      const double cot = u.dot(v) / u.cross(v).norm();
      const double len2 = (mesh.vertex(q) - mesh.vertex(p)).squaredNorm();
      add_weight(p, q, 0.5 * std::abs(cot));
      add_weight(q, p, 0.5 * std::abs(cot));
      area[p] += len2 * cot / 8.0;
      area[q] += len2 * cot / 8.0;
    }
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& [j, w] : nbr[i]) s += w * (f[j] - f[i]);
    out[i] = s / area[i];
  }
  return out;
}

inline std::string off_text(const std::vector<Point>& verts, const std::vector<Triangle>& tris) {
  std::ostringstream s;
  s << "OFF\n" << verts.size() << ' ' << tris.size() << " 0\n";
  for (const auto& p : verts) s << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const auto& t : tris) s << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return s.str();
}

}  // namespace decwave::fixtures
