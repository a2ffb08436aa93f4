#include <gtest/gtest.h>

#include <cmath>

#include "decwave/dual_metrics.hpp"
#include "decwave/mesh_generators.hpp"
#include "support.hpp"

using namespace decwave;

namespace {

// Area of a planar polygon (shoelace) in the z=0 plane.
double polygon_area(const std::vector<Point>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    const Point& q = pts[(i + 1) % pts.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

void expect_area_partition(const SimplicialMesh& mesh) {
  const DualMetrics m = dual_metrics(mesh);
  double sum = 0.0;
  for (double a : m.dual_area) sum += a;
  EXPECT_NEAR(sum, mesh.total_area(), 1e-9 * mesh.total_area());
  for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
    EXPECT_GE(m.dual_edge_length[e], 0.0);
    EXPECT_DOUBLE_EQ(m.primal_edge_length[e], (mesh.vertex(mesh.edge(e).b) - mesh.vertex(mesh.edge(e).a)).norm());
  }
}

}  // namespace

TEST(DualMetrics, EquilateralTriangle) {
  const auto mesh = fixtures::equilateral_triangle();
  const DualMetrics m = dual_metrics(mesh);
  // Circumcenter (1/2, sqrt3/6); each edge midpoint is at distance inradius = sqrt3/6.
  for (double l : m.dual_edge_length) EXPECT_NEAR(l, std::sqrt(3.0) / 6, 1e-15);
  // Each vertex quadrangle: two right triangles with legs 1/2 and sqrt3/6.
  const double quad = 2 * 0.5 * 0.5 * std::sqrt(3.0) / 6;
  for (double a : m.dual_area) EXPECT_NEAR(a, quad, 1e-15);
  EXPECT_NEAR(quad * 3, std::sqrt(3.0) / 4, 1e-15);
  EXPECT_NEAR(m.dual_area[0], 0.14433756729740643, 1e-15);
}

TEST(DualMetrics, SquareDiagonalHasZeroDualLength) {
  const auto mesh = square_grid(1, 1.0);
  const DualMetrics m = dual_metrics(mesh);
  const std::size_t diag = mesh.find_edge(0, 3);
  ASSERT_LT(diag, mesh.edge_count());
  EXPECT_EQ(m.dual_edge_length[diag], 0.0);
  EXPECT_NEAR(m.circumcenters[0].x(), 0.5, 1e-15);
  EXPECT_NEAR(m.circumcenters[1].y(), 0.5, 1e-15);
}

TEST(DualMetrics, HexagonCenterCellIsVoronoiHexagon) {
  const auto mesh = hexagon_fan(1.0);
  const DualMetrics m = dual_metrics(mesh);
  // Oracle: 12 sub-triangles (center, edge midpoint, circumcenter) by shoelace.
  double area = 0.0;
  for (std::size_t t = 0; t < 6; ++t) {
    const auto& tri = mesh.triangle(t);
    const Point cc = (mesh.vertex(tri[0]) + mesh.vertex(tri[1]) + mesh.vertex(tri[2])) / 3.0;  // equilateral
    const Point m1 = 0.5 * (mesh.vertex(0) + mesh.vertex(tri[1]));
    const Point m2 = 0.5 * (mesh.vertex(0) + mesh.vertex(tri[2]));
    area += polygon_area({mesh.vertex(0), m1, cc}) + polygon_area({mesh.vertex(0), cc, m2});
  }
  EXPECT_NEAR(area, std::sqrt(3.0) / 2, 1e-14);
  EXPECT_NEAR(m.dual_area[0], area, 1e-14);
  EXPECT_NEAR(m.dual_area[0], 0.8660254037844386, 1e-14);
}

TEST(DualMetrics, InteriorEdgeSumsBothHalves) {
  // Two triangles sharing edge (1,2); check |c(T1)-m| + |c(T2)-m| directly.
  const SimplicialMesh mesh({Point(0, 0, 0), Point(2, 0, 0), Point(0.7, 1.3, 0), Point(2.1, 1.6, 0)},
                            {{0, 1, 2}, {1, 3, 2}});
  const DualMetrics m = dual_metrics(mesh);
  const std::size_t e = mesh.find_edge(1, 2);
  const Point mid = 0.5 * (mesh.vertex(1) + mesh.vertex(2));
  const double expected = (circumcenter(mesh.vertex(0), mesh.vertex(1), mesh.vertex(2)) - mid).norm() +
                          (circumcenter(mesh.vertex(1), mesh.vertex(3), mesh.vertex(2)) - mid).norm();
  EXPECT_NEAR(m.dual_edge_length[e], expected, 1e-14);
}

TEST(DualMetrics, RightTriangleReductionOnGrid) {
  const double h = 0.125;
  const auto mesh = square_grid(8, h);
  const DualMetrics m = dual_metrics(mesh);
  for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
    const Point d = mesh.vertex(mesh.edge(e).b) - mesh.vertex(mesh.edge(e).a);
    const bool diagonal = d.x() != 0.0 && d.y() != 0.0;
    if (diagonal) {
      EXPECT_EQ(m.dual_edge_length[e], 0.0);
    } else {
      EXPECT_NEAR(m.primal_edge_length[e], h, 1e-15);
      const double expected = mesh.edge_triangles()[e].is_boundary() ? h / 2 : h;
      EXPECT_NEAR(m.dual_edge_length[e], expected, 1e-15);
    }
  }
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
    if (!mesh.is_boundary_vertex(v)) {
      EXPECT_NEAR(m.dual_area[v], h * h, 1e-15);
    }
}

TEST(DualMetrics, AreaPartitionHoldsOnManyMeshes) {
  expect_area_partition(square_grid(6, 0.3));
  expect_area_partition(icosphere(3, 2.0));
  expect_area_partition(fixtures::bumpy_patch(10, 0.3));
  for (unsigned seed = 1; seed <= 5; ++seed) expect_area_partition(fixtures::jittered_grid(9, 0.1, 0.2, seed));
  // Strongly obtuse pair: signed areas keep the partition exact.
  expect_area_partition(SimplicialMesh({Point(0, 0, 0), Point(4, 0, 0), Point(2, 0.5, 0), Point(2, -3, 0)},
                                       {{0, 1, 2}, {0, 3, 1}}));
}

TEST(QualityReport, Equilateral) {
  const auto mesh = fixtures::equilateral_triangle();
  const auto r = quality_report(mesh, dual_metrics(mesh));
  EXPECT_EQ(r.location[0], CircumcenterLocation::Interior);
  EXPECT_EQ(r.negative_contributions, 0u);
  EXPECT_FALSE(r.worst_triangle.has_value());
}

TEST(QualityReport, RightTriangleIsOnBoundary) {
  const auto mesh = fixtures::single_triangle(Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0));
  const auto r = quality_report(mesh, dual_metrics(mesh));
  EXPECT_EQ(r.location[0], CircumcenterLocation::OnBoundary);
  EXPECT_EQ(r.negative_contributions, 0u);
}

TEST(QualityReport, ObtuseTriangleIsExterior) {
  const Point a(0, 0, 0), b(4, 0, 0), c(2, 0.5, 0);
  const auto mesh = fixtures::single_triangle(a, b, c);
  const DualMetrics m = dual_metrics(mesh);
  const auto r = quality_report(mesh, m);

  // Oracle: barycentric point-in-triangle test on the circumcenter.
  const Point cc = m.circumcenters[0];
  auto edge_fn = [](const Point& p, const Point& q, const Point& x) {
    return (q.x() - p.x()) * (x.y() - p.y()) - (q.y() - p.y()) * (x.x() - p.x());
  };
  const bool inside = edge_fn(a, b, cc) >= 0 && edge_fn(b, c, cc) >= 0 && edge_fn(c, a, cc) >= 0;
  EXPECT_FALSE(inside);

  EXPECT_EQ(r.location[0], CircumcenterLocation::Exterior);
  EXPECT_GT(r.negative_contributions, 0u);
  ASSERT_TRUE(r.worst_triangle.has_value());
  EXPECT_EQ(*r.worst_triangle, 0u);
}

TEST(QualityReport, FlagsAreExclusiveAndCounted) {
  const auto mesh = fixtures::jittered_grid(10, 0.1, 0.24, 3);
  const auto r = quality_report(mesh, dual_metrics(mesh));
  EXPECT_EQ(r.count(CircumcenterLocation::Interior) + r.count(CircumcenterLocation::OnBoundary) +
                r.count(CircumcenterLocation::Exterior),
            mesh.triangle_count());
}
