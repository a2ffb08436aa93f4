#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "decwave/dual_metrics.hpp"
#include "decwave/mesh.hpp"
#include "decwave/sparse_operator.hpp"

namespace decwave {

/// Exterior derivative on 0-forms: (edges x vertices), row (i, j) holds -1 at i and +1 at j.
inline SparseOperator incidence_d0(const SimplicialMesh& mesh) {
  std::vector<SparseOperator::Entry> entries;
  entries.reserve(2 * mesh.edge_count());
  for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
    const auto row = static_cast<Eigen::Index>(e);
    entries.push_back({row, static_cast<Eigen::Index>(mesh.edge(e).a), -1.0});
    entries.push_back({row, static_cast<Eigen::Index>(mesh.edge(e).b), +1.0});
  }
  return SparseOperator(static_cast<Eigen::Index>(mesh.edge_count()),
                        static_cast<Eigen::Index>(mesh.vertex_count()), entries);
}

/// Diagonal Hodge star on 0-forms: dual cell area over unit primal volume.
inline SparseOperator hodge_star0(const DualMetrics& metrics) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(metrics.dual_area.size()));
  for (std::size_t v = 0; v < metrics.dual_area.size(); ++v) {
    if (!(metrics.dual_area[v] > 0.0))
      throw AssemblyError("vertex " + std::to_string(v) + " has nonpositive dual area " +
                          std::to_string(metrics.dual_area[v]));
    d[static_cast<Eigen::Index>(v)] = metrics.dual_area[v];
  }
  return SparseOperator::diagonal(d);
}

/// Diagonal Hodge star on 1-forms: dual edge length over primal edge length.
inline SparseOperator hodge_star1(const DualMetrics& metrics) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(metrics.primal_edge_length.size()));
  for (std::size_t e = 0; e < metrics.primal_edge_length.size(); ++e) {
    if (!(metrics.primal_edge_length[e] > 0.0))
      throw AssemblyError("edge " + std::to_string(e) + " has zero primal length");
    d[static_cast<Eigen::Index>(e)] = metrics.dual_edge_length[e] / metrics.primal_edge_length[e];
  }
  return SparseOperator::diagonal(d);
}

/// Discrete Laplacian on vertex values: each row is
/// sum_w (dual/primal)(e_vw) * (p_w - p_v) / dual_area[v].
struct LaplacianOperator {
  SparseOperator matrix;
  bool row_sum_zero = false;

  Field apply(const Field& p) const { return matrix.apply(p); }
  Eigen::Index size() const { return matrix.rows(); }
};

namespace detail {

inline bool rows_sum_to_zero(const SparseOperator& op, double tol) {
  const auto& m = op.matrix();
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    double sum = 0.0;
    double scale = 0.0;
    for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) {
      sum += it.value();
      scale = std::max(scale, std::abs(it.value()));
    }
    if (std::abs(sum) > tol * std::max(scale, 1.0)) return false;
  }
  return true;
}

}  // namespace detail

/// Assembles -star0^{-1} d0^T star1 d0, which approximates the Laplacian on 0-forms.
/// Entries that come out exactly zero (edges with zero dual length) are dropped.
inline LaplacianOperator assemble_laplacian(const SimplicialMesh& mesh, const DualMetrics& metrics) {
  const SparseOperator d0 = incidence_d0(mesh);
  const SparseOperator star1 = hodge_star1(metrics);
  const SparseOperator star0 = hodge_star0(metrics);

  Eigen::VectorXd inv_area(star0.rows());
  for (Eigen::Index v = 0; v < inv_area.size(); ++v) inv_area[v] = -1.0 / star0.coeff(v, v);
  const SparseOperator neg_star0_inv = SparseOperator::diagonal(inv_area);

  LaplacianOperator lap{neg_star0_inv * (d0.transpose() * star1 * d0), false};
  lap.matrix.drop_zeros();
  lap.row_sum_zero = detail::rows_sum_to_zero(lap.matrix, 1e-10);
  return lap;
}

/// Per-vertex evaluation of the Laplacian, (1/P_v) sum_e (dual/primal)(p_w - p_v), straight from the
/// dual metrics, without any matrix.
inline double laplacian_stencil_reference(const SimplicialMesh& mesh, const DualMetrics& metrics, std::size_t v,
                                          const Field& field) {
  double sum = 0.0;
  for (std::size_t e : mesh.vertex_edges()[v]) {
    const std::size_t w = mesh.opposite(e, v);
    const double weight = metrics.dual_edge_length[e] / metrics.primal_edge_length[e];
    sum += weight * (field[static_cast<Eigen::Index>(w)] - field[static_cast<Eigen::Index>(v)]);
  }
  return sum / metrics.dual_area[v];
}

}  // namespace decwave
