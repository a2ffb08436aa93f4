#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "decwave/error.hpp"
#include "decwave/format.hpp"

namespace decwave {

using Field = Eigen::VectorXd;

/// General sparse linear map with unique coordinates, stored row-major.
class SparseOperator {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    double value;
  };

  SparseOperator() = default;

  explicit SparseOperator(Matrix m) : m_(std::move(m)) { m_.makeCompressed(); }

  /// Builds from coordinate entries. Duplicate or out-of-range coordinates are rejected.
  SparseOperator(Eigen::Index rows, Eigen::Index cols, const std::vector<Entry>& entries) : m_(rows, cols) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries.size());
    for (const Entry& e : entries) {
      if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
        throw AssemblyError("sparse entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                            ") out of range");
      trips.emplace_back(e.row, e.col, e.value);
    }
    m_.setFromTriplets(trips.begin(), trips.end(), [](double, double) -> double {
      throw AssemblyError("duplicate sparse coordinate");
    });
    m_.makeCompressed();
  }

  static SparseOperator diagonal(const Eigen::VectorXd& d) {
    Matrix m(d.size(), d.size());
    m.reserve(Eigen::VectorXi::Ones(d.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i) m.insert(i, i) = d[i];
    return SparseOperator(std::move(m));
  }

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  Eigen::Index nonzeros() const { return m_.nonZeros(); }
  const Matrix& matrix() const { return m_; }

  double coeff(Eigen::Index r, Eigen::Index c) const { return m_.coeff(r, c); }

  Field apply(const Field& x) const {
    if (x.size() != cols()) throw AssemblyError("operator applied to a vector of the wrong length");
    return m_ * x;
  }

  SparseOperator transpose() const { return SparseOperator(Matrix(m_.transpose())); }

  friend SparseOperator operator*(const SparseOperator& lhs, const SparseOperator& rhs) {
    if (lhs.cols() != rhs.rows()) throw AssemblyError("operator composition with mismatched dimensions");
    return SparseOperator(Matrix(lhs.m_ * rhs.m_));
  }

  SparseOperator scaled(double s) const { return SparseOperator(Matrix(s * m_)); }

  /// Removes stored entries whose value is exactly zero.
  SparseOperator& drop_zeros() {
    m_.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
    return *this;
  }

  /// Entries in row-major order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(m_.nonZeros()));
    for (Eigen::Index r = 0; r < m_.outerSize(); ++r)
      for (Matrix::InnerIterator it(m_, r); it; ++it) out.push_back({it.row(), it.col(), it.value()});
    return out;
  }

  /// Coordinate-format dump: a "rows cols nnz" line, then "row col value" per entry.
  void write_coordinate(std::ostream& out) const {
    out << rows() << ' ' << cols() << ' ' << nonzeros() << '\n';
    for (const Entry& e : entries()) out << e.row << ' ' << e.col << ' ' << format_shortest(e.value) << '\n';
  }

 private:
  Matrix m_;
};

}  // namespace decwave
