#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cskf/errors.hpp"

namespace cskf::sparse {

using Index = std::int64_t;

/// Symmetric matrix staged as upper-triangle triplets. Duplicates are summed
/// on assembly. Input type for the sparse Cholesky factorization.
class SparseSymmetric {
 public:
  explicit SparseSymmetric(Index dim) : dim_(dim) {
    if (dim <= 0) throw DimensionMismatch("SparseSymmetric: dim must be positive");
  }

  Index dim() const { return dim_; }

  // Stores (i, j, v) normalized to the upper triangle.
  void add(Index i, Index j, double v) {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
      throw DimensionMismatch("SparseSymmetric::add: index out of range");
    if (i > j) std::swap(i, j);
    rows_.push_back(i);
    cols_.push_back(j);
    vals_.push_back(v);
  }

  // Adds a dense symmetric block with top-left corner (r, c). Only entries
  // landing in the upper triangle are kept, so callers may add full blocks.
  void add_block(Index r, Index c, const Eigen::MatrixXd& block) {
    for (Index j = 0; j < block.cols(); ++j)
      for (Index i = 0; i < block.rows(); ++i)
        if (r + i <= c + j && block(i, j) != 0.0) add(r + i, c + j, block(i, j));
  }

  struct UpperCsc {
    Index dim = 0;
    std::vector<Index> col_ptr;  // dim+1
    std::vector<Index> row_idx;  // sorted, deduplicated within column
    std::vector<double> values;
  };

  /// Assembles the upper triangle in compressed sparse column form.
  UpperCsc assemble() const {
    UpperCsc m;
    m.dim = dim_;
    const std::size_t nz = vals_.size();
    std::vector<Index> count(static_cast<std::size_t>(dim_) + 1, 0);
    for (std::size_t k = 0; k < nz; ++k) count[static_cast<std::size_t>(cols_[k]) + 1]++;
    for (Index j = 0; j < dim_; ++j) count[j + 1] += count[j];
    std::vector<Index> ri(nz);
    std::vector<double> vx(nz);
    std::vector<Index> next(count.begin(), count.end() - 1);
    for (std::size_t k = 0; k < nz; ++k) {
      const Index p = next[cols_[k]]++;
      ri[p] = rows_[k];
      vx[p] = vals_[k];
    }
    // sort each column and sum duplicates
    m.col_ptr.assign(static_cast<std::size_t>(dim_) + 1, 0);
    std::vector<std::pair<Index, double>> col;
    for (Index j = 0; j < dim_; ++j) {
      col.clear();
      for (Index p = count[j]; p < count[j + 1]; ++p) col.emplace_back(ri[p], vx[p]);
      std::sort(col.begin(), col.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      const Index col_start = static_cast<Index>(m.row_idx.size());
      for (const auto& [r, v] : col) {
        if (static_cast<Index>(m.row_idx.size()) > col_start && m.row_idx.back() == r)
          m.values.back() += v;
        else {
          m.row_idx.push_back(r);
          m.values.push_back(v);
        }
      }
      m.col_ptr[j + 1] = static_cast<Index>(m.row_idx.size());
    }
    return m;
  }

  /// Maximum |entry| over staged triplets (duplicate-summed scale proxy).
  double max_abs() const {
    double m = 0;
    for (double v : vals_) m = std::max(m, std::abs(v));
    return m;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim_, dim_);
    for (std::size_t k = 0; k < vals_.size(); ++k) {
      d(rows_[k], cols_[k]) += vals_[k];
      if (rows_[k] != cols_[k]) d(cols_[k], rows_[k]) += vals_[k];
    }
    return d;
  }

 private:
  Index dim_;
  std::vector<Index> rows_, cols_;
  std::vector<double> vals_;
};

}  // namespace cskf::sparse
