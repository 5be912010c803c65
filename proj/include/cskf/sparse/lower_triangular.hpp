#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cskf/errors.hpp"

namespace cskf::sparse {

using Index = std::int64_t;

/// Sparse lower-triangular Cholesky factor in compressed sparse column form,
/// together with the fill-reducing permutation applied during factorization.
///
/// Writing P for the permutation matrix with P(k, perm[k]) = 1, the stored
/// triangle Lt satisfies Lt * Lt^T = P * A * P^T, i.e. the factor of A in
/// original coordinates is G = P^T * Lt. All solve routines accept and return
/// unpermuted quantities.
struct SparseLowerTriangular {
  Index dim = 0;
  std::vector<Index> col_ptr;   // dim+1 entries
  std::vector<Index> row_idx;   // nnz entries, strictly increasing per column
  std::vector<double> values;   // nnz entries; diagonal first in each column
  std::vector<Index> perm;      // perm[k] = original index of permuted row k

  Index nnz() const { return static_cast<Index>(values.size()); }

  /// Checks the structural invariants; throws FormatError on violation.
  void validate() const {
    if (dim <= 0) throw FormatError("factor: non-positive dimension");
    if (static_cast<Index>(col_ptr.size()) != dim + 1)
      throw FormatError("factor: col_ptr size mismatch");
    if (col_ptr.front() != 0 || col_ptr.back() != nnz())
      throw FormatError("factor: col_ptr endpoints invalid");
    if (row_idx.size() != values.size()) throw FormatError("factor: nnz mismatch");
    if (static_cast<Index>(perm.size()) != dim)
      throw FormatError("factor: permutation size mismatch");
    std::vector<char> seen(static_cast<std::size_t>(dim), 0);
    for (Index k = 0; k < dim; ++k) {
      if (perm[k] < 0 || perm[k] >= dim || seen[perm[k]])
        throw FormatError("factor: invalid permutation");
      seen[perm[k]] = 1;
    }
    for (Index j = 0; j < dim; ++j) {
      if (col_ptr[j + 1] < col_ptr[j]) throw FormatError("factor: col_ptr decreasing");
      if (col_ptr[j + 1] == col_ptr[j] || row_idx[col_ptr[j]] != j)
        throw FormatError("factor: missing diagonal entry");
      if (values[col_ptr[j]] <= 0.0)
        throw FormatError("factor: non-positive diagonal");
      for (Index p = col_ptr[j] + 1; p < col_ptr[j + 1]; ++p) {
        if (row_idx[p] <= row_idx[p - 1] || row_idx[p] >= dim)
          throw FormatError("factor: row indices not strictly increasing");
      }
    }
  }

  /// Dense G = P^T * Lt in original coordinates (test / small-scale use).
  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    for (Index j = 0; j < dim; ++j)
      for (Index p = col_ptr[j]; p < col_ptr[j + 1]; ++p)
        g(perm[row_idx[p]], j) = values[p];
    return g;
  }

  /// Bytes of the serialized form (header + perm + col_ptr + row_idx + values).
  std::uint64_t serialized_bytes() const {
    return 4 + 4 + 8 + 8 + 8ull * dim + 8ull * (dim + 1) + 16ull * nnz();
  }
};

/// Y = G * X with G = P^T * Lt (original coordinates).
inline Eigen::MatrixXd multiply(const SparseLowerTriangular& g, const Eigen::MatrixXd& x) {
  if (x.rows() != g.dim) throw DimensionMismatch("multiply: row count mismatch");
  Eigen::MatrixXd yp = Eigen::MatrixXd::Zero(g.dim, x.cols());
  for (Index j = 0; j < g.dim; ++j)
    for (Index p = g.col_ptr[j]; p < g.col_ptr[j + 1]; ++p)
      yp.row(g.row_idx[p]) += g.values[p] * x.row(j);
  Eigen::MatrixXd y(g.dim, x.cols());
  for (Index k = 0; k < g.dim; ++k) y.row(g.perm[k]) = yp.row(k);
  return y;
}

}  // namespace cskf::sparse
