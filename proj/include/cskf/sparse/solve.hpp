#pragma once

#include <Eigen/Core>

#include "cskf/errors.hpp"
#include "cskf/sparse/lower_triangular.hpp"

namespace cskf::sparse {

/// Solves G * Jt = B for Jt, with G = P^T * Lt the factor in original
/// coordinates; B is dense dim x m. The permutation is applied internally.
inline Eigen::MatrixXd back_solve_transposed(const SparseLowerTriangular& g,
                                             const Eigen::MatrixXd& b) {
  if (b.rows() != g.dim) throw DimensionMismatch("back_solve_transposed: B rows != dim");
  Eigen::MatrixXd x(g.dim, b.cols());
  for (Index k = 0; k < g.dim; ++k) x.row(k) = b.row(g.perm[k]);  // x = P * B
  for (Index j = 0; j < g.dim; ++j) {
    x.row(j) /= g.values[g.col_ptr[j]];
    for (Index p = g.col_ptr[j] + 1; p < g.col_ptr[j + 1]; ++p)
      x.row(g.row_idx[p]) -= g.values[p] * x.row(j);
  }
  return x;  // Jt = Lt^{-1} P B = G^{-1} B
}

/// Solves G^T * X = B (the transposed-factor system used when materializing
/// covariance products); permutation handled internally.
inline Eigen::MatrixXd forward_solve(const SparseLowerTriangular& g,
                                     const Eigen::MatrixXd& b) {
  if (b.rows() != g.dim) throw DimensionMismatch("forward_solve: B rows != dim");
  Eigen::MatrixXd z = b;
  for (Index j = g.dim - 1; j >= 0; --j) {
    for (Index p = g.col_ptr[j] + 1; p < g.col_ptr[j + 1]; ++p)
      z.row(j) -= g.values[p] * z.row(g.row_idx[p]);
    z.row(j) /= g.values[g.col_ptr[j]];
  }
  Eigen::MatrixXd x(g.dim, b.cols());
  for (Index k = 0; k < g.dim; ++k) x.row(g.perm[k]) = z.row(k);  // X = P^T z
  return x;
}

/// Dense (G G^T)^{-1} in original coordinates. Oracle/benchmark use only;
/// the filter never materializes the map covariance.
inline Eigen::MatrixXd inverse_dense(const SparseLowerTriangular& g) {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(g.dim, g.dim);
  return forward_solve(g, back_solve_transposed(g, eye));
}

}  // namespace cskf::sparse
