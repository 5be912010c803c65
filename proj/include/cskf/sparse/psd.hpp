#pragma once

#include <Eigen/Dense>

#include "cskf/errors.hpp"

namespace cskf::sparse {

/// True iff the symmetric matrix M has min eigenvalue >= -tol.
/// Throws NotSymmetric when max |M - M^T| exceeds tol.
inline bool is_psd(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw NotSymmetric("is_psd: matrix not square");
  if (m.size() == 0) return true;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol) throw NotSymmetric("is_psd: asymmetry " + std::to_string(asym));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace cskf::sparse
