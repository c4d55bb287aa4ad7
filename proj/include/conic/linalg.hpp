#pragma once

#include <Eigen/Dense>

#include "conic/errors.hpp"

namespace conic {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct EigenDecomposition {
  Vec eigenvalues;   // descending
  Mat eigenvectors;  // orthonormal columns, matching order
};

struct SvdDecomposition {
  Mat u;
  Vec singular_values;  // descending, nonnegative
  Mat v;
};

// Symmetric eigendecomposition M = Q diag(lambda) Q^T with descending eigenvalues.
inline EigenDecomposition symmetric_eigendecomposition(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("symmetric_eigendecomposition: matrix must be square");
  const double scale = m.norm();
  if ((m - m.transpose()).norm() > 1e-10 * (1.0 + scale))
    throw ShapeError("symmetric_eigendecomposition: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.transpose()));
  const Eigen::Index n = m.rows();
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  (void)n;
  return out;
}

inline SvdDecomposition singular_value_decomposition(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdDecomposition{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace conic
