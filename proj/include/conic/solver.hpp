#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "conic/errors.hpp"
#include "conic/linalg.hpp"

namespace conic {

struct SolverConfig {
  int max_iterations = 5000;
  double primal_tol = 1e-8;
  double dual_tol = 1e-8;
  double penalty = 1.0;  // self-tuned by residual balancing
};

struct SolveReport {
  Vec x_hat;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
};

// Equality-constrained l1 minimization  min ||x||_1  s.t.  A x = z,
// by operator splitting: soft-thresholding against projection onto the
// affine set through a cached factorization of A A^T.
SolveReport basis_pursuit(const Mat& a, const Vec& z, const SolverConfig& config = SolverConfig());

struct Minimize1dResult {
  double x_star = 0.0;
  double f_star = 0.0;
  int evaluations = 0;
};

// Guarded minimizer of a convex coercive function on [lo, inf): bracket by
// doubling until an interior point beats both endpoints, then golden-section
// until the bracket width is below tol.  The returned point is never worse
// than either probed neighbor at spacing tol (triple-point certificate).
Minimize1dResult minimize_1d_convex(const std::function<double(double)>& f, double lo, double tol = 1e-10);

struct LpOracleResult {
  bool feasible = false;
  double optimal_value = 0.0;
  Vec x;
};

// Exact l1 oracle for tiny instances (d <= 10): enumerates all candidate
// supports of size <= m, exponential time accepted.
LpOracleResult lp_oracle_small(const Mat& a, const Vec& z);

}  // namespace conic
