#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "conic/cone.hpp"
#include "conic/linalg.hpp"

namespace conic {

struct ProjectionResult {
  Vec pi_c;      // Pi_C(x)
  Vec pi_polar;  // Pi_{C^0}(x) = x - Pi_C(x)
  double dist_sq = 0.0;  // d^2(x, C) = ||pi_polar||^2
  std::optional<int> face_dim;  // populated for polyhedral cones with face counting
};

// Metric projection onto the cone, with the polar part via the Moreau split.
ProjectionResult project(const ConeSpec& cone, const Vec& x);

// Metric projection alone (no bookkeeping); what the Monte Carlo loops call.
Vec project_point(const ConeSpec& cone, const Vec& x);

// Dimension of the face whose relative interior contains Pi_C(x).
// Supported: orthant, subspace, chamber_a, chamber_bc (and negated orthant).
int face_dimension(const ConeSpec& cone, const Vec& x);

bool supports_face_dimension(const ConeSpec& cone);

// Projection onto the polar of the l1 descent cone at the canonical s-sparse
// point: the polar is { gamma * z : gamma >= 0, z in the subdifferential },
// so the squared distance is the 1-D convex function
//   F(gamma) = sum_{i<=s} (x_i - gamma)^2 + sum_{i>s} (|x_i| - gamma)_+^2.
struct L1PolarProjection {
  double gamma_star = 0.0;
  Vec projection;
};
L1PolarProjection project_l1_polar(int d, int s, const Vec& x);

// Projection onto the polar of the Schatten-1 descent cone at diag(I_r, 0),
// assembled as blkdiag(gamma* I_r, gamma* W*) with W* the soft-clipped SVD of
// the bottom-right block.
struct SchattenPolarProjection {
  double gamma_star = 0.0;
  Mat projection;
};
SchattenPolarProjection project_schatten_polar(int m, int n, int r, const Mat& x);

// Pool-adjacent-violators fit to a nondecreasing sequence; used by the
// chamber projections and for face counting.  Returns the fitted values and
// the block sizes of the pooled solution.
struct PavaResult {
  std::vector<double> fitted;
  std::vector<int> block_sizes;
};
PavaResult pava_nondecreasing(const std::vector<double>& x);

// Row-major flattening helpers for the matrix cones.
Vec flatten_row_major(const Mat& m);
Mat unflatten_row_major(const Vec& v, int rows, int cols);

}  // namespace conic
