#include "conic/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace conic {

namespace {

constexpr double kZeroTie = 1e-12;  // coordinates within this of zero count as zero

void check_dimension(const ConeSpec& cone, const Vec& x) {
  if (x.size() != cone.ambient_dimension())
    throw ShapeError("project: vector length " + std::to_string(x.size()) + " does not match ambient dimension " +
                     std::to_string(cone.ambient_dimension()) + " of " + cone.describe());
}

Vec project_orthant(const Vec& x, bool negated) {
  return negated ? Vec(x.cwiseMin(0.0)) : Vec(x.cwiseMax(0.0));
}

Vec project_subspace(const ConeSpec& cone, const Vec& x) {
  const int k = cone.subspace_dim();
  if (const Mat* basis = cone.subspace_basis()) {
    return basis->transpose() * (*basis * x);
  }
  Vec out = Vec::Zero(x.size());
  out.head(k) = x.head(k);
  return out;
}

// Circ_alpha = {x : x_1 >= ||x|| cos(alpha)}.  Inside -> x; inside the polar
// -> 0; otherwise project onto the boundary ray in the (axis, radial) plane.
Vec project_circular_positive(double alpha, const Vec& x) {
  const int d = static_cast<int>(x.size());
  const double t = x(0);
  const double w = x.tail(d - 1).norm();
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  // in the cone: t >= ||x|| cos(alpha), i.e. t >= 0 and t sin(alpha) >= w cos(alpha)
  if (t >= 0.0 && t * sa >= w * ca) return x;
  // in the polar -Circ_{pi/2-alpha}: t <= 0 and -t cos(alpha) >= w sin(alpha)
  if (t <= 0.0 && (-t) * ca >= w * sa) return Vec::Zero(d);
  const double rho = t * ca + w * sa;  // positive in the remaining wedge
  Vec out = Vec::Zero(d);
  out(0) = rho * ca;
  if (w > 0.0) out.tail(d - 1) = (rho * sa / w) * x.tail(d - 1);
  return out;
}

Vec project_psd_positive(int n, const Vec& x) {
  const Mat a = unflatten_row_major(x, n, n);
  const Mat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  const Vec clamped = solver.eigenvalues().cwiseMax(0.0);
  const Mat proj = solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().transpose();
  return flatten_row_major(proj);
}

Vec project_chamber_a(const Vec& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  const PavaResult fit = pava_nondecreasing(v);
  return Eigen::Map<const Vec>(fit.fitted.data(), static_cast<Eigen::Index>(fit.fitted.size()));
}

Vec project_chamber_bc(const Vec& x) { return project_chamber_a(x).cwiseMax(0.0); }

// Root of a continuous strictly increasing function on [lo, hi] with
// f(lo) < 0 <= f(hi), to near machine precision.
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi) {
  for (int iter = 0; iter < 200 && hi - lo > 4e-16 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Vec flatten_row_major(const Mat& m) {
  Vec out(m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(idx++) = m(i, j);
  return out;
}

Mat unflatten_row_major(const Vec& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) throw ShapeError("unflatten_row_major: size mismatch");
  Mat out(rows, cols);
  Eigen::Index idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = v(idx++);
  return out;
}

PavaResult pava_nondecreasing(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> level;
  std::vector<int> count;
  level.reserve(n);
  count.reserve(n);
  for (int i = 0; i < n; ++i) {
    double value = x[i];
    int size = 1;
    while (!level.empty() && level.back() >= value) {
      value = (value * size + level.back() * count.back()) / (size + count.back());
      size += count.back();
      level.pop_back();
      count.pop_back();
    }
    level.push_back(value);
    count.push_back(size);
  }
  PavaResult out;
  out.fitted.reserve(n);
  for (std::size_t b = 0; b < level.size(); ++b)
    for (int r = 0; r < count[b]; ++r) out.fitted.push_back(level[b]);
  out.block_sizes = std::move(count);
  return out;
}

L1PolarProjection project_l1_polar(int d, int s, const Vec& x) {
  if (s < 1 || s > d) throw ParameterError("project_l1_polar: need 1 <= s <= d");
  if (x.size() != d) throw ShapeError("project_l1_polar: vector length mismatch");
  // F is piecewise-quadratic convex with strictly increasing derivative
  // (slope >= s), so gamma* is the root of F'/2; bisection reaches machine
  // precision without the sqrt(eps) floor of value-based minimization
  auto half_derivative = [&](double gamma) {
    double f = 0.0;
    for (int i = 0; i < s; ++i) f += gamma - x(i);
    for (int i = s; i < d; ++i) {
      const double a = std::abs(x(i));
      if (a > gamma) f += gamma - a;
    }
    return f;
  };
  double g = 0.0;
  if (half_derivative(0.0) < 0.0) {
    const double hi = 1.0 + x.cwiseAbs().maxCoeff();
    g = bisect_increasing(half_derivative, 0.0, hi);
  }
  L1PolarProjection out;
  out.gamma_star = g;
  out.projection = Vec(d);
  for (int i = 0; i < s; ++i) out.projection(i) = g;
  for (int i = s; i < d; ++i) {
    const double a = std::abs(x(i));
    out.projection(i) = (x(i) < 0 ? -1.0 : 1.0) * std::min(a, g);
  }
  return out;
}

SchattenPolarProjection project_schatten_polar(int m, int n, int r, const Mat& x) {
  if (!(r >= 1 && r <= m && m <= n)) throw ParameterError("project_schatten_polar: need 1 <= r <= m <= n");
  if (x.rows() != m || x.cols() != n) throw ShapeError("project_schatten_polar: matrix shape mismatch");
  const Mat x11 = x.topLeftCorner(r, r);

  Mat u22, v22;
  Vec sigma22;
  if (m > r) {
    Eigen::JacobiSVD<Mat> svd(x.bottomRightCorner(m - r, n - r), Eigen::ComputeThinU | Eigen::ComputeThinV);
    u22 = svd.matrixU();
    v22 = svd.matrixV();
    sigma22 = svd.singularValues();
  }

  // same structure as the l1 case: bisect the strictly increasing derivative
  auto half_derivative = [&](double gamma) {
    double f = 0.0;
    for (int i = 0; i < r; ++i) f += gamma - x11(i, i);
    for (Eigen::Index i = 0; i < sigma22.size(); ++i)
      if (sigma22(i) > gamma) f += gamma - sigma22(i);
    return f;
  };
  double g = 0.0;
  if (half_derivative(0.0) < 0.0) {
    const double hi = 1.0 + std::max(x11.diagonal().maxCoeff(), sigma22.size() > 0 ? sigma22(0) : 0.0);
    g = bisect_increasing(half_derivative, 0.0, hi);
  }

  SchattenPolarProjection out;
  out.gamma_star = g;
  out.projection = Mat::Zero(m, n);
  for (int i = 0; i < r; ++i) out.projection(i, i) = g;
  if (m > r && g > 0.0) {
    const Vec clipped = sigma22.cwiseMin(g);
    out.projection.bottomRightCorner(m - r, n - r) = u22 * clipped.asDiagonal() * v22.transpose();
  }
  return out;
}

Vec project_point(const ConeSpec& cone, const Vec& x) {
  check_dimension(cone, x);
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      return project_orthant(x, cone.negated());
    case ConeKind::kSubspace:
      return project_subspace(cone, x);
    case ConeKind::kCircular:
      return cone.negated() ? Vec(-project_circular_positive(cone.angle(), -x))
                            : project_circular_positive(cone.angle(), x);
    case ConeKind::kPsd:
      return project_psd_positive(cone.psd_side(), x);
    case ConeKind::kChamberA:
      return project_chamber_a(x);
    case ConeKind::kChamberBC:
      return project_chamber_bc(x);
    case ConeKind::kL1Descent: {
      // only the polar has a parametric form; use the Moreau split
      const L1PolarProjection polar = project_l1_polar(cone.ambient_dimension(), cone.sparsity(), x);
      return x - polar.projection;
    }
    case ConeKind::kSchattenDescent: {
      const int m = cone.matrix_rows();
      const int n = cone.matrix_cols();
      const SchattenPolarProjection polar = project_schatten_polar(m, n, cone.rank(), unflatten_row_major(x, m, n));
      return x - flatten_row_major(polar.projection);
    }
    case ConeKind::kPolar:
      return x - project_point(cone.inner(), x);
  }
  throw CapabilityError("project_point: unknown cone kind");
}

bool supports_face_dimension(const ConeSpec& cone) {
  switch (cone.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kSubspace:
    case ConeKind::kChamberA:
    case ConeKind::kChamberBC:
      return true;
    default:
      return false;
  }
}

int face_dimension(const ConeSpec& cone, const Vec& x) {
  check_dimension(cone, x);
  switch (cone.kind()) {
    case ConeKind::kOrthant: {
      const Vec p = project_orthant(x, cone.negated());
      int dim = 0;
      for (Eigen::Index i = 0; i < p.size(); ++i)
        if (std::abs(p(i)) > kZeroTie) ++dim;
      return dim;
    }
    case ConeKind::kSubspace:
      return cone.subspace_dim();
    case ConeKind::kChamberA: {
      std::vector<double> v(x.data(), x.data() + x.size());
      return static_cast<int>(pava_nondecreasing(v).block_sizes.size());
    }
    case ConeKind::kChamberBC: {
      std::vector<double> v(x.data(), x.data() + x.size());
      const PavaResult fit = pava_nondecreasing(v);
      int dim = 0;
      int pos = 0;
      for (int size : fit.block_sizes) {
        if (fit.fitted[pos] > kZeroTie) ++dim;
        pos += size;
      }
      return dim;
    }
    default:
      throw CapabilityError("face_dimension: unsupported cone variant " + cone.describe());
  }
}

ProjectionResult project(const ConeSpec& cone, const Vec& x) {
  ProjectionResult out;
  out.pi_c = project_point(cone, x);
  out.pi_polar = x - out.pi_c;
  out.dist_sq = out.pi_polar.squaredNorm();
  if (supports_face_dimension(cone)) out.face_dim = face_dimension(cone, x);
  return out;
}

}  // namespace conic
