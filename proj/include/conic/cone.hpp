#pragma once

#include <memory>
#include <string>

#include "conic/errors.hpp"
#include "conic/linalg.hpp"
#include "conic/special.hpp"

namespace conic {

enum class ConeKind {
  kOrthant,
  kSubspace,
  kCircular,
  kPsd,
  kChamberA,
  kChamberBC,
  kL1Descent,
  kSchattenDescent,
  kPolar,  // generic polar wrapper for cones without a closed-form polar
};

// Immutable description of a closed convex cone from the supported catalog.
//
// Conventions fixed here (and relied on by the tests):
//  - Circular(d, alpha) = {x : x_1 >= ||x|| cos(alpha)}, alpha the half-aperture.
//  - Psd(n) lives in R^{n^2} via row-major flattening with the Frobenius inner
//    product; the cone is the set of symmetric PSD matrices inside that space.
//  - ChamberA(d)  = {x : x_1 <= x_2 <= ... <= x_d}.
//  - ChamberBC(d) = {x : 0 <= x_1 <= ... <= x_d}.
//  - L1Descent(d, s) is the descent cone of the l1 norm at the canonical
//    s-sparse point (1,...,1,0,...,0); by sign/permutation invariance every
//    s-sparse sign pattern has the same geometry.
//  - SchattenDescent(m, n, r) is the descent cone of the nuclear norm at the
//    canonical rank-r matrix diag(I_r, 0), m <= n.
//  - negated() marks the reflected copy -C; it only arises as the closed-form
//    polar of the orthant and of the circular pairing.
class ConeSpec {
 public:
  static ConeSpec orthant(int d) {
    require(d >= 1, "orthant: d >= 1");
    ConeSpec c(ConeKind::kOrthant);
    c.d_ = d;
    return c;
  }

  // Subspace of dimension k spanned by the first k coordinate axes, or by the
  // rows of an explicit orthonormal basis (k x d).
  static ConeSpec subspace(int d, int k) {
    require(d >= 1 && k >= 1 && k <= d, "subspace: need 1 <= k <= d");
    ConeSpec c(ConeKind::kSubspace);
    c.d_ = d;
    c.k_ = k;
    return c;
  }

  static ConeSpec subspace(int d, const Mat& basis_rows) {
    require(d >= 1, "subspace: d >= 1");
    if (basis_rows.cols() != d || basis_rows.rows() < 1 || basis_rows.rows() > d)
      throw ShapeError("subspace: basis must be k x d with 1 <= k <= d");
    const Mat gram = basis_rows * basis_rows.transpose();
    if ((gram - Mat::Identity(basis_rows.rows(), basis_rows.rows())).norm() > 1e-8)
      throw ParameterError("subspace: basis rows must be orthonormal");
    ConeSpec c(ConeKind::kSubspace);
    c.d_ = d;
    c.k_ = static_cast<int>(basis_rows.rows());
    c.basis_ = std::make_shared<const Mat>(basis_rows);
    return c;
  }

  static ConeSpec circular(int d, double alpha) {
    require(d >= 2, "circular: d >= 2");
    if (!(alpha > 0.0 && alpha < 0.5 * kPi)) throw ParameterError("circular: alpha must lie in (0, pi/2)");
    ConeSpec c(ConeKind::kCircular);
    c.d_ = d;
    c.alpha_ = alpha;
    return c;
  }

  static ConeSpec psd(int n) {
    require(n >= 1, "psd: n >= 1");
    ConeSpec c(ConeKind::kPsd);
    c.d_ = n * n;
    c.k_ = n;
    return c;
  }

  static ConeSpec chamber_a(int d) {
    require(d >= 1, "chamber_a: d >= 1");
    ConeSpec c(ConeKind::kChamberA);
    c.d_ = d;
    return c;
  }

  static ConeSpec chamber_bc(int d) {
    require(d >= 1, "chamber_bc: d >= 1");
    ConeSpec c(ConeKind::kChamberBC);
    c.d_ = d;
    return c;
  }

  static ConeSpec l1_descent(int d, int s) {
    require(d >= 1 && s >= 1 && s <= d, "l1_descent: need 1 <= s <= d");
    ConeSpec c(ConeKind::kL1Descent);
    c.d_ = d;
    c.k_ = s;
    return c;
  }

  static ConeSpec schatten_descent(int m, int n, int r) {
    require(m >= 1 && n >= m && r >= 1 && r <= m, "schatten_descent: need 1 <= r <= m <= n");
    ConeSpec c(ConeKind::kSchattenDescent);
    c.d_ = m * n;
    c.rows_ = m;
    c.cols_ = n;
    c.k_ = r;
    return c;
  }

  ConeKind kind() const { return kind_; }
  bool negated() const { return negated_; }

  int ambient_dimension() const { return kind_ == ConeKind::kPolar ? inner_->ambient_dimension() : d_; }

  int subspace_dim() const { return k_; }
  int sparsity() const { return k_; }
  int psd_side() const { return k_; }
  int rank() const { return k_; }
  int matrix_rows() const { return rows_; }
  int matrix_cols() const { return cols_; }
  double angle() const { return alpha_; }
  const Mat* subspace_basis() const { return basis_.get(); }  // null => canonical axes
  const ConeSpec& inner() const { return *inner_; }

  // Polar cone.  Closed forms: orthant/circular flip to their negated
  // partners and subspaces to the orthogonal complement; a generic wrapper
  // (projected via Moreau) covers the rest.  The PSD cone is only self-dual
  // inside the symmetric subspace: in the full R^{n^2} embedding its polar
  // picks up the antisymmetric part, so it uses the wrapper too.  Bipolarity
  // normalizes wrappers back to the inner cone.
  ConeSpec polar() const {
    switch (kind_) {
      case ConeKind::kOrthant: {
        ConeSpec c = orthant(d_);
        c.negated_ = !negated_;
        return c;
      }
      case ConeKind::kCircular: {
        ConeSpec c = circular(d_, 0.5 * kPi - alpha_);
        c.negated_ = !negated_;
        return c;
      }
      case ConeKind::kSubspace: {
        if (k_ == d_) throw ParameterError("polar: full space has trivial polar {0}; not in catalog");
        if (!basis_) {
          // canonical axes: complement is the span of the last d-k axes
          Mat comp = Mat::Zero(d_ - k_, d_);
          for (int i = 0; i < d_ - k_; ++i) comp(i, k_ + i) = 1.0;
          return subspace(d_, comp);
        }
        const Mat bt = basis_->transpose();  // d x k
        Eigen::HouseholderQR<Mat> qr(bt);
        const Mat q = qr.householderQ() * Mat::Identity(d_, d_);
        return subspace(d_, Mat(q.rightCols(d_ - k_).transpose()));
      }
      case ConeKind::kPolar:
        return *inner_;  // bipolar: (C^0)^0 = C for closed convex cones
      default: {
        ConeSpec c(ConeKind::kPolar);
        c.inner_ = std::make_shared<const ConeSpec>(*this);
        return c;
      }
    }
  }

  std::string describe() const {
    const std::string neg = negated_ ? "-" : "";
    switch (kind_) {
      case ConeKind::kOrthant:
        return neg + "orthant(d=" + std::to_string(d_) + ")";
      case ConeKind::kSubspace:
        return "subspace(d=" + std::to_string(d_) + ",k=" + std::to_string(k_) + ")";
      case ConeKind::kCircular:
        return neg + "circular(d=" + std::to_string(d_) + ",alpha=" + std::to_string(alpha_) + ")";
      case ConeKind::kPsd:
        return neg + "psd(n=" + std::to_string(k_) + ")";
      case ConeKind::kChamberA:
        return "chamber_a(d=" + std::to_string(d_) + ")";
      case ConeKind::kChamberBC:
        return "chamber_bc(d=" + std::to_string(d_) + ")";
      case ConeKind::kL1Descent:
        return "l1_descent(d=" + std::to_string(d_) + ",s=" + std::to_string(k_) + ")";
      case ConeKind::kSchattenDescent:
        return "schatten_descent(m=" + std::to_string(rows_) + ",n=" + std::to_string(cols_) +
               ",r=" + std::to_string(k_) + ")";
      case ConeKind::kPolar:
        return "polar(" + inner_->describe() + ")";
    }
    return "?";
  }

 private:
  explicit ConeSpec(ConeKind kind) : kind_(kind) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw ParameterError(msg);
  }

  ConeKind kind_;
  int d_ = 0;               // ambient dimension (n^2 for PSD, m*n for Schatten)
  int k_ = 0;               // subspace dim / sparsity / PSD side / rank
  int rows_ = 0, cols_ = 0; // Schatten shape, m <= n
  double alpha_ = 0.0;      // circular half-aperture
  bool negated_ = false;
  std::shared_ptr<const Mat> basis_;       // subspace: orthonormal rows (k x d)
  std::shared_ptr<const ConeSpec> inner_;  // polar wrapper target
};

}  // namespace conic
