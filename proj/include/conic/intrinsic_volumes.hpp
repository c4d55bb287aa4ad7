#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conic/cone.hpp"
#include "conic/linalg.hpp"
#include "conic/rng.hpp"

namespace conic {

// Probability distribution of the intrinsic-volume random variable V_C on
// {0, ..., d}.  For true conic intrinsic volumes the moments obey
// tau^2 <= 2 delta and 2 delta <= sigma^2 <= 4 delta with sigma^2 = tau^2 + 2 delta.
class IVDistribution {
 public:
  IVDistribution(std::vector<double> probs, bool enforce_moment_bounds = true);

  int d() const { return static_cast<int>(probs_.size()) - 1; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(int j) const { return probs_.at(static_cast<std::size_t>(j)); }

  double delta() const { return delta_; }
  double tau_sq() const { return tau_sq_; }
  double sigma_sq() const { return tau_sq_ + 2.0 * delta_; }

  // P(V <= j); j < 0 gives 0, j >= d gives 1.
  double cdf(int j) const;

 private:
  std::vector<double> probs_;
  double delta_ = 0.0;
  double tau_sq_ = 0.0;
};

// Exact distributions: orthant -> Binomial(d, 1/2); subspace -> point mass at
// k; chamber_a -> coefficients of (1/d!) prod_{k=1..d} (s+k-1), exact integer
// arithmetic up to d = 30 and per-step-normalized floating point beyond.
// Polars of these are served through v_j(C^0) = v_{d-j}(C).
IVDistribution exact_distribution(const ConeSpec& cone);

bool has_exact_distribution(const ConeSpec& cone);

struct ClosedFormMoments {
  double delta = 0.0;
  double tau_sq = 0.0;
  bool delta_asymptotic = false;  // value exact only in the large-dimension limit
  bool tau_asymptotic = false;
};

// Closed-form (delta, tau^2) for the catalog cones with known moment
// formulas.  The PSD tau^2 is asymptotic; the circular row is likewise
// flagged (its delta misses a + cos(2 alpha) correction at finite d).
ClosedFormMoments closed_form_moments(const ConeSpec& cone);

struct MomentEstimates {
  double delta_hat = 0.0;
  double sigma_sq_hat = 0.0;
  double tau_sq_hat = 0.0;  // sigma_sq_hat - 2 delta_hat, may be negative from noise
  double v_hat = 0.0;       // split-sample estimate of ||E Pi_C(g)||^2
  double width_hat = 0.0;   // mean of ||Pi_C(g)||
  long long n_samples = 0;
  double se_delta = 0.0;
  double se_sigma_sq = 0.0;
  double se_tau_sq = 0.0;  // batch-means
  double se_v = 0.0;
  double se_width = 0.0;
  bool tau_degenerate = false;  // tau_sq_hat < 0 (noise near a subspace)
};

// Monte Carlo moments of G_C = ||Pi_C(g)||^2.  v_hat uses the split-sample
// inner product <mean of first half, mean of second half>, which is unbiased
// for ||E Pi_C(g)||^2; its standard error comes from a second deterministic
// pass over the same counter-based streams.  Trial i draws from
// stream.substream(i), so the result is independent of the worker count.
MomentEstimates estimate_moments(const ConeSpec& cone, long long n, const RngStream& stream, int workers = 1);

// Empirical distribution of face_dimension(cone, g) over n Gaussian draws.
IVDistribution sample_V(const ConeSpec& cone, long long n, const RngStream& stream, int workers = 1);

struct VarianceBounds {
  double v = 0.0;
  double b = 0.0;
  double lower = 0.0;  // min(v^2, 4 b^2) / b
  double upper = 0.0;  // 2 v
  bool v_clamped = false;
};

VarianceBounds variance_bounds(const MomentEstimates& estimates, int d);

struct SteinerCovariance {
  double value = 0.0;  // -Cov(||Pi_C(g)||^2, ||Pi_{C0}(g)||^2); matches tau^2
  double se = 0.0;
};

SteinerCovariance steiner_covariance(const ConeSpec& cone, long long n, const RngStream& stream, int workers = 1);

enum class SteinerTestFunction {
  kFirstCoordinate,  // f(a,b) = a
  kProduct,          // f(a,b) = a b
  kExpNegQuarter,    // f(a,b) = exp(-a/4)
};

struct SteinerMomentCheck {
  double lhs_hat = 0.0;
  double se = 0.0;
  double rhs = 0.0;  // sum_j E[f(Y_j, Y'_{d-j})] v_j from chi-square closed forms
};

SteinerMomentCheck master_steiner_moment_check(const ConeSpec& cone, SteinerTestFunction f, long long n,
                                               const RngStream& stream, int workers = 1);

struct WidthSandwich {
  bool ok = false;
  double lower_margin = 0.0;  // delta_hat - (width^2 - k se)
  double upper_margin = 0.0;  // (width^2 + 1 + k se) - delta_hat
};

// Checks width^2 <= delta <= width^2 + 1 with a k-standard-error allowance.
WidthSandwich width_sandwich_check(const MomentEstimates& estimates, double k = 4.0);

}  // namespace conic
