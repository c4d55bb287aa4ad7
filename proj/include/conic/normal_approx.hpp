#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "conic/cone.hpp"
#include "conic/intrinsic_volumes.hpp"
#include "conic/rng.hpp"

namespace conic {

// One evaluated bound: name, the inputs it was computed from, the value
// (+infinity when the bound is vacuous under its stated preconditions), and
// whether those preconditions were met.  TV-type values above 1 are reported
// as-is with the vacuous flag set, since callers compare decay rates.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool valid = true;
  bool vacuous = false;
};

// h(delta) = (1/72) (log(delta) / delta^{3/16})^{5/2}, the small term of the
// Berry-Esseen bound for the standardized intrinsic-volume distribution.
double h_small(double delta);

struct BerryEsseenVC {
  BoundReport simplified;  // h(delta) + 48 / sqrt(alpha log+(alpha sqrt(2) delta)), needs delta >= 8
  BoundReport full;        // the smoothing-lemma bound B log+(L) + 4/L in closed form
};

BerryEsseenVC berry_esseen_vc(double delta, double tau_sq);

struct SmoothingParameters {
  double l = 0.0;  // L = sqrt(tau^2/(144 delta) log+(tau^3/delta)); L <= tau/8
  double b = 0.0;  // B = 32 L^3 exp(9 L^2 delta / tau^2) delta / tau^3
};

SmoothingParameters l_and_b(double delta, double tau_sq);

// eta <= B log+(L) + 4/L (infinite when L = 0).
double smoothing_eta_bound(const SmoothingParameters& p);

// d_TV(G_C - delta, N) <= min(16 sqrt(delta)/sigma^2, 8/sqrt(delta)); with the
// ambient dimension supplied, also the self-dual specialization 8 sqrt(2/d).
BoundReport tv_bound_projection(double delta, double sigma_sq);
BoundReport tv_bound_self_dual(int d);

// d_TV(F, N) <= (16/sigma^2) (sqrt(m)(1+2||mu||) + 3||mu||^2 + ||mu||).
BoundReport tv_bound_shifted(double m, double mu_norm, double sigma_sq);

// d_TV(F, N) <= 16 sqrt(E d^2(g, C - mu)) / sigma^2.
BoundReport tv_bound_distance(double e_dist_sq, double sigma_sq);

// E exp(xi F) <= exp(2 xi^2 E / (1 - 2 xi)) for xi < 1/2.
double concentration_laplace(double e_dist_sq, double xi);

// P(F > t) <= exp(-E h(t / 2E)) with h(u) = 1 + u - sqrt(1 + 2u).
double concentration_tail(double e_dist_sq, double t);

// Companion form: P(F > sqrt(8 E t) + 2 t) <= exp(-t).
struct TailPoint {
  double threshold = 0.0;
  double bound = 0.0;
};
TailPoint concentration_tail_alt(double e_dist_sq, double t);

struct EmpiricalCdf {
  explicit EmpiricalCdf(std::vector<double> values);
  const std::vector<double>& sorted() const { return values_; }
  long long n() const { return static_cast<long long>(values_.size()); }

 private:
  std::vector<double> values_;
};

// sup_x |F_n(x) - Phi(x)| with both one-sided jumps at each sample point.
double kolmogorov_distance(const EmpiricalCdf& sample);

// Draws of W_C / sqrt(2 delta) where W_C = chi^2_V - V and V ~ ivd.
std::vector<double> sample_W(const IVDistribution& ivd, long long n, const RngStream& stream, int workers = 1);

struct CharIdentityPoint {
  double t = 0.0;
  std::complex<double> lhs;  // empirical E exp(i t V)
  std::complex<double> rhs;  // empirical E exp(xi_{it} G), xi_t = (1 - e^{-2t})/2
  double discrepancy = 0.0;
  double se = 0.0;  // Monte Carlo scale of the complex difference
};

struct CharIdentityReport {
  std::vector<CharIdentityPoint> points;
  double max_discrepancy = 0.0;
  double joint_correlation = 0.0;  // corr(W/sqrt(2 delta), (V-delta)/tau) diagnostic
};

// Checks E exp(itV) = E exp(xi_{it} G) on a grid, both sides from the same
// Gaussian draws.  The rhs estimator has finite variance only when
// cos(2t) > 0 (|t| < pi/4); outside that range the reported se grows to match.
CharIdentityReport char_identity_check(const ConeSpec& cone, const std::vector<double>& t_grid, long long n,
                                       const RngStream& stream, int workers = 1);

struct RateConstantCheck {
  double lhs_hat = 0.0;    // (delta/sigma) (F_W(x) - Phi(x))
  double rhs = 0.0;        // -sqrt(2/(18+9r)) (x^2-1) phi(x), r = tau^2/delta
  double error_bar = 0.0;  // Monte Carlo one-sigma bar on lhs_hat
};

RateConstantCheck rate_constant_check(const IVDistribution& ivd, double x, long long n, const RngStream& stream,
                                      int workers = 1);

}  // namespace conic
