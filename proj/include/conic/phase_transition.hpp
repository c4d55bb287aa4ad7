#pragma once

#include <vector>

#include "conic/intrinsic_volumes.hpp"
#include "conic/rng.hpp"
#include "conic/solver.hpp"

namespace conic {

// E (|N| - gamma)_+^2 = 2 [(1 + gamma^2) Q(gamma) - gamma phi(gamma)].
double expected_truncated_square(double gamma);

// Unique positive solution of  2 (phi(gamma)/gamma - Q(gamma)) = rho/(1-rho),
// the stationary point of the l1 statistical-dimension objective.
double gamma_l1(double rho);

struct L1Curve {
  double rho = 0.0;
  double gamma_star = 0.0;
  double psi = 0.0;       // rho (1 + gamma^2) + (1-rho) E(|N|-gamma)_+^2 at gamma*
  double residual = 0.0;  // stationary-equation residual at gamma*
};

L1Curve psi_l1(double rho);

struct DeltaBoundsL1 {
  double lower = 0.0;       // d (psi(s/d) - 2/sqrt(s d))
  double upper = 0.0;       // d psi(s/d)
  double chre_upper = 0.0;  // 2 s log(d/s) + 5 s / 4
};

DeltaBoundsL1 delta_bounds_l1(int d, int s);

// sqrt(2) min(2/sqrt(psi), rho^2 gamma^4 / psi^{3/2}): asymptotic lower bound
// on tau^2/delta for the l1 descent cone family at sparsity fraction rho.
double var_lower_l1(double rho);

struct SchattenCurve {
  double rho = 0.0;
  double nu = 0.0;
  double y = 0.0;        // (nu - rho nu) / (1 - rho nu)
  double a_minus = 0.0;  // 1 - sqrt(y)  (zero when nu = 1)
  double a_plus = 0.0;   // 1 + sqrt(y)
  double gamma_star = 0.0;
  double psi = 0.0;
  double residual = 0.0;
};

// Normalized statistical dimension of the Schatten-1 descent cone family via
// the Marchenko-Pastur stationary equation
//   int_{a_- v gamma}^{a_+} (u/gamma - 1) phi_y(u) du = rho/(1-rho).
SchattenCurve psi_schatten(double rho, double nu);

// min( sqrt(2) [rho (1 - nu rho)]^2 gamma^4 / psi^{3/2}, 2^{3/2} / sqrt(psi) ).
// The gamma power follows the proof (v/nm -> rho (1-nu rho) gamma^2, then
// squared), matching the l1 analogue.
double var_lower_schatten(double rho, double nu);

struct CroftonBounds {
  double exact = 0.0;  // 1 - 2 h_{m+1},  h_k = sum_{j >= k, j-k even} v_j
  double lower = 0.0;  // P(V <= m-1)
  double upper = 0.0;  // P(V <= m)
};

// Probability that a uniformly random subspace of codimension m meets the
// cone only at the origin, with the interlacing sandwich
// P(V <= m-1) <= 1 - 2 h_{m+1} <= P(V <= m).  The alternating tails are
// evaluated backward and clamped to [0, v_j], which keeps the sandwich exact
// in floating point and extends the value correctly to cones with lineality
// (for subspaces the raw 1 - 2h form does not apply).
CroftonBounds crofton_bounds(const IVDistribution& ivd, int m);

struct GaussianPrediction {
  double phi_t = 0.0;
  double error_budget = 0.0;  // h(delta) + 48/sqrt(alpha log+(alpha sqrt2 delta)) + 1/sqrt(2 pi tau^2)
  bool preconditions_met = false;  // delta >= 8
};

GaussianPrediction gaussian_prediction(double delta, double tau_sq, double t);

enum class TrialOutcome { kSuccess, kFailure, kFailedToSolve };

// One recovery experiment: A is m x d iid standard normal, x0 the canonical
// s-sparse all-ones vector, success iff basis pursuit returns x0.
TrialOutcome recovery_trial(int d, int s, int m, const RngStream& stream, const SolverConfig& config = SolverConfig());

struct PhasePoint {
  double t = 0.0;
  int m = 0;
  long long successes = 0;
  long long trials = 0;  // solved trials
  long long failed_to_solve = 0;
  double p_hat = 0.0;
  double se = 0.0;
  double phi_t = 0.0;
  double error_budget = 0.0;
};

struct PhaseCurve {
  double delta_hat = 0.0;
  double tau_hat = 0.0;
  std::vector<PhasePoint> points;
};

// Empirical recovery curve at m_t = clamp(floor(delta + t tau), 1, d) against
// the Gaussian prediction Phi(t).  delta/tau estimated via estimate_moments
// when not supplied.
PhaseCurve phase_curve(int d, int s, const std::vector<double>& t_grid, long long trials_per_point,
                       const RngStream& stream, int workers = 1, long long n_moments = 20000,
                       const SolverConfig& config = SolverConfig());

PhaseCurve phase_curve_with_moments(int d, int s, double delta_hat, double tau_hat, const std::vector<double>& t_grid,
                                    long long trials_per_point, const RngStream& stream, int workers = 1,
                                    const SolverConfig& config = SolverConfig());

int clamp_measurement_count(double delta, double tau, double t, int d);

}  // namespace conic
