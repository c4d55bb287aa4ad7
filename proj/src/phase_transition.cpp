#include "conic/phase_transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conic/normal_approx.hpp"
#include "conic/parallel.hpp"
#include "conic/quadrature.hpp"
#include "conic/rootfind.hpp"
#include "conic/special.hpp"

namespace conic {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0,1)");
}

}  // namespace

double expected_truncated_square(double gamma) {
  if (gamma < 0.0) throw DomainError("expected_truncated_square: need gamma >= 0");
  return 2.0 * ((1.0 + gamma * gamma) * normal_upper_tail(gamma) - gamma * normal_pdf(gamma));
}

double gamma_l1(double rho) {
  check_rho(rho);
  const double rhs = rho / (1.0 - rho);
  // 2 (phi(g)/g - Q(g)) decreases from +inf to 0 on (0, inf)
  auto f = [&](double g) { return 2.0 * (normal_pdf(g) / g - normal_upper_tail(g)) - rhs; };
  return bisection_root(f, 1e-8, 40.0, 1e-14);
}

L1Curve psi_l1(double rho) {
  check_rho(rho);
  L1Curve curve;
  curve.rho = rho;
  curve.gamma_star = gamma_l1(rho);
  const double g = curve.gamma_star;
  curve.psi = rho * (1.0 + g * g) + (1.0 - rho) * expected_truncated_square(g);
  curve.residual = std::abs(2.0 * (normal_pdf(g) / g - normal_upper_tail(g)) - rho / (1.0 - rho));
  return curve;
}

DeltaBoundsL1 delta_bounds_l1(int d, int s) {
  if (!(s >= 1 && s <= d)) throw ParameterError("delta_bounds_l1: need 1 <= s <= d");
  DeltaBoundsL1 out;
  const double rho = static_cast<double>(s) / d;
  const double psi = rho < 1.0 ? psi_l1(rho).psi : 1.0;
  out.upper = d * psi;
  out.lower = d * (psi - 2.0 / std::sqrt(static_cast<double>(s) * d));
  out.chre_upper = 2.0 * s * std::log(static_cast<double>(d) / s) + 1.25 * s;
  return out;
}

double var_lower_l1(double rho) {
  const L1Curve curve = psi_l1(rho);
  const double g = curve.gamma_star;
  const double psi = curve.psi;
  return kSqrt2 * std::min(2.0 / std::sqrt(psi), rho * rho * g * g * g * g / std::pow(psi, 1.5));
}

SchattenCurve psi_schatten(double rho, double nu) {
  check_rho(rho);
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("psi_schatten: need nu in (0,1]");
  SchattenCurve curve;
  curve.rho = rho;
  curve.nu = nu;
  curve.y = (nu - rho * nu) / (1.0 - rho * nu);
  curve.a_minus = 1.0 - std::sqrt(curve.y);
  curve.a_plus = 1.0 + std::sqrt(curve.y);

  const double rhs = rho / (1.0 - rho);
  const double y = curve.y;
  // evaluate int (u/gamma - 1) phi_y as m1(gamma)/gamma - mass(gamma) so the
  // integrands stay O(1) even for tiny gamma brackets
  auto lhs = [&](double gamma) {
    const double m1 = mp_integral([](double u) { return u; }, y, gamma, 1e-12);
    const double mass = mp_integral([](double) { return 1.0; }, y, gamma, 1e-12);
    return m1 / gamma - mass;
  };
  auto f = [&](double gamma) { return lhs(gamma) - rhs; };
  // lhs decreases from +inf at 0+ to 0 at a_plus
  curve.gamma_star = bisection_root(f, 1e-10, curve.a_plus * (1.0 - 1e-12), 1e-13);
  curve.residual = std::abs(f(curve.gamma_star));

  const double g = curve.gamma_star;
  const double trunc = mp_integral([&](double u) { return (u - g) * (u - g); }, y, g, 1e-12);
  curve.psi = rho * nu + (1.0 - rho * nu) * (rho * (1.0 + g * g) + (1.0 - rho) * trunc);
  return curve;
}

double var_lower_schatten(double rho, double nu) {
  const SchattenCurve curve = psi_schatten(rho, nu);
  const double g = curve.gamma_star;
  const double coeff = rho * (1.0 - nu * rho);
  const double first = kSqrt2 * coeff * coeff * g * g * g * g / std::pow(curve.psi, 1.5);
  const double second = 2.0 * kSqrt2 / std::sqrt(curve.psi);
  return std::min(first, second);
}

CroftonBounds crofton_bounds(const IVDistribution& ivd, int m) {
  const int d = ivd.d();
  if (m < 0 || m > d) throw ParameterError("crofton_bounds: need 0 <= m <= d");
  CroftonBounds out;
  out.lower = ivd.cdf(m - 1);
  out.upper = ivd.cdf(m);
  // 1 - 2 h_{m+1} = P(V <= m-1) + t_m where t_j = sum_{i>=j} (-1)^{i-j} v_i;
  // the backward recursion t_j = v_j - t_{j+1} keeps each alternating tail in
  // [0, v_j], which is exactly the interlacing inequality.
  double t = 0.0;
  for (int j = d; j >= m; --j) {
    t = ivd.prob(j) - t;
    t = std::min(std::max(t, 0.0), ivd.prob(j));
  }
  out.exact = out.lower + t;
  return out;
}

GaussianPrediction gaussian_prediction(double delta, double tau_sq, double t) {
  if (!(delta > 0.0) || !(tau_sq > 0.0)) throw DomainError("gaussian_prediction: need delta, tau_sq > 0");
  GaussianPrediction out;
  out.phi_t = normal_cdf(t);
  out.preconditions_met = delta >= 8.0;
  const double alpha = tau_sq / delta;
  const double lp = log_plus(alpha * kSqrt2 * delta);
  if (out.preconditions_met && lp > 0.0) {
    out.error_budget = h_small(delta) + 48.0 / std::sqrt(alpha * lp) + 1.0 / std::sqrt(2.0 * kPi * tau_sq);
  } else {
    out.error_budget = std::numeric_limits<double>::infinity();
  }
  return out;
}

int clamp_measurement_count(double delta, double tau, double t, int d) {
  const double raw = std::floor(delta + t * tau);
  if (raw < 1.0) return 1;
  if (raw > static_cast<double>(d)) return d;
  return static_cast<int>(raw);
}

TrialOutcome recovery_trial(int d, int s, int m, const RngStream& stream, const SolverConfig& config) {
  if (!(m >= 1 && m <= d)) throw ParameterError("recovery_trial: need 1 <= m <= d");
  if (!(s >= 1 && s <= d)) throw ParameterError("recovery_trial: need 1 <= s <= d");
  RngStream local = stream;
  Mat a(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = local.next_gaussian();
  Vec x0 = Vec::Zero(d);
  x0.head(s).setOnes();
  const Vec z = a * x0;
  const SolveReport report = basis_pursuit(a, z, config);
  if (!report.converged) return TrialOutcome::kFailedToSolve;
  const double dist = (report.x_hat - x0).norm();
  const double obj_gap = std::abs(report.x_hat.cwiseAbs().sum() - static_cast<double>(s));
  const bool success = dist <= 1e-5 * (1.0 + x0.norm()) && obj_gap <= 1e-6 * static_cast<double>(s);
  return success ? TrialOutcome::kSuccess : TrialOutcome::kFailure;
}

PhaseCurve phase_curve_with_moments(int d, int s, double delta_hat, double tau_hat, const std::vector<double>& t_grid,
                                    long long trials_per_point, const RngStream& stream, int workers,
                                    const SolverConfig& config) {
  PhaseCurve curve;
  curve.delta_hat = delta_hat;
  curve.tau_hat = tau_hat;
  curve.points.resize(t_grid.size());
  const double tau_sq = tau_hat * tau_hat;

  const long long total = static_cast<long long>(t_grid.size()) * trials_per_point;
  std::vector<signed char> outcome(static_cast<std::size_t>(total), 0);
  for_each_chunk(
      total, workers,
      [&](std::int64_t, std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
          const std::size_t point = static_cast<std::size_t>(i / trials_per_point);
          const int m = clamp_measurement_count(delta_hat, tau_hat, t_grid[point], d);
          const TrialOutcome result = recovery_trial(d, s, m, stream.substream(static_cast<std::uint64_t>(i)), config);
          outcome[static_cast<std::size_t>(i)] =
              result == TrialOutcome::kSuccess ? 1 : (result == TrialOutcome::kFailure ? 0 : -1);
        }
      },
      256);

  for (std::size_t point = 0; point < t_grid.size(); ++point) {
    PhasePoint& pp = curve.points[point];
    pp.t = t_grid[point];
    pp.m = clamp_measurement_count(delta_hat, tau_hat, pp.t, d);
    for (long long k = 0; k < trials_per_point; ++k) {
      const signed char o = outcome[static_cast<std::size_t>(point) * trials_per_point + k];
      if (o < 0) {
        ++pp.failed_to_solve;
      } else {
        ++pp.trials;
        pp.successes += o;
      }
    }
    pp.p_hat = pp.trials > 0 ? static_cast<double>(pp.successes) / static_cast<double>(pp.trials) : 0.0;
    pp.se = pp.trials > 0 ? std::sqrt(std::max(pp.p_hat * (1.0 - pp.p_hat), 0.0) / static_cast<double>(pp.trials)) : 0.0;
    const GaussianPrediction pred = gaussian_prediction(delta_hat, tau_sq, pp.t);
    pp.phi_t = pred.phi_t;
    pp.error_budget = pred.error_budget;
  }
  return curve;
}

PhaseCurve phase_curve(int d, int s, const std::vector<double>& t_grid, long long trials_per_point,
                       const RngStream& stream, int workers, long long n_moments, const SolverConfig& config) {
  // moments from a disjoint substream block ahead of the trial block
  const MomentEstimates est =
      estimate_moments(ConeSpec::l1_descent(d, s), n_moments, stream.substream(1ull << 40), workers);
  const double tau_hat = std::sqrt(std::max(est.tau_sq_hat, 0.0));
  return phase_curve_with_moments(d, s, est.delta_hat, tau_hat, t_grid, trials_per_point, stream, workers, config);
}

}  // namespace conic
