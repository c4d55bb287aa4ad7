#include "conic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace conic {

namespace {

Vec soft_threshold(const Vec& v, double kappa) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i)) - kappa;
    out(i) = a > 0.0 ? (v(i) > 0.0 ? a : -a) : 0.0;
  }
  return out;
}

}  // namespace

SolveReport basis_pursuit(const Mat& a, const Vec& z, const SolverConfig& config) {
  const Eigen::Index m = a.rows();
  const Eigen::Index d = a.cols();
  if (z.size() != m) throw ShapeError("basis_pursuit: right-hand side length mismatch");
  if (m > d) throw ShapeError("basis_pursuit: need m <= d");

  // cached factorization of A A^T for the affine projection
  Eigen::LLT<Mat> llt(Mat(a * a.transpose()));
  if (llt.info() != Eigen::Success) throw ShapeError("basis_pursuit: A A^T not positive definite (rank-deficient A)");
  auto affine_project = [&](const Vec& v) -> Vec { return v - a.transpose() * llt.solve(a * v - z); };

  double rho = config.penalty;
  Vec y = affine_project(Vec::Zero(d));  // least-norm feasible point
  Vec x = y;
  Vec u = Vec::Zero(d);

  SolveReport report;
  const double z_scale = 1.0 + z.norm();
  const double relax = 1.8;  // over-relaxation
  for (int k = 1; k <= config.max_iterations; ++k) {
    x = soft_threshold(y - u, 1.0 / rho);
    const Vec y_prev = y;
    const Vec x_relaxed = relax * x + (1.0 - relax) * y_prev;
    y = affine_project(x_relaxed + u);
    u += x_relaxed - y;

    const double r_norm = (x - y).norm();
    const double s_norm = rho * (y - y_prev).norm();
    report.iterations = k;
    report.primal_residual = r_norm;
    report.dual_residual = s_norm;
    const double x_scale = 1.0 + std::max(x.norm(), y.norm());
    if (r_norm <= config.primal_tol * x_scale && s_norm <= config.dual_tol * x_scale) {
      report.converged = true;
      break;
    }
    // residual balancing with factor-2 updates; u is the scaled dual variable
    if (k % 10 == 0 && rho > 1e-6 && rho < 1e6) {
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        u *= 0.5;
      } else if (s_norm > 10.0 * r_norm) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }
  report.x_hat = y;  // the feasible iterate
  report.primal_residual = (a * report.x_hat - z).norm();
  if (report.converged && report.primal_residual > config.primal_tol * z_scale) report.converged = false;

  // Active-set polish: the splitting iteration identifies the support long
  // before the iterates settle, so solve on that support directly and accept
  // when the LP dual certificate holds (A_S^T nu = sign(x_S), |a_j^T nu| <= 1
  // off support).  This also rescues near-degenerate instances where the
  // iteration enters a limit cycle.
  std::vector<int> support;
  for (Eigen::Index j = 0; j < d; ++j)
    if (x(j) != 0.0) support.push_back(static_cast<int>(j));
  const int s_size = static_cast<int>(support.size());
  if (s_size >= 1 && s_size <= static_cast<int>(m)) {
    Mat sub(m, s_size);
    for (int c = 0; c < s_size; ++c) sub.col(c) = a.col(support[c]);
    const Vec xs = sub.colPivHouseholderQr().solve(z);
    if (xs.allFinite() && (sub * xs - z).norm() <= config.primal_tol * z_scale) {
      Vec sign_s(s_size);
      bool signs_ok = true;
      for (int c = 0; c < s_size; ++c) {
        if (xs(c) == 0.0) signs_ok = false;
        sign_s(c) = xs(c) > 0.0 ? 1.0 : -1.0;
      }
      if (signs_ok) {
        const Vec nu = sub.transpose().colPivHouseholderQr().solve(sign_s);
        bool certified = (sub.transpose() * nu - sign_s).norm() <= 1e-8 * std::sqrt(static_cast<double>(s_size));
        for (Eigen::Index j = 0; j < d && certified; ++j) {
          if (std::binary_search(support.begin(), support.end(), static_cast<int>(j))) continue;
          if (std::abs(a.col(j).dot(nu)) > 1.0 + 1e-8) certified = false;
        }
        if (certified) {
          Vec polished = Vec::Zero(d);
          for (int c = 0; c < s_size; ++c) polished(support[c]) = xs(c);
          report.x_hat = std::move(polished);
          report.primal_residual = (a * report.x_hat - z).norm();
          report.converged = true;
        }
      }
    }
  }
  return report;
}

Minimize1dResult minimize_1d_convex(const std::function<double(double)>& f, double lo, double tol) {
  if (!(tol > 0.0)) throw ParameterError("minimize_1d_convex: tol must be positive");
  int evals = 0;
  auto eval = [&](double t) {
    ++evals;
    const double v = f(t);
    if (!std::isfinite(v)) throw DomainError("minimize_1d_convex: non-finite objective value");
    return v;
  };

  // bracket by doubling: a = lo fixed, expand c until f rises past the interior point
  double a = lo;
  double fa = eval(a);
  double step = std::max(tol, 1e-3 * (1.0 + std::abs(lo)));
  double b = lo + step;
  double fb = eval(b);
  double c = lo + 2.0 * step;
  double fc = eval(c);
  const double span_cap = 1e6 * (1.0 + std::abs(lo) + step);
  while (fc <= fb) {
    if (c - lo > span_cap) throw DivergenceError("minimize_1d_convex: objective keeps decreasing (non-coercive?)");
    b = c;
    fb = fc;
    c = lo + 2.0 * (c - lo);
    fc = eval(c);
  }
  // now either fb <= fa (interior minimum bracketed) or the minimum is at lo
  if (fb > fa) {
    c = b;
    fc = fb;
    b = 0.5 * (a + c);  // keep a valid triple with the minimum in [a, c]
    fb = eval(b);
  }

  // golden-section on [a, c]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - gr * (c - a);
  double x2 = a + gr * (c - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (c - a > tol) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - gr * (c - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (c - a);
      f2 = eval(x2);
    }
  }

  double x_star = f1 <= f2 ? x1 : x2;
  double f_star = std::min(f1, f2);
  // triple-point certificate at spacing tol: never return a point that loses
  // to a probed neighbor
  const double left = std::max(lo, x_star - tol);
  const double fl = eval(left);
  const double fr = eval(x_star + tol);
  if (fl < f_star) {
    x_star = left;
    f_star = fl;
  }
  if (fr < f_star) {
    x_star = x_star + tol;
    f_star = fr;
  }
  if (fa < f_star) {
    x_star = lo;
    f_star = fa;
  }
  return Minimize1dResult{x_star, f_star, evals};
}

LpOracleResult lp_oracle_small(const Mat& a, const Vec& z) {
  const int m = static_cast<int>(a.rows());
  const int d = static_cast<int>(a.cols());
  if (d > 10) throw CapabilityError("lp_oracle_small: only instances with d <= 10");
  if (z.size() != m) throw ShapeError("lp_oracle_small: right-hand side length mismatch");

  const double z_scale = 1.0 + z.norm();
  LpOracleResult best;
  best.feasible = false;
  best.optimal_value = std::numeric_limits<double>::infinity();

  // the optimum is attained at a basic solution: support size <= m
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size > m) continue;
    std::vector<int> support;
    support.reserve(size);
    for (int j = 0; j < d; ++j)
      if (mask & (1u << j)) support.push_back(j);

    Mat sub(m, size);
    for (int c = 0; c < size; ++c) sub.col(c) = a.col(support[c]);
    Vec xs;
    if (size == 0) {
      xs = Vec::Zero(0);
    } else {
      xs = sub.colPivHouseholderQr().solve(z);
      if (!xs.allFinite()) continue;
    }
    const double residual = size == 0 ? z.norm() : (sub * xs - z).norm();
    if (residual > 1e-9 * z_scale) continue;
    const double value = size == 0 ? 0.0 : xs.cwiseAbs().sum();
    if (value < best.optimal_value) {
      best.feasible = true;
      best.optimal_value = value;
      best.x = Vec::Zero(d);
      for (int c = 0; c < size; ++c) best.x(support[c]) = xs(c);
    }
  }
  if (!best.feasible) best.optimal_value = std::numeric_limits<double>::infinity();
  return best;
}

}  // namespace conic
