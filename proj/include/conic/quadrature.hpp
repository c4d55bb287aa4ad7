#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "conic/errors.hpp"
#include "conic/special.hpp"

namespace conic {

// Unit-density quadrature rule on [a,b]: weights sum to b-a, nodes interior.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ParameterError("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    rule.nodes[n - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    rule.weights[i] = 0.5 * (b - a) * w;
    rule.weights[n - 1 - i] = 0.5 * (b - a) * w;
  }
  return rule;
}

namespace detail {

inline double simpson_panel(double h, double fa, double fm, double fb) { return h / 6.0 * (fa + 4.0 * fm + fb); }

inline double adaptive_simpson_recur(const std::function<double(double)>& f, double a, double b, double eps, int depth,
                                     double fa, double fm, double fb, double whole) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  if (!std::isfinite(flm) || !std::isfinite(frm)) throw DomainError("adaptive_integral: non-finite integrand value");
  const double left = simpson_panel(m - a, fa, flm, fm);
  const double right = simpson_panel(b - m, fm, frm, fb);
  const double diff = (left + right) - whole;
  if (std::abs(diff) <= 15.0 * eps || depth <= 0 || (b - a) <= 1e-13 * (std::abs(a) + std::abs(b) + 1.0)) {
    return left + right + diff / 15.0;  // Richardson correction
  }
  return adaptive_simpson_recur(f, a, m, 0.5 * eps, depth - 1, fa, flm, fm, left) +
         adaptive_simpson_recur(f, m, b, 0.5 * eps, depth - 1, fm, frm, fb, right);
}

}  // namespace detail

// Adaptive Simpson with Richardson extrapolation.  The integrand must be
// finite on [a,b]; singular endpoints are expected to be removed by a
// substitution before calling (see mp_integral below).
inline double adaptive_integral(const std::function<double(double)>& f, double a, double b, double tol = 1e-10) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_integral(f, b, a, tol);
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw DomainError("adaptive_integral: non-finite integrand value");
  const double whole = detail::simpson_panel(b - a, fa, fm, fb);
  return detail::adaptive_simpson_recur(f, a, b, tol, 36, fa, fm, fb, whole);
}

// Marchenko-Pastur singular-value density with ratio y in (0,1]:
//   phi_y(u) = sqrt((u^2-a_-^2)(a_+^2-u^2)) / (pi y u),  a_pm = 1 -+ sqrt(y).
inline double mp_density(double y, double u) {
  const double am = 1.0 - std::sqrt(y);
  const double ap = 1.0 + std::sqrt(y);
  if (u <= am || u >= ap) return 0.0;
  return std::sqrt((u * u - am * am) * (ap * ap - u * u)) / (kPi * y * u);
}

// Integral of f(u) * phi_y(u) over [max(a_-, lo), a_+] under the substitution
// u^2 = a_-^2 + (a_+^2 - a_-^2) sin^2(theta), which removes the square-root
// vanishing of phi_y at both edges (a_- may be 0 when y = 1).
inline double mp_integral(const std::function<double(double)>& f, double y, double lo = 0.0, double tol = 1e-12) {
  if (!(y > 0.0) || y > 1.0) throw DomainError("mp_integral: need y in (0,1]");
  const double am = 1.0 - std::sqrt(y);
  const double ap = 1.0 + std::sqrt(y);
  if (lo >= ap) return 0.0;
  const double am2 = am * am;
  const double delta = ap * ap - am2;  // = 4 sqrt(y)
  double theta0 = 0.0;
  if (lo > am) {
    double s2 = (lo * lo - am2) / delta;
    s2 = std::min(std::max(s2, 0.0), 1.0);
    theta0 = std::asin(std::sqrt(s2));
  }
  auto g = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double u2 = am2 + delta * s * s;
    const double u = std::sqrt(u2);
    // s^2/u^2 == 1/delta identically when a_- = 0; avoids 0/0 at theta = 0
    const double ratio = am2 == 0.0 ? 1.0 / delta : s * s / u2;
    return f(u) * delta * delta * ratio * c * c / (kPi * y);
  };
  return adaptive_integral(g, theta0, 0.5 * kPi, tol);
}

}  // namespace conic
