#pragma once

#include <cmath>
#include <functional>

#include "conic/errors.hpp"

namespace conic {

// Bisection on a bracketed sign change of a continuous monotone function.
// Stops when |f(mid)| <= tol or the bracket width falls below tol*(1+|mid|).
inline double bisection_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!(lo < hi)) throw BracketError("bisection_root: empty bracket");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw BracketError("bisection_root: endpoints have the same sign");
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (std::abs(fmid) <= tol || (hi - lo) <= tol * (1.0 + std::abs(mid))) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace conic
