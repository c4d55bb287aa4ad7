#include <doctest.h>

#include <cmath>

#include "conic/rng.hpp"
#include "conic/solver.hpp"

using namespace conic;

namespace {

Mat gaussian_mat(RngStream& s, int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = s.next_gaussian();
  return m;
}

}  // namespace

TEST_CASE("basis pursuit with the identity matrix returns the data") {
  RngStream s(1, 0);
  Vec z(6);
  for (int i = 0; i < 6; ++i) z(i) = s.next_gaussian();
  const SolveReport rep = basis_pursuit(Mat::Identity(6, 6), z);
  CHECK(rep.converged);
  CHECK((rep.x_hat - z).norm() < 1e-8);
}

TEST_CASE("square nonsingular systems recover the unique feasible point") {
  RngStream s(2, 0);
  const Mat a = gaussian_mat(s, 5, 5);
  Vec x0(5);
  for (int i = 0; i < 5; ++i) x0(i) = s.next_gaussian();
  const SolveReport rep = basis_pursuit(a, a * x0);
  CHECK(rep.converged);
  CHECK((rep.x_hat - x0).norm() < 1e-6 * (1.0 + x0.norm()));
}

TEST_CASE("sparse recovery in the easy regime") {
  RngStream s(3, 0);
  const Mat a = gaussian_mat(s, 18, 20);
  Vec x0 = Vec::Zero(20);
  x0(0) = 1.0;
  const SolveReport rep = basis_pursuit(a, a * x0);
  CHECK(rep.converged);
  CHECK((rep.x_hat - x0).norm() <= 1e-5);
}

TEST_CASE("feasibility of every converged report") {
  RngStream stream(4, 0);
  for (int trial = 0; trial < 50; ++trial) {
    RngStream s = stream.substream(trial);
    const int d = 4 + static_cast<int>(s.next_u64() % 17);
    const int m = 1 + static_cast<int>(s.next_u64() % d);
    const Mat a = gaussian_mat(s, m, d);
    Vec x0 = Vec::Zero(d);
    for (int k = 0; k < std::max(1, m / 2); ++k) x0(k) = s.next_gaussian();
    const Vec z = a * x0;
    const SolveReport rep = basis_pursuit(a, z);
    if (rep.converged) CHECK((a * rep.x_hat - z).norm() <= 1e-8 * (1.0 + z.norm()));
  }
}

TEST_CASE("objective matches the small-instance oracle") {
  RngStream stream(42, 0);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    RngStream s = stream.substream(trial + 1);
    const int d = 3 + static_cast<int>(s.next_u64() % 6);
    const int m = 1 + static_cast<int>(s.next_u64() % d);
    const Mat a = gaussian_mat(s, m, d);
    Vec x0 = Vec::Zero(d);
    const int nz = 1 + static_cast<int>(s.next_u64() % m);
    for (int k = 0; k < nz; ++k) x0(k) = s.next_gaussian();
    const Vec z = a * x0;
    const SolveReport bp = basis_pursuit(a, z);
    const LpOracleResult oracle = lp_oracle_small(a, z);
    REQUIRE(oracle.feasible);
    REQUIRE(bp.converged);
    CHECK(std::abs(bp.x_hat.cwiseAbs().sum() - oracle.optimal_value) <= 1e-6 * (1.0 + oracle.optimal_value));
    ++solved;
  }
  CHECK(solved == 60);
}

TEST_CASE("deterministic iteration counts") {
  RngStream s(5, 0);
  const Mat a = gaussian_mat(s, 6, 12);
  Vec x0 = Vec::Zero(12);
  x0(0) = 1.0;
  x0(3) = -2.0;
  const Vec z = a * x0;
  const SolveReport first = basis_pursuit(a, z);
  const SolveReport second = basis_pursuit(a, z);
  CHECK(first.iterations == second.iterations);
  CHECK((first.x_hat - second.x_hat).norm() == 0.0);
}

TEST_CASE("minimize_1d_convex") {
  const Minimize1dResult quad = minimize_1d_convex([](double x) { return (x - 2.0) * (x - 2.0); }, 0.0, 1e-10);
  CHECK(std::abs(quad.x_star - 2.0) <= 1e-6);

  // boundary minimum at lo
  const Minimize1dResult boundary = minimize_1d_convex([](double x) { return x * x + x; }, 0.0, 1e-10);
  CHECK(boundary.x_star == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(boundary.f_star == doctest::Approx(0.0));

  // returned point never loses to probed neighbors at spacing tol
  RngStream stream(6, 0);
  for (int trial = 0; trial < 50; ++trial) {
    RngStream s = stream.substream(trial);
    const double center = 5.0 * s.next_gaussian();
    const double curv = 0.1 + 3.0 * s.next_uniform();
    auto f = [center, curv](double x) { return curv * (x - center) * (x - center) + std::abs(x); };
    const double tol = 1e-8;
    const Minimize1dResult fit = minimize_1d_convex(f, -20.0, tol);
    CHECK(fit.f_star <= f(fit.x_star - tol) + 1e-12);
    CHECK(fit.f_star <= f(fit.x_star + tol) + 1e-12);
  }

  CHECK_THROWS_AS(minimize_1d_convex([](double x) { return -x; }, 0.0, 1e-10), DivergenceError);

  // the l1 polar distance objective: golden-section matches a 1e-6 grid scan
  RngStream gs(7, 0);
  Vec x(5);
  for (int i = 0; i < 5; ++i) x(i) = gs.next_gaussian();
  const int support = 2;
  auto objective = [&](double g) {
    double f = 0.0;
    for (int i = 0; i < support; ++i) f += (x(i) - g) * (x(i) - g);
    for (int i = support; i < 5; ++i) {
      const double r = std::abs(x(i)) - g;
      if (r > 0) f += r * r;
    }
    return f;
  };
  const Minimize1dResult fit = minimize_1d_convex(objective, 0.0, 1e-9);
  double best_g = 0.0, best = objective(0.0);
  for (double g = 0.0; g <= 4.0; g += 1e-6) {
    const double f = objective(g);
    if (f < best) {
      best = f;
      best_g = g;
    }
  }
  CHECK(std::abs(fit.x_star - best_g) <= 2e-6);
}

TEST_CASE("lp oracle") {
  // identity: minimal l1 norm of a feasible point is ||z||_1
  Vec z(2);
  z << 1.5, -2.0;
  const LpOracleResult id = lp_oracle_small(Mat::Identity(2, 2), z);
  CHECK(id.feasible);
  CHECK(id.optimal_value == doctest::Approx(3.5).epsilon(1e-12));

  // infeasible data with a rank-deficient matrix
  Mat rank1(2, 3);
  rank1 << 1, 1, 1, 1, 1, 1;
  Vec bad(2);
  bad << 1.0, 2.0;
  CHECK_FALSE(lp_oracle_small(rank1, bad).feasible);

  CHECK_THROWS_AS(lp_oracle_small(Mat::Zero(2, 11), Vec::Zero(2)), CapabilityError);
}
