#include <doctest.h>

#include <cmath>
#include <limits>

#include "conic/intrinsic_volumes.hpp"
#include "conic/normal_approx.hpp"
#include "conic/special.hpp"

using namespace conic;

TEST_CASE("h_small: pinned values") {
  // delta = e: log delta = 1
  CHECK(h_small(std::exp(1.0)) ==
        doctest::Approx(std::pow(std::pow(std::exp(1.0), -3.0 / 16.0), 2.5) / 72.0).epsilon(1e-14));
  CHECK(h_small(8.0) == doctest::Approx(0.03267464377940172).epsilon(1e-12));
  CHECK(h_small(100.0) == doctest::Approx(0.07299308420946421).epsilon(1e-12));
  CHECK_THROWS_AS(h_small(1.0), DomainError);
  CHECK_THROWS_AS(h_small(0.5), DomainError);
}

TEST_CASE("berry-esseen bound for V") {
  // alpha sqrt(2) delta <= 1 makes the log+ vanish: bound is infinite
  const BerryEsseenVC vac = berry_esseen_vc(8.0, 0.5);
  CHECK(vac.simplified.value == std::numeric_limits<double>::infinity());
  CHECK(vac.simplified.valid);

  // monotone decay at fixed alpha = 1/2
  const BerryEsseenVC big = berry_esseen_vc(1e6, 0.5e6);
  const BerryEsseenVC small = berry_esseen_vc(1e3, 0.5e3);
  CHECK(big.simplified.value < small.simplified.value);

  // orthant d=200 scale: finite
  const BerryEsseenVC orthant = berry_esseen_vc(100.0, 50.0);
  CHECK(std::isfinite(orthant.simplified.value));
  CHECK(orthant.simplified.value ==
        doctest::Approx(h_small(100.0) + 48.0 / std::sqrt(0.5 * std::log(0.5 * kSqrt2 * 100.0))).epsilon(1e-12));

  CHECK_THROWS_AS(berry_esseen_vc(100.0, 0.0), DegenerateError);
}

TEST_CASE("full Berry-Esseen form equals the smoothing bound B log+L + 4/L") {
  RngStream stream(33, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    RngStream s = stream.substream(trial);
    const double delta = 1.0 + 5000.0 * s.next_uniform();
    const double tau_sq = 2.0 * delta * s.next_uniform();
    if (tau_sq <= 0.0) continue;
    const SmoothingParameters p = l_and_b(delta, tau_sq);
    CHECK(p.l <= std::sqrt(tau_sq) / 8.0 + 1e-12);  // guaranteed whenever tau^2 <= 2 delta
    const double via_lemma = smoothing_eta_bound(p);
    const double full = berry_esseen_vc(delta, tau_sq).full.value;
    if (std::isinf(via_lemma)) {
      CHECK(std::isinf(full));
    } else {
      CHECK(full == doctest::Approx(via_lemma).epsilon(1e-10));
    }
  }
  // tau^3 <= delta: L = 0
  CHECK(l_and_b(100.0, 4.0).l == 0.0);
  CHECK_THROWS_AS(l_and_b(10.0, 30.0), InvariantError);
}

TEST_CASE("tv bounds: pinned evaluations") {
  CHECK(tv_bound_projection(100.0, 200.0).value == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(tv_bound_projection(64.0, 256.0).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tv_bound_self_dual(128).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(tv_bound_projection(0.0, 1.0), DomainError);

  // mu = 0 reduction agrees with the distance form
  CHECK(tv_bound_shifted(25.0, 0.0, 100.0).value == doctest::Approx(tv_bound_distance(25.0, 100.0).value));
  CHECK(tv_bound_shifted(25.0, 1.0, 100.0).value == doctest::Approx(3.04).epsilon(1e-14));
  CHECK(tv_bound_shifted(0.0, 0.0, 10.0).value == 0.0);
  CHECK(tv_bound_distance(0.0, 5.0).value == 0.0);
  CHECK(tv_bound_distance(100.0, 200.0).value == doctest::Approx(0.8).epsilon(1e-14));

  // monotone in delta along sigma^2 = 2 delta
  double prev = 1e300;
  for (double delta = 4.0; delta <= 4096.0; delta *= 2.0) {
    const double value = tv_bound_projection(delta, 2.0 * delta).value;
    CHECK(value < prev);
    prev = value;
  }
}

TEST_CASE("concentration bounds") {
  CHECK(concentration_laplace(10.0, 0.0) == 1.0);
  CHECK(concentration_laplace(10.0, 0.25) == doctest::Approx(std::exp(2.5)).epsilon(1e-14));
  CHECK_THROWS_AS(concentration_laplace(10.0, 0.5), DomainError);

  CHECK(concentration_tail(10.0, 10.0) == doctest::Approx(0.42406676298769364).epsilon(1e-12));
  CHECK_THROWS_AS(concentration_tail(10.0, 0.0), DomainError);
  const TailPoint alt = concentration_tail_alt(10.0, 2.0);
  CHECK(alt.threshold == doctest::Approx(std::sqrt(160.0) + 4.0).epsilon(1e-14));
  CHECK(alt.bound == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("empirical laplace transform respects the concentration bound") {
  // orthant d=20, xi = 0.1: E exp(xi F) with F = G - delta
  const long long n = 100000;
  RngStream stream(55, 0);
  NeumaierSum sum, sum_sq;
  const double xi = 0.1;
  for (long long i = 0; i < n; ++i) {
    RngStream s = stream.substream(static_cast<std::uint64_t>(i));
    double g_sq = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double z = s.next_gaussian();
      if (z > 0.0) g_sq += z * z;
    }
    const double value = std::exp(xi * (g_sq - 10.0));
    sum.add(value);
    sum_sq.add(value * value);
  }
  const double mean = sum.value() / static_cast<double>(n);
  const double var = sum_sq.value() / static_cast<double>(n) - mean * mean;
  CHECK(mean <= concentration_laplace(10.0, xi) + 4.0 * std::sqrt(var / static_cast<double>(n)));
}

TEST_CASE("kolmogorov distance") {
  // quantile construction: empirical CDF within 1/(2n) of Phi at the samples
  const int n = 100;
  std::vector<double> sample;
  for (int i = 1; i <= n; ++i) sample.push_back(normal_quantile((i - 0.5) / n));
  CHECK(kolmogorov_distance(EmpiricalCdf(std::move(sample))) <= 0.005 + 1e-12);

  CHECK(kolmogorov_distance(EmpiricalCdf({0.0})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(EmpiricalCdf({}), ParameterError);
}

TEST_CASE("sample_W: point mass reduces to a centered chi-square") {
  const IVDistribution sub = exact_distribution(ConeSpec::subspace(8, 5));
  const long long n = 50000;
  const std::vector<double> w = sample_W(sub, n, RngStream(66, 0), 4);
  NeumaierSum mean, second;
  for (double value : w) {
    mean.add(value);
    second.add(value * value);
  }
  const double m = mean.value() / static_cast<double>(n);
  const double var = second.value() / static_cast<double>(n) - m * m;
  CHECK(std::abs(m) <= 4.0 / std::sqrt(static_cast<double>(n)));
  // Var(W/sqrt(2 delta)) = 1; chi-square fourth-moment se band
  CHECK(std::abs(var - 1.0) <= 4.0 * std::sqrt(3.0 / static_cast<double>(n)));
}

TEST_CASE("sample_W orthant: variance one and normal distance within the TV bound") {
  const IVDistribution ivd = exact_distribution(ConeSpec::orthant(100));
  const long long n = 100000;
  const std::vector<double> w = sample_W(ivd, n, RngStream(67, 0), 4);
  NeumaierSum mean, second;
  for (double value : w) {
    mean.add(value);
    second.add(value * value);
  }
  const double m = mean.value() / static_cast<double>(n);
  const double var = second.value() / static_cast<double>(n) - m * m;
  CHECK(std::abs(m) <= 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) <= 4.0 * std::sqrt(3.0 / static_cast<double>(n)));
  const double ks = kolmogorov_distance(EmpiricalCdf(w));
  CHECK(ks <= 2.0 * std::sqrt(ivd.sigma_sq()) / ivd.delta() + 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("characteristic-function identity on integrable t values") {
  const CharIdentityReport rep =
      char_identity_check(ConeSpec::orthant(10), {0.0, 0.25, 0.5}, 100000, RngStream(68, 0), 4);
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.points[0].discrepancy == doctest::Approx(0.0));  // t = 0: both sides are exactly 1
  for (const CharIdentityPoint& p : rep.points) {
    CAPTURE(p.t);
    CHECK(p.discrepancy <= 4.0 * p.se + 1e-12);
  }
  CHECK(rep.points[1].discrepancy <= 0.02);  // t = 0.25: small-variance regime

  // subspace: lhs is exactly e^{itk}; empirical rhs within its own se band
  const CharIdentityReport sub = char_identity_check(ConeSpec::subspace(6, 3), {0.25}, 50000, RngStream(69, 0), 4);
  CHECK(std::abs(sub.points[0].lhs - std::exp(std::complex<double>(0.0, 0.25 * 3.0))) < 1e-12);
  CHECK(sub.points[0].discrepancy <= 4.0 * sub.points[0].se);
}

TEST_CASE("standardized squared projection length is near-normal for large orthants") {
  // Kolmogorov distance <= min(1, 8/sqrt(delta)) + 4 se (TV dominates Kolmogorov)
  const long long n = 20000;
  for (int d : {64, 256}) {
    CAPTURE(d);
    const ConeSpec cone = ConeSpec::orthant(d);
    const double delta = 0.5 * d;
    const double sigma = std::sqrt(2.0 * delta + 0.25 * d);
    std::vector<double> vals(static_cast<std::size_t>(n));
    const RngStream stream(72, static_cast<std::uint64_t>(d));
    for (long long i = 0; i < n; ++i) {
      RngStream s = stream.substream(static_cast<std::uint64_t>(i));
      double g_sq = 0.0;
      for (int k = 0; k < d; ++k) {
        const double z = s.next_gaussian();
        if (z > 0.0) g_sq += z * z;
      }
      vals[static_cast<std::size_t>(i)] = (g_sq - delta) / sigma;
    }
    const double ks = kolmogorov_distance(EmpiricalCdf(std::move(vals)));
    CHECK(ks <= std::min(1.0, 8.0 / std::sqrt(delta)) + 4.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("rate constant check") {
  const IVDistribution ivd = exact_distribution(ConeSpec::orthant(400));
  // x = 1: the (x^2 - 1) factor kills the limit
  const RateConstantCheck at_one = rate_constant_check(ivd, 1.0, 2000, RngStream(70, 0));
  CHECK(at_one.rhs == 0.0);

  const double r = ivd.tau_sq() / ivd.delta();
  CHECK(r == doctest::Approx(0.5));
  const RateConstantCheck at_zero = rate_constant_check(ivd, 0.0, 200000, RngStream(71, 0), 4);
  CHECK(at_zero.rhs == doctest::Approx(0.11894160774351809).epsilon(1e-12));
  CHECK(std::abs(at_zero.lhs_hat - at_zero.rhs) <= 3.0 * at_zero.error_bar);

  CHECK_THROWS_AS(rate_constant_check(exact_distribution(ConeSpec::orthant(10)), 0.0, 10, RngStream(0, 0)),
                  ParameterError);
}
