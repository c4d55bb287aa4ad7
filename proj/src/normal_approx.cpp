#include "conic/normal_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conic/parallel.hpp"
#include "conic/projection.hpp"
#include "conic/special.hpp"

namespace conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kChunk = 4096;

Vec gaussian_vec(RngStream stream, int d) {
  Vec g(d);
  for (int i = 0; i < d; ++i) g(i) = stream.next_gaussian();
  return g;
}

int draw_v(const std::vector<double>& cdf, double u) {
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
}

}  // namespace

double h_small(double delta) {
  if (!(delta > 1.0)) throw DomainError("h_small: need delta > 1");
  const double ratio = std::log(delta) / std::pow(delta, 3.0 / 16.0);
  return std::pow(ratio, 2.5) / 72.0;
}

SmoothingParameters l_and_b(double delta, double tau_sq) {
  if (!(delta > 0.0) || tau_sq < 0.0) throw DomainError("l_and_b: need delta > 0 and tau_sq >= 0");
  if (tau_sq > 2.0 * delta * (1.0 + 1e-12))
    throw InvariantError("l_and_b: tau_sq > 2 delta violates the conic variance bound");
  const double tau = std::sqrt(tau_sq);
  const double lp = log_plus(tau * tau_sq / delta);  // log+(tau^3/delta)
  SmoothingParameters out;
  out.l = std::sqrt(tau_sq / (144.0 * delta) * lp);
  out.b = out.l == 0.0 ? 0.0 : 32.0 * out.l * out.l * out.l * std::exp(9.0 * out.l * out.l * delta / tau_sq) * delta /
                                   (tau * tau_sq);
  if (out.l > tau / 8.0 + 1e-12) throw InvariantError("l_and_b: L <= tau/8 failed");
  return out;
}

double smoothing_eta_bound(const SmoothingParameters& p) {
  if (p.l == 0.0) return kInf;
  return p.b * log_plus(p.l) + 4.0 / p.l;
}

BerryEsseenVC berry_esseen_vc(double delta, double tau_sq) {
  if (!(tau_sq > 0.0)) throw DegenerateError("berry_esseen_vc: need tau_sq > 0");
  if (!(delta > 0.0)) throw DomainError("berry_esseen_vc: need delta > 0");
  BerryEsseenVC out;

  const double alpha = tau_sq / delta;
  out.simplified.name = "berry_esseen_simplified";
  out.simplified.inputs = {{"delta", delta}, {"tau_sq", tau_sq}, {"alpha", alpha}};
  out.simplified.valid = delta >= 8.0;
  const double lp_arg = log_plus(alpha * kSqrt2 * delta);
  if (delta > 1.0 && lp_arg > 0.0) {
    out.simplified.value = h_small(delta) + 48.0 / std::sqrt(alpha * lp_arg);
  } else {
    out.simplified.value = kInf;
  }
  out.simplified.vacuous = !(out.simplified.value < 1.0);

  // full form: (1/108)(tau/delta^3 v delta^{-8/3})^{3/16} (log+(tau^3/delta))^{3/2}
  //            * log+(tau^2/(144 delta) log+(tau^3/delta)) + 48 sqrt(delta/(tau^2 log+(tau^3/delta)))
  const double tau = std::sqrt(tau_sq);
  const double lp = log_plus(tau * tau_sq / delta);
  out.full.name = "berry_esseen_full";
  out.full.inputs = {{"delta", delta}, {"tau_sq", tau_sq}};
  out.full.valid = true;
  if (lp == 0.0) {
    out.full.value = kInf;
  } else {
    const double lead = std::pow(std::max(tau / std::pow(delta, 3.0), std::pow(delta, -8.0 / 3.0)), 3.0 / 16.0);
    const double l_sq = tau_sq / (144.0 * delta) * lp;
    out.full.value =
        lead * std::pow(lp, 1.5) * log_plus(l_sq) / 108.0 + 48.0 * std::sqrt(delta / (tau_sq * lp));
  }
  out.full.vacuous = !(out.full.value < 1.0);
  return out;
}

BoundReport tv_bound_projection(double delta, double sigma_sq) {
  if (!(delta > 0.0) || !(sigma_sq > 0.0)) throw DomainError("tv_bound_projection: need positive inputs");
  BoundReport out;
  out.name = "tv_projection";
  out.inputs = {{"delta", delta}, {"sigma_sq", sigma_sq}};
  out.value = std::min(16.0 * std::sqrt(delta) / sigma_sq, 8.0 / std::sqrt(delta));
  out.vacuous = !(out.value < 1.0);
  return out;
}

BoundReport tv_bound_self_dual(int d) {
  if (d < 1) throw DomainError("tv_bound_self_dual: need d >= 1");
  BoundReport out;
  out.name = "tv_self_dual";
  out.inputs = {{"d", static_cast<double>(d)}};
  out.value = 8.0 * kSqrt2 / std::sqrt(static_cast<double>(d));
  out.vacuous = !(out.value < 1.0);
  return out;
}

BoundReport tv_bound_shifted(double m, double mu_norm, double sigma_sq) {
  if (m < 0.0 || mu_norm < 0.0) throw DomainError("tv_bound_shifted: need m >= 0 and ||mu|| >= 0");
  if (!(sigma_sq > 0.0)) throw DomainError("tv_bound_shifted: need sigma_sq > 0");
  BoundReport out;
  out.name = "tv_shifted";
  out.inputs = {{"m", m}, {"mu_norm", mu_norm}, {"sigma_sq", sigma_sq}};
  out.value = 16.0 / sigma_sq * (std::sqrt(m) * (1.0 + 2.0 * mu_norm) + 3.0 * mu_norm * mu_norm + mu_norm);
  out.vacuous = !(out.value < 1.0);
  return out;
}

BoundReport tv_bound_distance(double e_dist_sq, double sigma_sq) {
  if (e_dist_sq < 0.0) throw DomainError("tv_bound_distance: need E d^2 >= 0");
  if (!(sigma_sq > 0.0)) throw DomainError("tv_bound_distance: need sigma_sq > 0");
  BoundReport out;
  out.name = "tv_distance";
  out.inputs = {{"e_dist_sq", e_dist_sq}, {"sigma_sq", sigma_sq}};
  out.value = 16.0 * std::sqrt(e_dist_sq) / sigma_sq;
  out.vacuous = !(out.value < 1.0);
  return out;
}

double concentration_laplace(double e_dist_sq, double xi) {
  if (!(xi < 0.5)) throw DomainError("concentration_laplace: need xi < 1/2");
  if (e_dist_sq < 0.0) throw DomainError("concentration_laplace: need E d^2 >= 0");
  return std::exp(2.0 * xi * xi * e_dist_sq / (1.0 - 2.0 * xi));
}

double concentration_tail(double e_dist_sq, double t) {
  if (!(t > 0.0) || !(e_dist_sq > 0.0)) throw DomainError("concentration_tail: need t > 0 and E d^2 > 0");
  const double u = t / (2.0 * e_dist_sq);
  const double h = 1.0 + u - std::sqrt(1.0 + 2.0 * u);
  return std::exp(-e_dist_sq * h);
}

TailPoint concentration_tail_alt(double e_dist_sq, double t) {
  if (!(t > 0.0) || !(e_dist_sq > 0.0)) throw DomainError("concentration_tail_alt: need t > 0 and E d^2 > 0");
  return TailPoint{std::sqrt(8.0 * e_dist_sq * t) + 2.0 * t, std::exp(-t)};
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ParameterError("EmpiricalCdf: empty sample");
  std::sort(values_.begin(), values_.end());
}

double kolmogorov_distance(const EmpiricalCdf& sample) {
  const auto& xs = sample.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double phi = normal_cdf(xs[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - phi);
    d = std::max(d, phi - static_cast<double>(i) / n);
  }
  return d;
}

std::vector<double> sample_W(const IVDistribution& ivd, long long n, const RngStream& stream, int workers) {
  if (n < 1) throw ParameterError("sample_W: need n >= 1");
  std::vector<double> cdf(ivd.probs().size());
  double run = 0.0;
  for (std::size_t j = 0; j < cdf.size(); ++j) {
    run += ivd.prob(static_cast<int>(j));
    cdf[j] = run;
  }
  cdf.back() = 1.0;
  const double scale = 1.0 / std::sqrt(2.0 * ivd.delta());
  std::vector<double> out(static_cast<std::size_t>(n));
  for_each_chunk(
      n, workers,
      [&](std::int64_t, std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
          RngStream trial = stream.substream(static_cast<std::uint64_t>(i));
          const int v = draw_v(cdf, trial.next_uniform());
          double w = 0.0;
          for (int k = 0; k < v; ++k) {
            const double z = trial.next_gaussian();
            w += z * z - 1.0;
          }
          out[static_cast<std::size_t>(i)] = w * scale;
        }
      },
      kChunk);
  return out;
}

CharIdentityReport char_identity_check(const ConeSpec& cone, const std::vector<double>& t_grid, long long n,
                                       const RngStream& stream, int workers) {
  if (n < 1) throw ParameterError("char_identity_check: need n >= 1");
  if (!supports_face_dimension(cone))
    throw CapabilityError("char_identity_check: cone must support face counting");
  const int d = cone.ambient_dimension();
  const IVDistribution ivd = exact_distribution(cone);
  const double delta = ivd.delta();
  const double tau = std::sqrt(ivd.tau_sq());

  const std::size_t nt = t_grid.size();
  const std::int64_t n_chunks = chunk_count(n, kChunk);
  struct ChunkAcc {
    std::vector<std::complex<double>> lhs, rhs;
    std::vector<double> diff_re2, diff_im2;
    double w = 0.0, v = 0.0, wv = 0.0, w2 = 0.0, v2 = 0.0;
  };
  std::vector<ChunkAcc> acc(static_cast<std::size_t>(n_chunks));

  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        ChunkAcc& a = acc[static_cast<std::size_t>(c)];
        a.lhs.assign(nt, {0.0, 0.0});
        a.rhs.assign(nt, {0.0, 0.0});
        a.diff_re2.assign(nt, 0.0);
        a.diff_im2.assign(nt, 0.0);
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          const Vec pi = project_point(cone, g);
          const double big_g = pi.squaredNorm();
          const int v = face_dimension(cone, g);
          for (std::size_t k = 0; k < nt; ++k) {
            const double t = t_grid[k];
            const std::complex<double> lhs = std::exp(std::complex<double>(0.0, t * v));
            // xi_{it} = (1 - e^{-2it})/2
            const std::complex<double> xi(0.5 * (1.0 - std::cos(2.0 * t)), 0.5 * std::sin(2.0 * t));
            const std::complex<double> rhs = std::exp(xi * big_g);
            a.lhs[k] += lhs;
            a.rhs[k] += rhs;
            const std::complex<double> diff = lhs - rhs;
            a.diff_re2[k] += diff.real() * diff.real();
            a.diff_im2[k] += diff.imag() * diff.imag();
          }
          // joint CLT diagnostic: standardized (W, V) with W = G - V
          const double w_std = (big_g - v) / std::sqrt(2.0 * delta);
          const double v_std = tau > 0.0 ? (v - delta) / tau : 0.0;
          a.w += w_std;
          a.v += v_std;
          a.wv += w_std * v_std;
          a.w2 += w_std * w_std;
          a.v2 += v_std * v_std;
        }
      },
      kChunk);

  CharIdentityReport report;
  report.points.resize(nt);
  const double nn = static_cast<double>(n);
  double sw = 0, sv = 0, swv = 0, sw2 = 0, sv2 = 0;
  for (const ChunkAcc& a : acc) {
    sw += a.w;
    sv += a.v;
    swv += a.wv;
    sw2 += a.w2;
    sv2 += a.v2;
  }
  const double cov = swv / nn - (sw / nn) * (sv / nn);
  const double var_w = sw2 / nn - (sw / nn) * (sw / nn);
  const double var_v = sv2 / nn - (sv / nn) * (sv / nn);
  report.joint_correlation = (var_w > 0 && var_v > 0) ? cov / std::sqrt(var_w * var_v) : 0.0;

  for (std::size_t k = 0; k < nt; ++k) {
    std::complex<double> lhs{0.0, 0.0}, rhs{0.0, 0.0};
    double re2 = 0.0, im2 = 0.0;
    for (const ChunkAcc& a : acc) {
      lhs += a.lhs[k];
      rhs += a.rhs[k];
      re2 += a.diff_re2[k];
      im2 += a.diff_im2[k];
    }
    CharIdentityPoint& pt = report.points[k];
    pt.t = t_grid[k];
    pt.lhs = lhs / nn;
    pt.rhs = rhs / nn;
    const std::complex<double> diff = pt.lhs - pt.rhs;
    pt.discrepancy = std::abs(diff);
    const double var_re = std::max(re2 / nn - diff.real() * diff.real(), 0.0);
    const double var_im = std::max(im2 / nn - diff.imag() * diff.imag(), 0.0);
    pt.se = std::sqrt((var_re + var_im) / nn);
    report.max_discrepancy = std::max(report.max_discrepancy, pt.discrepancy);
  }
  return report;
}

RateConstantCheck rate_constant_check(const IVDistribution& ivd, double x, long long n, const RngStream& stream,
                                      int workers) {
  if (ivd.delta() < 50.0) throw ParameterError("rate_constant_check: needs delta >= 50 (large-dimension regime)");
  const double delta = ivd.delta();
  const double sigma = std::sqrt(ivd.sigma_sq());
  const double r = ivd.tau_sq() / delta;
  const std::vector<double> w = sample_W(ivd, n, stream, workers);
  long long count = 0;
  for (double value : w)
    if (value <= x) ++count;
  const double f_hat = static_cast<double>(count) / static_cast<double>(n);
  RateConstantCheck out;
  out.lhs_hat = delta / sigma * (f_hat - normal_cdf(x));
  out.rhs = -std::sqrt(2.0 / (18.0 + 9.0 * r)) * (x * x - 1.0) * normal_pdf(x);
  out.error_bar = delta / sigma * std::sqrt(std::max(f_hat * (1.0 - f_hat), 1e-12) / static_cast<double>(n));
  return out;
}

}  // namespace conic
