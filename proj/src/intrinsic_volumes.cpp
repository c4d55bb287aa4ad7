#include "conic/intrinsic_volumes.hpp"

#include <algorithm>
#include <cmath>

#include "conic/parallel.hpp"
#include "conic/projection.hpp"
#include "conic/special.hpp"

namespace conic {

namespace {

constexpr std::int64_t kChunk = 4096;

Vec gaussian_vec(RngStream stream, int d) {
  Vec g(d);
  for (int i = 0; i < d; ++i) g(i) = stream.next_gaussian();
  return g;
}

std::vector<double> binomial_half_row(int d) {
  std::vector<double> p(static_cast<std::size_t>(d) + 1);
  p[0] = std::ldexp(1.0, -d);
  for (int j = 0; j < d; ++j) p[j + 1] = p[j] * static_cast<double>(d - j) / static_cast<double>(j + 1);
  NeumaierSum total;
  for (double v : p) total.add(v);
  const double norm = total.value();
  for (double& v : p) v /= norm;
  return p;
}

// Coefficients of (1/d!) prod_{k=1..d} (s + k - 1): the probability
// generating function of V for the chamber of the A-type arrangement.
std::vector<double> chamber_a_row(int d) {
  std::vector<double> p(static_cast<std::size_t>(d) + 1, 0.0);
  if (d <= 30) {
    // exact integer coefficients fit in 128 bits up to 30! ~ 2.7e32
    std::vector<unsigned __int128> c(static_cast<std::size_t>(d) + 1, 0);
    c[0] = 1;
    unsigned __int128 fact = 1;
    for (int k = 1; k <= d; ++k) {
      for (int j = k; j >= 1; --j) c[j] = c[j - 1] + static_cast<unsigned>(k - 1) * c[j];
      c[0] = c[0] * static_cast<unsigned>(k - 1);
      fact *= static_cast<unsigned>(k);
    }
    for (int j = 0; j <= d; ++j) p[j] = static_cast<double>(static_cast<long double>(c[j]) / static_cast<long double>(fact));
    return p;
  }
  // beyond d = 30: multiply by (s + k - 1)/k so coefficients stay normalized
  p[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    for (int j = k; j >= 1; --j) p[j] = (p[j - 1] + (k - 1.0) * p[j]) / k;
    p[0] = p[0] * (k - 1.0) / k;
  }
  NeumaierSum total;
  for (double v : p) total.add(v);
  const double norm = total.value();
  for (double& v : p) v /= norm;
  return p;
}

}  // namespace

IVDistribution::IVDistribution(std::vector<double> probs, bool enforce_moment_bounds) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ParameterError("IVDistribution: empty probability vector");
  NeumaierSum total;
  for (double v : probs_) {
    if (v < -1e-15) throw ParameterError("IVDistribution: negative probability");
    total.add(v);
  }
  const double sum = total.value();
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError("IVDistribution: probabilities do not sum to one");
  for (double& v : probs_) v = std::max(v, 0.0) / sum;

  NeumaierSum mean, second;
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    mean.add(static_cast<double>(j) * probs_[j]);
    second.add(static_cast<double>(j) * static_cast<double>(j) * probs_[j]);
  }
  delta_ = mean.value();
  tau_sq_ = second.value() - delta_ * delta_;
  if (enforce_moment_bounds && tau_sq_ > 2.0 * delta_ * (1.0 + 1e-9) + 1e-12)
    throw InvariantError("IVDistribution: tau^2 > 2 delta violates the conic variance bound");
}

double IVDistribution::cdf(int j) const {
  if (j < 0) return 0.0;
  if (j >= d()) return 1.0;
  NeumaierSum s;
  for (int i = 0; i <= j; ++i) s.add(probs_[static_cast<std::size_t>(i)]);
  return std::min(s.value(), 1.0);
}

bool has_exact_distribution(const ConeSpec& cone) {
  switch (cone.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kSubspace:
    case ConeKind::kChamberA:
      return true;
    case ConeKind::kPolar:
      return has_exact_distribution(cone.inner());
    default:
      return false;
  }
}

IVDistribution exact_distribution(const ConeSpec& cone) {
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      return IVDistribution(binomial_half_row(cone.ambient_dimension()));
    case ConeKind::kSubspace: {
      std::vector<double> p(static_cast<std::size_t>(cone.ambient_dimension()) + 1, 0.0);
      p[static_cast<std::size_t>(cone.subspace_dim())] = 1.0;
      return IVDistribution(std::move(p));
    }
    case ConeKind::kChamberA:
      return IVDistribution(chamber_a_row(cone.ambient_dimension()));
    case ConeKind::kPolar: {
      // v_j(C^0) = v_{d-j}(C)
      const IVDistribution inner = exact_distribution(cone.inner());
      std::vector<double> p(inner.probs().rbegin(), inner.probs().rend());
      return IVDistribution(std::move(p));
    }
    default:
      throw CapabilityError("exact_distribution: no exact intrinsic volumes for " + cone.describe());
  }
}

ClosedFormMoments closed_form_moments(const ConeSpec& cone) {
  ClosedFormMoments out;
  switch (cone.kind()) {
    case ConeKind::kOrthant: {
      const double d = cone.ambient_dimension();
      out.delta = 0.5 * d;
      out.tau_sq = 0.25 * d;
      return out;
    }
    case ConeKind::kSubspace:
      out.delta = cone.subspace_dim();
      out.tau_sq = 0.0;
      return out;
    case ConeKind::kCircular: {
      const double d = cone.ambient_dimension();
      const double a = cone.angle();
      const double s = std::sin(a);
      const double s2 = std::sin(2.0 * a);
      out.delta = d * s * s;
      out.tau_sq = 0.5 * (d - 2.0) * s2 * s2;
      // large-d values: the exact delta carries a + cos(2 alpha) correction
      out.delta_asymptotic = true;
      out.tau_asymptotic = true;
      return out;
    }
    case ConeKind::kPsd: {
      const double n = cone.psd_side();
      out.delta = 0.25 * n * (n + 1.0);
      out.tau_sq = (4.0 / (kPi * kPi) - 0.25) * n * n;
      out.tau_asymptotic = true;
      return out;
    }
    case ConeKind::kChamberA: {
      NeumaierSum delta, tau;
      for (int k = 1; k <= cone.ambient_dimension(); ++k) {
        delta.add(1.0 / k);
        tau.add(1.0 / k - 1.0 / (static_cast<double>(k) * k));
      }
      out.delta = delta.value();
      out.tau_sq = tau.value();
      return out;
    }
    case ConeKind::kChamberBC: {
      NeumaierSum delta, tau;
      for (int k = 1; k <= cone.ambient_dimension(); ++k) {
        const double h = 0.5 / k;
        delta.add(h);
        tau.add(h * (1.0 - h));
      }
      out.delta = delta.value();
      out.tau_sq = tau.value();
      return out;
    }
    default:
      throw CapabilityError("closed_form_moments: no closed form for " + cone.describe() +
                            "; use estimate_moments");
  }
}

MomentEstimates estimate_moments(const ConeSpec& cone, long long n, const RngStream& stream, int workers) {
  if (n < 2) throw ParameterError("estimate_moments: need n >= 2");
  const int d = cone.ambient_dimension();
  const std::int64_t n_chunks = chunk_count(n, kChunk);
  const long long half = n / 2;

  struct ChunkSums {
    double g = 0.0, g2 = 0.0, norm = 0.0;
    Vec pi_first, pi_second;
  };
  std::vector<ChunkSums> sums(static_cast<std::size_t>(n_chunks));

  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        ChunkSums& s = sums[static_cast<std::size_t>(c)];
        s.pi_first = Vec::Zero(d);
        s.pi_second = Vec::Zero(d);
        NeumaierSum g_sum, g2_sum, norm_sum;
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          const Vec pi = project_point(cone, g);
          const double gsq = pi.squaredNorm();
          g_sum.add(gsq);
          g2_sum.add(gsq * gsq);
          norm_sum.add(std::sqrt(gsq));
          if (i < half) {
            s.pi_first += pi;
          } else {
            s.pi_second += pi;
          }
        }
        s.g = g_sum.value();
        s.g2 = g2_sum.value();
        s.norm = norm_sum.value();
      },
      kChunk);

  NeumaierSum g_total, norm_total;
  Vec first = Vec::Zero(d), second = Vec::Zero(d);
  for (const ChunkSums& s : sums) {
    g_total.add(s.g);
    norm_total.add(s.norm);
    first += s.pi_first;
    second += s.pi_second;
  }

  MomentEstimates est;
  est.n_samples = n;
  est.delta_hat = g_total.value() / static_cast<double>(n);
  est.width_hat = norm_total.value() / static_cast<double>(n);
  const Vec mean_first = first / static_cast<double>(half);
  const Vec mean_second = second / static_cast<double>(n - half);
  est.v_hat = mean_first.dot(mean_second);
  const Vec mu_hat = (first + second) / static_cast<double>(n);
  const double t_bar = mu_hat.squaredNorm();

  // second pass: central moments about the fixed pass-1 means
  struct CentralSums {
    double c2 = 0.0, c3 = 0.0, c4 = 0.0, w2 = 0.0, t2 = 0.0;
  };
  std::vector<CentralSums> central(static_cast<std::size_t>(n_chunks));
  const double delta_hat = est.delta_hat;
  const double width_hat = est.width_hat;
  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        CentralSums& s = central[static_cast<std::size_t>(c)];
        NeumaierSum c2, c3, c4, w2, t2;
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          const Vec pi = project_point(cone, g);
          const double gsq = pi.squaredNorm();
          const double e = gsq - delta_hat;
          c2.add(e * e);
          c3.add(e * e * e);
          c4.add(e * e * e * e);
          const double ew = std::sqrt(gsq) - width_hat;
          w2.add(ew * ew);
          const double et = mu_hat.dot(pi) - t_bar;
          t2.add(et * et);
        }
        s.c2 = c2.value();
        s.c3 = c3.value();
        s.c4 = c4.value();
        s.w2 = w2.value();
        s.t2 = t2.value();
      },
      kChunk);

  NeumaierSum c2t, c3t, c4t, w2t, t2t;
  for (const CentralSums& s : central) {
    c2t.add(s.c2);
    c3t.add(s.c3);
    c4t.add(s.c4);
    w2t.add(s.w2);
    t2t.add(s.t2);
  }
  const double nn = static_cast<double>(n);
  est.sigma_sq_hat = c2t.value() / (nn - 1.0);
  est.tau_sq_hat = est.sigma_sq_hat - 2.0 * est.delta_hat;
  est.tau_degenerate = est.tau_sq_hat < 0.0;
  const double m2 = c2t.value() / nn;
  const double m3 = c3t.value() / nn;
  const double m4 = c4t.value() / nn;
  est.se_delta = std::sqrt(m2 / nn);
  est.se_sigma_sq = std::sqrt(std::max(m4 - m2 * m2, 0.0) / nn);
  // influence function of sigma^2 - 2 delta is (G-delta)^2 - 2(G-delta)
  est.se_tau_sq = std::sqrt(std::max(m4 - m2 * m2 + 4.0 * m2 - 4.0 * m3, 0.0) / nn);
  est.se_width = std::sqrt((w2t.value() / (nn - 1.0)) / nn);
  est.se_v = 2.0 * std::sqrt((t2t.value() / (nn - 1.0)) / nn);
  return est;
}

IVDistribution sample_V(const ConeSpec& cone, long long n, const RngStream& stream, int workers) {
  if (n < 1) throw ParameterError("sample_V: need n >= 1");
  if (!supports_face_dimension(cone))
    throw CapabilityError("sample_V: face_dimension unsupported for " + cone.describe());
  const int d = cone.ambient_dimension();
  const std::int64_t n_chunks = chunk_count(n, kChunk);
  std::vector<std::vector<long long>> counts(static_cast<std::size_t>(n_chunks),
                                             std::vector<long long>(static_cast<std::size_t>(d) + 1, 0));
  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        auto& local = counts[static_cast<std::size_t>(c)];
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          ++local[static_cast<std::size_t>(face_dimension(cone, g))];
        }
      },
      kChunk);
  std::vector<double> probs(static_cast<std::size_t>(d) + 1, 0.0);
  for (const auto& local : counts)
    for (std::size_t j = 0; j <= static_cast<std::size_t>(d); ++j) probs[j] += static_cast<double>(local[j]);
  for (double& p : probs) p /= static_cast<double>(n);
  return IVDistribution(std::move(probs), /*enforce_moment_bounds=*/false);
}

VarianceBounds variance_bounds(const MomentEstimates& estimates, int d) {
  if (!(estimates.delta_hat > 0.0)) throw DegenerateError("variance_bounds: delta_hat <= 0");
  VarianceBounds out;
  out.v = estimates.v_hat;
  if (out.v < 0.0) {
    out.v = 0.0;
    out.v_clamped = true;
  }
  out.b = std::sqrt(static_cast<double>(d) * estimates.delta_hat / 2.0);
  out.lower = std::min(out.v * out.v, 4.0 * out.b * out.b) / out.b;
  out.upper = 2.0 * out.v;
  return out;
}

SteinerCovariance steiner_covariance(const ConeSpec& cone, long long n, const RngStream& stream, int workers) {
  if (n < 2) throw ParameterError("steiner_covariance: need n >= 2");
  const int d = cone.ambient_dimension();
  const std::int64_t n_chunks = chunk_count(n, kChunk);

  struct Pass1 {
    double gc = 0.0, gp = 0.0;
  };
  std::vector<Pass1> pass1(static_cast<std::size_t>(n_chunks));
  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        NeumaierSum gc, gp;
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          const Vec pi = project_point(cone, g);
          gc.add(pi.squaredNorm());
          gp.add((g - pi).squaredNorm());
        }
        pass1[static_cast<std::size_t>(c)] = {gc.value(), gp.value()};
      },
      kChunk);
  NeumaierSum gc_total, gp_total;
  for (const Pass1& s : pass1) {
    gc_total.add(s.gc);
    gp_total.add(s.gp);
  }
  const double nn = static_cast<double>(n);
  const double mean_c = gc_total.value() / nn;
  const double mean_p = gp_total.value() / nn;

  struct Pass2 {
    double prod = 0.0, prod2 = 0.0;
  };
  std::vector<Pass2> pass2(static_cast<std::size_t>(n_chunks));
  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        NeumaierSum prod, prod2;
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          const Vec pi = project_point(cone, g);
          const double p = (pi.squaredNorm() - mean_c) * ((g - pi).squaredNorm() - mean_p);
          prod.add(p);
          prod2.add(p * p);
        }
        pass2[static_cast<std::size_t>(c)] = {prod.value(), prod2.value()};
      },
      kChunk);
  NeumaierSum prod_total, prod2_total;
  for (const Pass2& s : pass2) {
    prod_total.add(s.prod);
    prod2_total.add(s.prod2);
  }
  const double cov = prod_total.value() / (nn - 1.0);
  const double var_prod = std::max(prod2_total.value() / nn - cov * cov, 0.0);
  return SteinerCovariance{-cov, std::sqrt(var_prod / nn)};
}

SteinerMomentCheck master_steiner_moment_check(const ConeSpec& cone, SteinerTestFunction f, long long n,
                                               const RngStream& stream, int workers) {
  const IVDistribution ivd = exact_distribution(cone);
  const int d = ivd.d();

  auto f_eval = [&](double a, double b) {
    switch (f) {
      case SteinerTestFunction::kFirstCoordinate:
        return a;
      case SteinerTestFunction::kProduct:
        return a * b;
      case SteinerTestFunction::kExpNegQuarter:
        return std::exp(-a / 4.0);
    }
    throw CapabilityError("master_steiner_moment_check: unsupported test function");
  };
  // E f(Y_j, Y'_{d-j}) in closed form: E Y_j = j, E Y_j Y'_{d-j} = j(d-j),
  // E exp(-Y_j/4) = (2/3)^{j/2}
  auto f_mixture = [&](int j) {
    switch (f) {
      case SteinerTestFunction::kFirstCoordinate:
        return static_cast<double>(j);
      case SteinerTestFunction::kProduct:
        return static_cast<double>(j) * (d - j);
      case SteinerTestFunction::kExpNegQuarter:
        return std::pow(2.0 / 3.0, 0.5 * j);
    }
    throw CapabilityError("master_steiner_moment_check: unsupported test function");
  };

  NeumaierSum rhs;
  for (int j = 0; j <= d; ++j) rhs.add(ivd.prob(j) * f_mixture(j));

  const std::int64_t n_chunks = chunk_count(n, kChunk);
  struct Sums {
    double s = 0.0, s2 = 0.0;
  };
  std::vector<Sums> sums(static_cast<std::size_t>(n_chunks));
  for_each_chunk(
      n, workers,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        NeumaierSum s, s2;
        for (std::int64_t i = begin; i < end; ++i) {
          const Vec g = gaussian_vec(stream.substream(static_cast<std::uint64_t>(i)), d);
          const Vec pi = project_point(cone, g);
          const double value = f_eval(pi.squaredNorm(), (g - pi).squaredNorm());
          s.add(value);
          s2.add(value * value);
        }
        sums[static_cast<std::size_t>(c)] = {s.value(), s2.value()};
      },
      kChunk);
  NeumaierSum st, s2t;
  for (const Sums& s : sums) {
    st.add(s.s);
    s2t.add(s.s2);
  }
  const double nn = static_cast<double>(n);
  const double mean = st.value() / nn;
  const double var = std::max(s2t.value() / nn - mean * mean, 0.0);
  return SteinerMomentCheck{mean, std::sqrt(var / nn), rhs.value()};
}

WidthSandwich width_sandwich_check(const MomentEstimates& estimates, double k) {
  const double w = estimates.width_hat;
  const double se = 2.0 * std::abs(w) * estimates.se_width + estimates.se_delta;
  WidthSandwich out;
  out.lower_margin = estimates.delta_hat - (w * w - k * se);
  out.upper_margin = (w * w + 1.0 + k * se) - estimates.delta_hat;
  out.ok = out.lower_margin >= 0.0 && out.upper_margin >= 0.0;
  return out;
}

}  // namespace conic
