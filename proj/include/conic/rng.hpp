#pragma once

#include <cstdint>
#include <vector>

#include "conic/errors.hpp"
#include "conic/special.hpp"

namespace conic {

// Counter-based random stream: Philox4x32-10 keyed by a 64-bit seed, with the
// 128-bit counter split into (draw index, stream id).  Value semantics; the
// sample sequence is a pure function of (seed, stream_id, call sequence) and
// is identical across platforms and worker counts.  Monte Carlo trial i draws
// from substream(base + i), so results do not depend on scheduling.
//
// Gaussian variates use the inverse-CDF transform (normal_quantile, AS 241)
// applied to one 53-bit uniform per draw.  This choice is fixed: seeded
// regression values depend on it.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  RngStream substream(std::uint64_t offset) const { return RngStream(seed_, stream_id_ + offset); }

  std::uint64_t next_u64() {
    Block b = philox(seed_, stream_id_, counter_++);
    return (static_cast<std::uint64_t>(b.v[1]) << 32) | b.v[0];
  }

  // Uniform in the open interval (0,1) with 53 significant bits.
  double next_uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double next_gaussian() { return normal_quantile(next_uniform()); }

 private:
  struct Block {
    std::uint32_t v[4];
  };

  static Block philox(std::uint64_t key64, std::uint64_t stream, std::uint64_t ctr) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key64);
    std::uint32_t k1 = static_cast<std::uint32_t>(key64 >> 32);
    Block b{{static_cast<std::uint32_t>(ctr), static_cast<std::uint32_t>(ctr >> 32),
             static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)}};
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ull * b.v[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * b.v[2];
      Block next{{static_cast<std::uint32_t>(p1 >> 32) ^ b.v[1] ^ k0, static_cast<std::uint32_t>(p1),
                  static_cast<std::uint32_t>(p0 >> 32) ^ b.v[3] ^ k1, static_cast<std::uint32_t>(p0)}};
      b = next;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return b;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
};

inline std::vector<double> sample_std_gaussian_vector(RngStream& stream, int d) {
  if (d < 1) throw ParameterError("sample_std_gaussian_vector: dimension must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(d));
  for (auto& x : out) x = stream.next_gaussian();
  return out;
}

}  // namespace conic
