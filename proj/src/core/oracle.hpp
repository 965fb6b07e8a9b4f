#pragma once

#include <cstdint>
#include <vector>

#include "core/distribution.hpp"

namespace ruinkit {

/// Forward evaluation of psi(0..u_max) from the tail-form recursion,
/// independent of any root finding. O(u_max * m) work.
std::vector<double> recursion_oracle(const ClaimsDistribution& d, int u_max);

struct McConfig {
  std::uint64_t n_paths = 100000;
  std::uint64_t horizon = 100000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware default; the estimate never depends on it
};

struct McEstimate {
  double estimate = 0.0;        // ruined_count / n_paths
  double half_width_95 = 0.0;   // normal-approximation confidence half width
  std::uint64_t ruined_count = 0;
  std::uint64_t n_paths = 0;
  double alive_fraction = 0.0;  // paths neither ruined nor ruinable in horizon
};

/// Simulates the surplus process U(t) = u + t - sum of claims; a path is
/// ruined when U(t) <= 0 for some 1 <= t <= horizon. Claims are drawn by
/// inverse CDF from a per-path counter-seeded stream, so the result is a
/// pure function of (d, u, cfg) regardless of execution order or thread
/// count. Finite horizon makes this an underestimate of the infinite-horizon
/// probability; paths whose surplus clears the Lundberg-type safety level
/// are settled as survivors early.
McEstimate simulate_ruin(const ClaimsDistribution& d, std::uint64_t u,
                         const McConfig& cfg = {});

namespace detail {

/// SplitMix64 stream; per-path states are decorrelated through the avalanche
/// mix of (seed, path index).
struct SplitMix64 {
  std::uint64_t state;
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream)
      : state(mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    return mix(state);
  }
};

/// Unique positive root of the deflated characteristic polynomial, found by
/// bisection; also the base of the ruin decay bound psi(u) <= z2^u.
double dominant_root_bisect(const ClaimsDistribution& d);

}  // namespace detail

}  // namespace ruinkit
