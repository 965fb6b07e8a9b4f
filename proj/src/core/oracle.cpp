#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ruinkit {

std::vector<double> recursion_oracle(const ClaimsDistribution& d, int u_max) {
  if (u_max < 0) throw std::invalid_argument("u_max must be >= 0");
  const int m = d.support_max();
  const double f0 = d.pmf(0);

  // T(u) = sum_{k=u}^{m-1} Fbar(k); empty for u >= m.
  std::vector<double> tail_sum(m + 1, 0.0);
  for (int k = m - 1; k >= 1; --k) tail_sum[k] = tail_sum[k + 1] + d.tail(k);

  std::vector<double> psi(static_cast<size_t>(u_max) + 1);
  psi[0] = d.mean();
  for (int u = 1; u <= u_max; ++u) {
    double s = (u <= m) ? tail_sum[u] : 0.0;
    const int kmax = std::min(u - 1, m - 1);
    for (int k = 1; k <= kmax; ++k) s += d.tail(k) * psi[u - k];
    psi[u] = s / f0;
  }
  return psi;
}

namespace detail {

double dominant_root_bisect(const ClaimsDistribution& d) {
  const int m = d.support_max();
  const double f0 = d.pmf(0);
  // q(z) = z^{m-1} - sum_{k=1}^{m-1} (Fbar(k)/f0) z^{m-1-k}; q(0) < 0 < q(1).
  auto q = [&](double z) {
    double v = 1.0;
    for (int k = 1; k <= m - 1; ++k) v = v * z - d.tail(k) / f0;
    return v;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (q(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

McEstimate simulate_ruin(const ClaimsDistribution& d, std::uint64_t u,
                         const McConfig& cfg) {
  if (cfg.n_paths < 1 || cfg.horizon < 1)
    throw std::invalid_argument("n_paths and horizon must be >= 1");
  const int m = d.support_max();

  // Inverse-CDF thresholds on the raw 64-bit scale.
  std::vector<std::uint64_t> cut(m + 1);
  double cum = 0.0;
  for (int k = 0; k <= m; ++k) {
    cum += d.pmf(k);
    cut[k] = (cum >= 1.0) ? std::numeric_limits<std::uint64_t>::max()
                          : static_cast<std::uint64_t>(std::ldexp(cum, 64));
  }
  cut[m] = std::numeric_limits<std::uint64_t>::max();

  // Early settlement level: psi(U) <= z2^U, so above this the path survives
  // the rest of the horizon up to a bias under 1e-30.
  const double z2 = detail::dominant_root_bisect(d);
  const double safe_real = std::log(1e-30) / std::log(z2);
  const long long safe_level =
      (safe_real > 9e17) ? std::numeric_limits<long long>::max()
                         : static_cast<long long>(std::ceil(safe_real));

  auto run_range = [&](std::uint64_t first, std::uint64_t last) -> std::uint64_t {
    std::uint64_t ruined = 0;
    for (std::uint64_t path = first; path < last; ++path) {
      detail::SplitMix64 rng(cfg.seed, path);
      long long surplus = static_cast<long long>(u);
      if (surplus >= safe_level) continue;
      for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
        const std::uint64_t r = rng.next();
        const auto it = std::upper_bound(cut.begin(), cut.end(), r);
        const long long claim =
            std::min<long long>(it - cut.begin(), m);
        surplus += 1 - claim;
        if (surplus <= 0) {
          ++ruined;
          break;
        }
        if (surplus >= safe_level) break;
      }
    }
    return ruined;
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned threads = cfg.threads > 0
                         ? static_cast<unsigned>(cfg.threads)
                         : std::clamp(hw, 1u, 16u);
  threads = std::min<std::uint64_t>(threads, cfg.n_paths);

  std::uint64_t ruined = 0;
  if (threads <= 1) {
    ruined = run_range(0, cfg.n_paths);
  } else {
    std::vector<std::uint64_t> counts(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t first = cfg.n_paths * t / threads;
      std::uint64_t last = cfg.n_paths * (t + 1) / threads;
      pool.emplace_back([&, t, first, last] { counts[t] = run_range(first, last); });
    }
    for (auto& th : pool) th.join();
    for (std::uint64_t c : counts) ruined += c;
  }

  McEstimate est;
  est.ruined_count = ruined;
  est.n_paths = cfg.n_paths;
  est.estimate = static_cast<double>(ruined) / static_cast<double>(cfg.n_paths);
  est.half_width_95 =
      1.959963984540054 *
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(cfg.n_paths));
  est.alive_fraction = 1.0 - est.estimate;
  return est;
}

}  // namespace ruinkit
