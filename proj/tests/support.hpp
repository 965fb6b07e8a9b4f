#pragma once

#include <random>
#include <vector>

#include "core/distribution.hpp"

namespace testsupport {

// Random pmf on {0..m} with mean < 1 and f(m) > 0. Drawn magnitudes are
// squared to spread them over scales, middles are occasionally zeroed to get
// sparse shapes, and the mass at 0 is inflated until the net profit
// condition holds (some instances land close to the mean-1 boundary).
inline std::vector<double> random_pmf(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(m + 1);
  for (int k = 0; k <= m; ++k) {
    double u = unif(rng);
    w[k] = u * u;
  }
  if (m >= 4 && unif(rng) < 0.35) {
    int zeros = 1 + static_cast<int>(unif(rng) * (m - 2));
    for (int z = 0; z < zeros; ++z)
      w[1 + static_cast<int>(unif(rng) * (m - 1))] = 0.0;
  }
  if (w[m] == 0.0) w[m] = 0.05 + unif(rng);
  for (int guard = 0; guard < 200; ++guard) {
    double sum = 0.0, first_moment = 0.0;
    for (int k = 0; k <= m; ++k) sum += w[k];
    for (int k = 1; k <= m; ++k) first_moment += k * w[k];
    if (first_moment / sum < 0.995) break;
    w[0] += sum;
  }
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}

inline ruinkit::ClaimsDistribution random_dist(std::mt19937_64& rng, int m) {
  return ruinkit::ClaimsDistribution::from_pmf(random_pmf(rng, m));
}

// The five claims distributions used throughout the example tables.
inline std::vector<double> example51() { return {0.5, 0.25, 0.25}; }

inline std::vector<double> example52() {
  const double p = 99.0 / 500.0;
  std::vector<double> pmf(6);
  for (int k = 0; k <= 5; ++k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (5 - k + i) / i;
    pmf[k] = c * std::pow(p, k) * std::pow(1.0 - p, 5 - k);
  }
  return pmf;
}

inline std::vector<double> example53() {
  std::vector<double> pmf(8, 0.0);
  pmf[0] = 7.0 / 8.0;
  pmf[7] = 1.0 / 8.0;
  return pmf;
}

inline std::vector<double> example54() {
  return {1.0 / 2, 3.0 / 7, 3.0 / 392, 145.0 / 2744,
          775.0 / 76832, 219.0 / 268912, 67.0 / 2151296, 1.0 / 2151296};
}

inline std::vector<double> example55() {
  return {1.0 / 2, 9.0 / 28, 477.0 / 3136, 543.0 / 21952, 9433.0 / 19668992,
          4462.0 / 3813049, 146689.0 / 1927561216, 7155.0 / 1927561216,
          2809.0 / 1927561216};
}

}  // namespace testsupport
