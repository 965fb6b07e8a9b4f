#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/errors.hpp"

namespace ruinkit {

/// Claims distribution on {0,...,m} with f(m) > 0, mean < 1 (net profit) and
/// m >= 2. Immutable after construction; safe to share across threads.
class ClaimsDistribution {
 public:
  /// Validates and normalizes a pmf vector. Trailing zeros are trimmed so
  /// f(m) > 0; a total deviating from 1 by at most `kSumTolerance` is
  /// renormalized. Throws RuinError with NegativeProbability, SumNotOne,
  /// SupportTooSmall or NetProfitViolated.
  static ClaimsDistribution from_pmf(std::vector<double> pmf);

  /// Parses {"pmf": [numbers or "p/q" strings]}.
  static ClaimsDistribution parse_json(std::string_view text);

  /// Parses "k value" lines; missing k are treated as 0. Blank lines and
  /// lines starting with '#' are skipped.
  static ClaimsDistribution parse_text(std::string_view text);

  /// Loads a distribution file, dispatching on the leading '{' to JSON.
  static ClaimsDistribution load_file(const std::string& path);

  int support_max() const { return static_cast<int>(pmf_.size()) - 1; }
  double pmf(int k) const {
    return (k >= 0 && k < static_cast<int>(pmf_.size())) ? pmf_[k] : 0.0;
  }
  const std::vector<double>& probabilities() const { return pmf_; }

  /// mu_Y = sum k f(k); also equals psi(0).
  double mean() const { return mean_; }

  /// Fbar(k) = P(Y > k); exactly 0 for k >= m.
  double tail(int k) const;

  static constexpr double kSumTolerance = 1e-9;

 private:
  explicit ClaimsDistribution(std::vector<double> pmf);

  std::vector<double> pmf_;
  std::vector<double> tail_;  // Fbar(0..m-1), accumulated from the top
  double mean_ = 0.0;
};

/// Parses a decimal number or an exact "p/q" fraction (converted to binary64
/// once). Throws RuinError(ParseError) on malformed input.
double parse_number(std::string_view token);

}  // namespace ruinkit
