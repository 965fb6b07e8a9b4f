#pragma once

#include <string>
#include <vector>

#include "core/distribution.hpp"
#include "core/recurrence.hpp"
#include "core/roots.hpp"
#include "core/solver.hpp"

namespace ruinkit {

/// Everything needed to evaluate the exact ruin probability: roots of the
/// characteristic polynomial (unit root first), fitted coefficients, initial
/// values and diagnostics. Immutable; evaluation is pure.
class RuinSolution {
 public:
  /// Exact psi(u). u = 0 returns the mean claim; u >= 1 evaluates the
  /// recurrence solution, asserting the imaginary residue stays below 1e-8
  /// (RuinError(ImaginaryResidue) otherwise). Far past the decay crossover
  /// the value underflows cleanly to 0.
  double evaluate(long long u) const;

  /// One-term approximation b2 * z2^u, u >= 1.
  double approx1(long long u) const;

  const ClaimsDistribution& distribution() const { return dist_; }
  const RootSet& roots() const { return roots_; }
  const CoeffSet& coefficients() const { return coeffs_; }
  const InitialValues& initial() const { return initial_; }
  std::size_t z2_index() const { return z2_index_; }
  double z2() const { return z2_; }
  double b2() const { return b2_; }
  double dominance_gap() const { return dominance_gap_; }
  double fit_residual() const { return fit_residual_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend RuinSolution solve(const ClaimsDistribution&, const RootConfig&);
  RuinSolution(ClaimsDistribution d) : dist_(std::move(d)) {}

  ClaimsDistribution dist_;
  RootSet roots_;      // unit root at index 0
  CoeffSet coeffs_;    // in root-block order, b1 hard-zeroed
  InitialValues initial_;
  std::size_t z2_index_ = 0;
  double z2_ = 0.0;
  double b2_ = 0.0;
  double dominance_gap_ = 0.0;
  double fit_residual_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Runs the full pipeline: alpha coefficients, characteristic polynomial,
/// roots of the deflated q, initial values, coefficient solve, structural
/// checks. Propagates NoConvergence / StructureViolation / IllConditioned.
RuinSolution solve(const ClaimsDistribution& d, const RootConfig& cfg = {});

/// Two-point geometric extrapolation psi(1) (psi(2)/psi(1))^(u-1); exact at
/// u = 1, 2 by construction.
double approx2(const ClaimsDistribution& d, long long u);

/// Same estimate from the three ingredients it actually needs.
double approx2_from(double f0, double f1, double mu, long long u);

/// Exact geometric-claims ruin probability ((1-p)/p)^(u+1), p in (1/2, 1),
/// u >= 0.
double geometric_exact(double p, long long u);

/// Gambler's-ruin closed form (q/p)^u for claims on {0, 2}, u >= 1.
double gambler_exact(double p, long long u);

/// (a, b, 0) claims class: f(y) = (a + b/y) f(y-1). a = 0 is the Poisson
/// member (continuous limit of the f(0) power formula).
struct Ab0Params {
  double a = 0.0;
  double b = 0.0;
};

/// Approximate ruin probability for an (a, b, 0) claims distribution,
/// composed from the closed-form psi(1), psi(2). Throws
/// RuinError(InvalidAb0) when a = 1, f(0) is undefined, or the mean
/// (a+b)/(1-a) is outside (0, 1).
double ab0_approx(const Ab0Params& params, long long u);

}  // namespace ruinkit
