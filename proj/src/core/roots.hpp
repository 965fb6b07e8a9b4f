#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"
#include "core/recurrence.hpp"

namespace ruinkit {

struct RootConfig {
  int max_iterations = 200;
  double convergence_tol = 1e-13;
  double cluster_tol = 1e-6;  // scaled by max(1, |z|) when comparing roots
  int polish_steps = 3;
};

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
  double residual = 0.0;  // |q(z)|
};

/// Distinct roots with multiplicities; sum of multiplicities equals the
/// degree of the polynomial they came from. Entries are sorted by descending
/// real part, then descending imaginary part, so conjugates sit adjacent
/// with the +Im member first.
struct RootSet {
  std::vector<Root> entries;
  int degree = 0;

  int multiplicity_total() const {
    int s = 0;
    for (const auto& r : entries) s += r.multiplicity;
    return s;
  }
};

/// Finds all roots of a monic real polynomial (coefficients highest power
/// first), detecting multiplicities. Simultaneous Aberth iteration with
/// deterministic starting points; clusters are coarsened while the
/// reconstructed polynomial still matches the input, and each cluster's mean
/// is polished by Newton steps on the derivative order matching its
/// multiplicity. Falls back to companion-matrix eigenvalues when the
/// iteration's output fails that validation. Throws
/// RuinError(NoConvergence) when both routes fail.
RootSet find_roots(const std::vector<double>& monic, const RootConfig& cfg = {});

struct RootClassification {
  std::size_t z2_index = 0;     // index into RootSet.entries
  double z2 = 0.0;              // the unique positive real root, in (0,1)
  double max_subdominant = 0.0; // max |z_k| over the remaining roots
  double dominance_gap = 0.0;   // z2 - max_subdominant
};

/// Verifies the structural facts that hold for every valid claims
/// distribution: exactly one positive real root z2 of q (so exactly two
/// counting the deflated unit root), simple, in (0,1); every other root has
/// modulus <= z2 (+ cluster tolerance); non-real roots occur in conjugate
/// pairs with equal multiplicities; an even-degree q (odd m) has a negative
/// real root. Violations throw RuinError(StructureViolation) naming the
/// broken rule -- they signal numerical root failure, not a modeling error.
RootClassification classify(const RootSet& rs, const RootConfig& cfg = {});

namespace detail {

/// Complex Horner evaluation of a real-coefficient polynomial.
std::complex<double> poly_eval(const std::vector<double>& coeffs,
                               std::complex<double> z);

std::vector<double> poly_derivative(const std::vector<double>& coeffs);

struct AberthResult {
  std::vector<std::complex<double>> points;
  bool converged = false;
  int iterations = 0;
};

/// Aberth-Ehrlich simultaneous iteration. Starting points lie on a circle of
/// radius |c_n|^(1/n) with a fixed angular offset; no randomized restarts.
AberthResult aberth(const std::vector<double>& monic, const RootConfig& cfg);

/// Eigenvalues of the companion matrix, via Eigen's real Schur decomposition.
std::vector<std::complex<double>> companion_roots(const std::vector<double>& monic);

}  // namespace detail

}  // namespace ruinkit
