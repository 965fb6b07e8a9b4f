#pragma once

#include <utility>
#include <vector>

#include "core/distribution.hpp"

namespace ruinkit {

/// Coefficients of the order-m recurrence psi(u+1) = sum alpha_k psi(u-k).
/// alpha[0] > 1, alpha[k] <= 0 for k >= 1, and sum alpha = 1.
struct AlphaCoeffs {
  std::vector<double> alpha;  // alpha_0 .. alpha_{m-1}
  int order() const { return static_cast<int>(alpha.size()); }
};

/// Monic characteristic polynomial p of degree m and its deflation
/// q = p / (y - 1) of degree m - 1. Coefficients are stored highest power
/// first, so p[0] == q[0] == 1.
struct CharPoly {
  std::vector<double> p;
  std::vector<double> q;
  int degree() const { return static_cast<int>(p.size()) - 1; }
};

/// Ruin probabilities at 0..m; psi[0] is mu_Y by definition, psi[1..m] solve
/// the lower-triangular initial-value system.
struct InitialValues {
  std::vector<double> psi;  // psi[0..m]
  int count() const { return static_cast<int>(psi.size()) - 1; }  // m
};

/// alpha_0 = (1 - f(1))/f(0), alpha_k = -f(k+1)/f(0) for k = 1..m-1.
AlphaCoeffs alphas(const ClaimsDistribution& d);

/// Builds p(y) = y^m - sum alpha_k y^{m-1-k} and deflates the guaranteed root
/// at y = 1. q is taken from the tail sums of alpha (no cancellation) and
/// cross-checked against synthetic division by (y - 1); a disagreement or a
/// division remainder beyond 1e-9 throws RuinError(DeflationResidual).
CharPoly char_poly(const AlphaCoeffs& a);

/// Forward substitution on the triangular system whose diagonal is f(0) and
/// whose right-hand side starts from psi(0) = mu_Y.
InitialValues initial_values(const ClaimsDistribution& d);

/// Closed forms psi(1) = 1 - (1-mu)/f0 and
/// psi(2) = 1 - ((1-mu)/f0)((1-f1)/f0). Valid for any claims distribution
/// with the given f(0), f(1) and mean, bounded support or not.
std::pair<double, double> psi1_psi2_closed(double f0, double f1, double mu);

}  // namespace ruinkit
