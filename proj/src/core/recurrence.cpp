#include "core/recurrence.hpp"

#include <cmath>
#include <string>

namespace ruinkit {

AlphaCoeffs alphas(const ClaimsDistribution& d) {
  const int m = d.support_max();
  const double f0 = d.pmf(0);
  AlphaCoeffs a;
  a.alpha.resize(m);
  a.alpha[0] = (1.0 - d.pmf(1)) / f0;
  for (int k = 1; k < m; ++k) a.alpha[k] = -d.pmf(k + 1) / f0;
  return a;
}

CharPoly char_poly(const AlphaCoeffs& a) {
  const int m = a.order();
  CharPoly cp;
  cp.p.resize(m + 1);
  cp.p[0] = 1.0;
  for (int k = 0; k < m; ++k) cp.p[k + 1] = -a.alpha[k];

  // q coefficient for y^{m-1-k} is -Fbar(k)/f(0) = sum_{j>=k} alpha_j, a sum
  // of same-sign terms for k >= 1.
  cp.q.resize(m);
  cp.q[0] = 1.0;
  for (int k = 1; k < m; ++k) {
    double s = 0.0;
    for (int j = m - 1; j >= k; --j) s += a.alpha[j];
    cp.q[k] = s;  // equals -Fbar(k)/f(0)
  }

  // Synthetic division of p by (y - 1): quotient b_k = b_{k-1} + p_k,
  // remainder p(1).
  double b = 1.0;
  double worst = 0.0;
  for (int k = 1; k < m; ++k) {
    b += cp.p[k];
    worst = std::max(worst, std::abs(b - cp.q[k]));
  }
  const double remainder = b + cp.p[m];  // p(1)
  if (std::abs(remainder) > 1e-9 || worst > 1e-9)
    throw RuinError(ErrorCode::DeflationResidual,
                    "p/(y-1) remainder " + std::to_string(remainder) +
                        ", coefficient mismatch " + std::to_string(worst));
  return cp;
}

InitialValues initial_values(const ClaimsDistribution& d) {
  const int m = d.support_max();
  const double f0 = d.pmf(0);
  InitialValues iv;
  iv.psi.resize(m + 1);
  iv.psi[0] = d.mean();
  // Row u of the system: psi(u) = sum_{k=0}^{u} psi(u+1-k) f(k) + Fbar(u).
  for (int u = 0; u < m; ++u) {
    double s = iv.psi[u] - d.tail(u);
    for (int k = 1; k <= u; ++k) s -= iv.psi[u + 1 - k] * d.pmf(k);
    iv.psi[u + 1] = s / f0;
  }
  return iv;
}

std::pair<double, double> psi1_psi2_closed(double f0, double f1, double mu) {
  const double r = (1.0 - mu) / f0;
  return {1.0 - r, 1.0 - r * (1.0 - f1) / f0};
}

}  // namespace ruinkit
