#include "core/ruin.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace ruinkit {

namespace {

template <typename T>
T pow_int(T base, long long e) {
  T acc(1.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace

RuinSolution solve(const ClaimsDistribution& d, const RootConfig& cfg) {
  const int m = d.support_max();
  RuinSolution sol(d);

  CharPoly cp = char_poly(alphas(d));
  RootSet qroots = find_roots(cp.q, cfg);
  RootClassification cls = classify(qroots, cfg);

  sol.roots_.degree = m;
  sol.roots_.entries.reserve(qroots.entries.size() + 1);
  sol.roots_.entries.push_back({{1.0, 0.0}, 1, 0.0});
  for (auto& r : qroots.entries) sol.roots_.entries.push_back(r);
  sol.z2_index_ = cls.z2_index + 1;
  sol.z2_ = cls.z2;
  sol.dominance_gap_ = cls.dominance_gap;

  sol.initial_ = initial_values(d);
  ZMatrix z = build_z(sol.roots_, m);
  sol.coeffs_ = solve_coeffs(z, sol.initial_);
  sol.fit_residual_ = sol.coeffs_.residual_norm;

  // The unit root cannot carry weight (psi -> 0); a visible b1 means the fit
  // went numerically wrong. Verified, then zeroed before any evaluation.
  Coefficient& b1 = sol.coeffs_.b.front();
  if (std::abs(b1.value) > 1e-8)
    throw RuinError(ErrorCode::IllConditioned,
                    "unit-root coefficient " + std::to_string(std::abs(b1.value)) +
                        " should vanish");
  b1.value = 0.0;

  // Conjugate roots must carry conjugate coefficients.
  for (const Coefficient& c : sol.coeffs_.b) {
    const Root& r = sol.roots_.entries[c.root_index];
    if (r.value.imag() == 0.0) continue;
    bool found = false;
    for (const Coefficient& c2 : sol.coeffs_.b) {
      const Root& r2 = sol.roots_.entries[c2.root_index];
      if (c2.power == c.power &&
          std::abs(r2.value - std::conj(r.value)) <= 1e-8 * (1.0 + std::abs(r.value)) &&
          std::abs(c2.value - std::conj(c.value)) <= 1e-8 * (1.0 + std::abs(c.value))) {
        found = true;
        break;
      }
    }
    if (!found)
      throw RuinError(ErrorCode::IllConditioned,
                      "coefficients of conjugate roots are not conjugate");
  }

  const Coefficient* b2 = nullptr;
  for (const Coefficient& c : sol.coeffs_.b)
    if (c.root_index == static_cast<int>(sol.z2_index_) && c.power == 1) b2 = &c;
  if (!b2 || std::abs(b2->value.imag()) > 1e-8)
    throw RuinError(ErrorCode::IllConditioned,
                    "coefficient of the dominant root is not real");
  sol.b2_ = b2->value.real();
  if (sol.b2_ <= 0.0)
    sol.warnings_.push_back("b2 <= 0: the one-term approximation is unreliable here");

  return sol;
}

double RuinSolution::evaluate(long long u) const {
  if (u < 0) throw std::invalid_argument("u must be >= 0");
  if (u == 0) return dist_.mean();

  // Cheap decay bound: once even the dominant term is under 1e-300 the whole
  // sum has drowned; return a clean zero instead of noise.
  double bmax = 1e-300;
  int nmax = 1;
  for (const Coefficient& c : coeffs_.b) {
    bmax = std::max(bmax, std::abs(c.value));
    nmax = std::max(nmax, c.power);
  }
  double log10_bound = std::log10(z2_) * static_cast<double>(u) +
                       std::log10(bmax) +
                       (nmax - 1) * std::log10(static_cast<double>(std::max<long long>(u, 2)));
  if (log10_bound < -300.0) return 0.0;

  bool all_simple = true;
  for (const Root& r : roots_.entries)
    if (r.multiplicity != 1) all_simple = false;

  std::complex<double> sum = 0.0;
  size_t ci = 0;
  for (const Root& r : roots_.entries) {
    const std::complex<double> zu = pow_int(r.value, u);
    if (all_simple) {
      sum += coeffs_.b[ci].value * zu;
      ++ci;
    } else {
      double upow = 1.0;
      for (int j = 1; j <= r.multiplicity; ++j, ++ci) {
        sum += coeffs_.b[ci].value * upow * zu;
        upow *= static_cast<double>(u);
      }
    }
  }
  if (std::abs(sum.imag()) > 1e-8)
    throw RuinError(ErrorCode::ImaginaryResidue,
                    "psi(" + std::to_string(u) + ") has imaginary part " +
                        std::to_string(sum.imag()));
  return sum.real();
}

double RuinSolution::approx1(long long u) const {
  if (u < 1) throw std::invalid_argument("approx1 needs u >= 1");
  return b2_ * pow_int(z2_, u);
}

double approx2_from(double f0, double f1, double mu, long long u) {
  if (u < 1) throw std::invalid_argument("approx2 needs u >= 1");
  auto [psi1, psi2] = psi1_psi2_closed(f0, f1, mu);
  if (!(psi1 > 0.0) || !(psi2 > 0.0))
    throw RuinError(ErrorCode::DegenerateRatio,
                    "psi(1) = " + std::to_string(psi1) + ", psi(2) = " +
                        std::to_string(psi2));
  return psi1 * pow_int(psi2 / psi1, u - 1);
}

double approx2(const ClaimsDistribution& d, long long u) {
  return approx2_from(d.pmf(0), d.pmf(1), d.mean(), u);
}

double geometric_exact(double p, long long u) {
  if (!(p > 0.0) || !(p < 1.0))
    throw RuinError(ErrorCode::ParseError, "p must lie in (0,1)");
  if (p <= 0.5)
    throw RuinError(ErrorCode::NetProfitViolated,
                    "geometric claims need p > 1/2, got " + std::to_string(p));
  if (u < 0) throw std::invalid_argument("u must be >= 0");
  return pow_int((1.0 - p) / p, u + 1);
}

double gambler_exact(double p, long long u) {
  if (!(p > 0.0) || !(p < 1.0))
    throw RuinError(ErrorCode::ParseError, "p must lie in (0,1)");
  if (p <= 0.5)
    throw RuinError(ErrorCode::NetProfitViolated,
                    "gambler's ruin needs p > 1/2, got " + std::to_string(p));
  if (u < 1) throw std::invalid_argument("u must be >= 1");
  return pow_int((1.0 - p) / p, u);
}

double ab0_approx(const Ab0Params& params, long long u) {
  const double a = params.a, b = params.b;
  if (u < 1) throw std::invalid_argument("u must be >= 1");
  if (a >= 1.0)
    throw RuinError(ErrorCode::InvalidAb0,
                    "f(0) = (1-a)^((a+b)/a) undefined for a >= 1");
  double f0, f1, mean;
  if (a == 0.0) {
    // Poisson member: f(y) = (b/y) f(y-1).
    if (!(b > 0.0))
      throw RuinError(ErrorCode::InvalidAb0, "a = 0 requires b > 0");
    f0 = std::exp(-b);
    f1 = b * f0;
    mean = b;
  } else {
    mean = (a + b) / (1.0 - a);
    f0 = std::exp(((a + b) / a) * std::log1p(-a));
    f1 = (a + b) * f0;
  }
  if (!(mean > 0.0))
    throw RuinError(ErrorCode::InvalidAb0,
                    "mean claim (a+b)/(1-a) = " + std::to_string(mean) +
                        " is not positive");
  if (!(mean < 1.0))
    throw RuinError(ErrorCode::InvalidAb0,
                    "net profit violated: mean claim " + std::to_string(mean));
  if (!(f0 > 0.0) || !std::isfinite(f0))
    throw RuinError(ErrorCode::InvalidAb0, "f(0) evaluates to " + std::to_string(f0));
  return approx2_from(f0, f1, mean, u);
}

}  // namespace ruinkit
