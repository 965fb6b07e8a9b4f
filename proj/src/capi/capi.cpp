#include "ruinkit/ruinkit.h"

#include <cstring>
#include <exception>
#include <string>

#include "core/distribution.hpp"
#include "core/oracle.hpp"
#include "core/recurrence.hpp"
#include "core/ruin.hpp"

namespace {

thread_local std::string g_last_error;

rk_status map_code(ruinkit::ErrorCode c) {
  using EC = ruinkit::ErrorCode;
  switch (c) {
    case EC::NegativeProbability: return RK_ERR_NEGATIVE_PROBABILITY;
    case EC::SumNotOne: return RK_ERR_SUM_NOT_ONE;
    case EC::SupportTooSmall: return RK_ERR_SUPPORT_TOO_SMALL;
    case EC::NetProfitViolated: return RK_ERR_NET_PROFIT_VIOLATED;
    case EC::DeflationResidual: return RK_ERR_DEFLATION_RESIDUAL;
    case EC::NoConvergence: return RK_ERR_NO_CONVERGENCE;
    case EC::StructureViolation: return RK_ERR_STRUCTURE_VIOLATION;
    case EC::DimensionMismatch: return RK_ERR_DIMENSION_MISMATCH;
    case EC::SingularSystem: return RK_ERR_SINGULAR_SYSTEM;
    case EC::IllConditioned: return RK_ERR_ILL_CONDITIONED;
    case EC::ImaginaryResidue: return RK_ERR_IMAGINARY_RESIDUE;
    case EC::DegenerateRatio: return RK_ERR_DEGENERATE_RATIO;
    case EC::InvalidAb0: return RK_ERR_INVALID_AB0;
    case EC::ParseError: return RK_ERR_PARSE;
  }
  return RK_ERR_INTERNAL;
}

template <typename Fn>
rk_status guarded(Fn&& fn) {
  try {
    fn();
    return RK_OK;
  } catch (const ruinkit::RuinError& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return RK_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RK_ERR_INTERNAL;
  }
}

}  // namespace

struct rk_dist {
  ruinkit::ClaimsDistribution d;
};

struct rk_solution {
  ruinkit::RuinSolution s;
};

extern "C" {

const char* rk_status_name(rk_status s) {
  switch (s) {
    case RK_OK: return "OK";
    case RK_ERR_NEGATIVE_PROBABILITY: return "NegativeProbability";
    case RK_ERR_SUM_NOT_ONE: return "SumNotOne";
    case RK_ERR_SUPPORT_TOO_SMALL: return "SupportTooSmall";
    case RK_ERR_NET_PROFIT_VIOLATED: return "NetProfitViolated";
    case RK_ERR_DEFLATION_RESIDUAL: return "DeflationResidual";
    case RK_ERR_NO_CONVERGENCE: return "NoConvergence";
    case RK_ERR_STRUCTURE_VIOLATION: return "StructureViolation";
    case RK_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case RK_ERR_SINGULAR_SYSTEM: return "SingularSystem";
    case RK_ERR_ILL_CONDITIONED: return "IllConditioned";
    case RK_ERR_IMAGINARY_RESIDUE: return "ImaginaryResidue";
    case RK_ERR_DEGENERATE_RATIO: return "DegenerateRatio";
    case RK_ERR_INVALID_AB0: return "InvalidAb0";
    case RK_ERR_PARSE: return "ParseError";
    case RK_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case RK_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* rk_last_error(void) { return g_last_error.c_str(); }

const char* rk_version(void) { return "ruinkit 1.0.0"; }

rk_status rk_parse_number(const char* text, double* out) {
  if (!text || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = ruinkit::parse_number(text); });
}

rk_status rk_dist_new(const double* pmf, size_t len, rk_dist** out) {
  if (!pmf || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new rk_dist{ruinkit::ClaimsDistribution::from_pmf(
        std::vector<double>(pmf, pmf + len))};
  });
}

rk_status rk_dist_parse_json(const char* text, rk_dist** out) {
  if (!text || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new rk_dist{ruinkit::ClaimsDistribution::parse_json(text)};
  });
}

rk_status rk_dist_parse_text(const char* text, rk_dist** out) {
  if (!text || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new rk_dist{ruinkit::ClaimsDistribution::parse_text(text)};
  });
}

rk_status rk_dist_load_file(const char* path, rk_dist** out) {
  if (!path || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new rk_dist{ruinkit::ClaimsDistribution::load_file(path)};
  });
}

void rk_dist_free(rk_dist* d) { delete d; }

int rk_dist_support_max(const rk_dist* d) { return d->d.support_max(); }
double rk_dist_pmf(const rk_dist* d, int k) { return d->d.pmf(k); }
double rk_dist_mean(const rk_dist* d) { return d->d.mean(); }
double rk_dist_tail(const rk_dist* d, int k) {
  return (k >= 0) ? d->d.tail(k) : 0.0;
}

void rk_solve_options_init(rk_solve_options* opts) {
  ruinkit::RootConfig cfg;
  opts->max_iterations = cfg.max_iterations;
  opts->convergence_tol = cfg.convergence_tol;
  opts->cluster_tol = cfg.cluster_tol;
  opts->polish_steps = cfg.polish_steps;
}

rk_status rk_solve(const rk_dist* d, const rk_solve_options* opts,
                   rk_solution** out) {
  if (!d || !out) return RK_ERR_INVALID_ARGUMENT;
  ruinkit::RootConfig cfg;
  if (opts) {
    cfg.max_iterations = opts->max_iterations;
    cfg.convergence_tol = opts->convergence_tol;
    cfg.cluster_tol = opts->cluster_tol;
    cfg.polish_steps = opts->polish_steps;
  }
  return guarded([&] { *out = new rk_solution{ruinkit::solve(d->d, cfg)}; });
}

void rk_solution_free(rk_solution* s) { delete s; }

size_t rk_solution_num_roots(const rk_solution* s) {
  return s->s.roots().entries.size();
}

rk_status rk_solution_root(const rk_solution* s, size_t k, double* re,
                           double* im, int* multiplicity) {
  if (!s || k >= s->s.roots().entries.size()) return RK_ERR_INVALID_ARGUMENT;
  const ruinkit::Root& r = s->s.roots().entries[k];
  if (re) *re = r.value.real();
  if (im) *im = r.value.imag();
  if (multiplicity) *multiplicity = r.multiplicity;
  return RK_OK;
}

rk_status rk_solution_coeff(const rk_solution* s, size_t k, int j, double* re,
                            double* im) {
  if (!s) return RK_ERR_INVALID_ARGUMENT;
  for (const ruinkit::Coefficient& c : s->s.coefficients().b) {
    if (c.root_index == static_cast<int>(k) && c.power == j) {
      if (re) *re = c.value.real();
      if (im) *im = c.value.imag();
      return RK_OK;
    }
  }
  g_last_error = "no coefficient for root " + std::to_string(k) + " power " +
                 std::to_string(j);
  return RK_ERR_INVALID_ARGUMENT;
}

rk_status rk_solution_psi(const rk_solution* s, long long u, double* out) {
  if (!s || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = s->s.evaluate(u); });
}

rk_status rk_solution_approx1(const rk_solution* s, long long u, double* out) {
  if (!s || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = s->s.approx1(u); });
}

rk_status rk_solution_initial(const rk_solution* s, int k, double* out) {
  if (!s || !out || k < 0 || k > s->s.initial().count())
    return RK_ERR_INVALID_ARGUMENT;
  *out = s->s.initial().psi[k];
  return RK_OK;
}

void rk_solution_z2(const rk_solution* s, double* z2, double* b2) {
  if (z2) *z2 = s->s.z2();
  if (b2) *b2 = s->s.b2();
}

double rk_solution_dominance_gap(const rk_solution* s) {
  return s->s.dominance_gap();
}

double rk_solution_fit_residual(const rk_solution* s) {
  return s->s.fit_residual();
}

size_t rk_solution_num_warnings(const rk_solution* s) {
  return s->s.warnings().size();
}

const char* rk_solution_warning(const rk_solution* s, size_t i) {
  if (i >= s->s.warnings().size()) return nullptr;
  return s->s.warnings()[i].c_str();
}

rk_status rk_approx2(const rk_dist* d, long long u, double* out) {
  if (!d || !out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = ruinkit::approx2(d->d, u); });
}

rk_status rk_approx2_from(double f0, double f1, double mean, long long u,
                          double* out) {
  if (!out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = ruinkit::approx2_from(f0, f1, mean, u); });
}

rk_status rk_psi1_psi2_closed(double f0, double f1, double mean, double* psi1,
                              double* psi2) {
  if (!psi1 || !psi2) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto [a, b] = ruinkit::psi1_psi2_closed(f0, f1, mean);
    *psi1 = a;
    *psi2 = b;
  });
}

rk_status rk_geometric_exact(double p, long long u, double* out) {
  if (!out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = ruinkit::geometric_exact(p, u); });
}

rk_status rk_gambler_exact(double p, long long u, double* out) {
  if (!out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = ruinkit::gambler_exact(p, u); });
}

rk_status rk_ab0_approx(double a, double b, long long u, double* out) {
  if (!out) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = ruinkit::ab0_approx({a, b}, u); });
}

rk_status rk_recursion_oracle(const rk_dist* d, int u_max, double* out) {
  if (!d || !out || u_max < 0) return RK_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<double> psi = ruinkit::recursion_oracle(d->d, u_max);
    std::memcpy(out, psi.data(), psi.size() * sizeof(double));
  });
}

void rk_mc_options_init(rk_mc_options* opts) {
  ruinkit::McConfig cfg;
  opts->n_paths = cfg.n_paths;
  opts->horizon = cfg.horizon;
  opts->seed = cfg.seed;
  opts->threads = cfg.threads;
}

rk_status rk_simulate_ruin(const rk_dist* d, uint64_t u,
                           const rk_mc_options* opts, rk_mc_result* out) {
  if (!d || !out) return RK_ERR_INVALID_ARGUMENT;
  ruinkit::McConfig cfg;
  if (opts) {
    cfg.n_paths = opts->n_paths;
    cfg.horizon = opts->horizon;
    cfg.seed = opts->seed;
    cfg.threads = opts->threads;
  }
  return guarded([&] {
    ruinkit::McEstimate est = ruinkit::simulate_ruin(d->d, u, cfg);
    out->estimate = est.estimate;
    out->half_width_95 = est.half_width_95;
    out->ruined_count = est.ruined_count;
    out->n_paths = est.n_paths;
    out->alive_fraction = est.alive_fraction;
  });
}

}  // extern "C"
