/* ruinkit -- exact ultimate-ruin probabilities for discrete-time risk
 * processes with bounded claims, plus approximations and verification
 * oracles. C interface over the shared library; handles are opaque and must
 * be released with the matching _free call. All functions returning
 * rk_status leave their outputs untouched on failure; rk_last_error() gives
 * a thread-local description of the most recent failure. */

#ifndef RUINKIT_H
#define RUINKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_NEGATIVE_PROBABILITY = 1,
  RK_ERR_SUM_NOT_ONE = 2,
  RK_ERR_SUPPORT_TOO_SMALL = 3,
  RK_ERR_NET_PROFIT_VIOLATED = 4,
  RK_ERR_DEFLATION_RESIDUAL = 5,
  RK_ERR_NO_CONVERGENCE = 6,
  RK_ERR_STRUCTURE_VIOLATION = 7,
  RK_ERR_DIMENSION_MISMATCH = 8,
  RK_ERR_SINGULAR_SYSTEM = 9,
  RK_ERR_ILL_CONDITIONED = 10,
  RK_ERR_IMAGINARY_RESIDUE = 11,
  RK_ERR_DEGENERATE_RATIO = 12,
  RK_ERR_INVALID_AB0 = 13,
  RK_ERR_PARSE = 14,
  RK_ERR_INVALID_ARGUMENT = 15,
  RK_ERR_INTERNAL = 16
} rk_status;

const char* rk_status_name(rk_status s);
const char* rk_last_error(void);
const char* rk_version(void);

/* A number token may be a decimal or an exact fraction like "145/2744". */
rk_status rk_parse_number(const char* text, double* out);

/* ---- claims distributions ---------------------------------------------- */

typedef struct rk_dist rk_dist;

rk_status rk_dist_new(const double* pmf, size_t len, rk_dist** out);
rk_status rk_dist_parse_json(const char* text, rk_dist** out);
rk_status rk_dist_parse_text(const char* text, rk_dist** out);
rk_status rk_dist_load_file(const char* path, rk_dist** out);
void rk_dist_free(rk_dist* d);

int rk_dist_support_max(const rk_dist* d); /* m */
double rk_dist_pmf(const rk_dist* d, int k);
double rk_dist_mean(const rk_dist* d);
double rk_dist_tail(const rk_dist* d, int k);

/* ---- exact solution ----------------------------------------------------- */

typedef struct rk_solve_options {
  int max_iterations;     /* root iteration cap (default 200) */
  double convergence_tol; /* per-root correction bound (default 1e-13) */
  double cluster_tol;     /* root clustering floor (default 1e-6) */
  int polish_steps;       /* Newton polish steps (default 3) */
} rk_solve_options;

void rk_solve_options_init(rk_solve_options* opts);

typedef struct rk_solution rk_solution;

rk_status rk_solve(const rk_dist* d, const rk_solve_options* opts,
                   rk_solution** out);
void rk_solution_free(rk_solution* s);

size_t rk_solution_num_roots(const rk_solution* s);
rk_status rk_solution_root(const rk_solution* s, size_t k, double* re,
                           double* im, int* multiplicity);
/* Coefficient b_{k,j} for the k-th root, power j = 1..multiplicity. */
rk_status rk_solution_coeff(const rk_solution* s, size_t k, int j, double* re,
                            double* im);
/* psi(u); u = 0 gives the mean claim. */
rk_status rk_solution_psi(const rk_solution* s, long long u, double* out);
/* One-term approximation b2 z2^u, u >= 1. */
rk_status rk_solution_approx1(const rk_solution* s, long long u, double* out);
/* Initial values psi(1..m). */
rk_status rk_solution_initial(const rk_solution* s, int k, double* out);
void rk_solution_z2(const rk_solution* s, double* z2, double* b2);
double rk_solution_dominance_gap(const rk_solution* s);
double rk_solution_fit_residual(const rk_solution* s);
size_t rk_solution_num_warnings(const rk_solution* s);
const char* rk_solution_warning(const rk_solution* s, size_t i);

/* ---- approximations and closed forms ------------------------------------ */

/* Two-point extrapolation psi(1) (psi(2)/psi(1))^(u-1); exact at u = 1, 2. */
rk_status rk_approx2(const rk_dist* d, long long u, double* out);
rk_status rk_approx2_from(double f0, double f1, double mean, long long u,
                          double* out);
rk_status rk_psi1_psi2_closed(double f0, double f1, double mean, double* psi1,
                              double* psi2);
/* Geometric claims, exact: ((1-p)/p)^(u+1), p in (1/2,1), u >= 0. */
rk_status rk_geometric_exact(double p, long long u, double* out);
/* Gambler's ruin closed form (q/p)^u, u >= 1. */
rk_status rk_gambler_exact(double p, long long u, double* out);
/* (a,b,0) claims class approximation; a = 0 selects the Poisson member. */
rk_status rk_ab0_approx(double a, double b, long long u, double* out);

/* ---- verification oracles ----------------------------------------------- */

/* Fills out[0..u_max] with psi from the root-free forward recursion. */
rk_status rk_recursion_oracle(const rk_dist* d, int u_max, double* out);

typedef struct rk_mc_options {
  uint64_t n_paths; /* default 100000 */
  uint64_t horizon; /* default 100000 */
  uint64_t seed;    /* default 0 */
  int threads;      /* 0 = auto; never changes the estimate */
} rk_mc_options;

void rk_mc_options_init(rk_mc_options* opts);

typedef struct rk_mc_result {
  double estimate;
  double half_width_95;
  uint64_t ruined_count;
  uint64_t n_paths;
  double alive_fraction;
} rk_mc_result;

rk_status rk_simulate_ruin(const rk_dist* d, uint64_t u,
                           const rk_mc_options* opts, rk_mc_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RUINKIT_H */
