#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "ruinkit/ruinkit.h"

namespace {

struct Dist {
  rk_dist* d = nullptr;
  ~Dist() { rk_dist_free(d); }
};

struct Sol {
  rk_solution* s = nullptr;
  ~Sol() { rk_solution_free(s); }
};

}  // namespace

TEST_CASE("library identifies itself") {
  CHECK(std::strcmp(rk_version(), "ruinkit 1.0.0") == 0);
  CHECK(std::strcmp(rk_status_name(RK_OK), "OK") == 0);
  CHECK(std::strcmp(rk_status_name(RK_ERR_SUM_NOT_ONE), "SumNotOne") == 0);
}

TEST_CASE("distribution lifecycle and getters") {
  const double pmf[] = {0.5, 0.25, 0.25};
  Dist d;
  REQUIRE(rk_dist_new(pmf, 3, &d.d) == RK_OK);
  CHECK(rk_dist_support_max(d.d) == 2);
  CHECK(rk_dist_mean(d.d) == doctest::Approx(0.75));
  CHECK(rk_dist_pmf(d.d, 1) == 0.25);
  CHECK(rk_dist_pmf(d.d, 9) == 0.0);
  CHECK(rk_dist_tail(d.d, 0) == 0.5);
  CHECK(rk_dist_tail(d.d, 2) == 0.0);
}

TEST_CASE("validation failures map to status codes with messages") {
  const double bad_sum[] = {0.5, 0.2, 0.2};
  rk_dist* d = nullptr;
  CHECK(rk_dist_new(bad_sum, 3, &d) == RK_ERR_SUM_NOT_ONE);
  CHECK(std::strlen(rk_last_error()) > 0);

  const double heavy[] = {0.25, 0.25, 0.5};
  CHECK(rk_dist_new(heavy, 3, &d) == RK_ERR_NET_PROFIT_VIOLATED);

  const double tiny[] = {1.0};
  CHECK(rk_dist_new(tiny, 1, &d) == RK_ERR_SUPPORT_TOO_SMALL);

  const double negative[] = {0.6, -0.1, 0.5};
  CHECK(rk_dist_new(negative, 3, &d) == RK_ERR_NEGATIVE_PROBABILITY);

  CHECK(rk_dist_parse_json("{oops", &d) == RK_ERR_PARSE);
  CHECK(rk_dist_new(nullptr, 0, &d) == RK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("json and text parsing accept fraction strings") {
  Dist d;
  REQUIRE(rk_dist_parse_json(R"({"pmf": ["1/2", "1/4", "1/4"]})", &d.d) == RK_OK);
  CHECK(rk_dist_pmf(d.d, 0) == 0.5);

  Dist t;
  REQUIRE(rk_dist_parse_text("0 7/8\n7 1/8\n", &t.d) == RK_OK);
  CHECK(rk_dist_support_max(t.d) == 7);

  double v = 0.0;
  CHECK(rk_parse_number("145/2744", &v) == RK_OK);
  CHECK(v == doctest::Approx(145.0 / 2744.0));
  CHECK(rk_parse_number("x", &v) == RK_ERR_PARSE);
}

TEST_CASE("file loading dispatches on content") {
  const char* path = "capi_test_dist.json";
  {
    std::ofstream f(path);
    f << R"({"pmf": [0.5, 0.25, 0.25]})";
  }
  Dist d;
  REQUIRE(rk_dist_load_file(path, &d.d) == RK_OK);
  CHECK(rk_dist_support_max(d.d) == 2);
  std::remove(path);

  rk_dist* missing = nullptr;
  CHECK(rk_dist_load_file("does_not_exist.json", &missing) == RK_ERR_PARSE);
}

TEST_CASE("solve exposes roots, coefficients and evaluation") {
  const double pmf[] = {0.5, 0.25, 0.25};
  Dist d;
  REQUIRE(rk_dist_new(pmf, 3, &d.d) == RK_OK);

  rk_solve_options opts;
  rk_solve_options_init(&opts);
  CHECK(opts.max_iterations == 200);
  CHECK(opts.cluster_tol == doctest::Approx(1e-6));

  Sol s;
  REQUIRE(rk_solve(d.d, &opts, &s.s) == RK_OK);
  REQUIRE(rk_solution_num_roots(s.s) == 2);

  double re, im;
  int mult;
  REQUIRE(rk_solution_root(s.s, 0, &re, &im, &mult) == RK_OK);
  CHECK(re == 1.0);
  CHECK(mult == 1);
  REQUIRE(rk_solution_root(s.s, 1, &re, &im, &mult) == RK_OK);
  CHECK(re == doctest::Approx(0.5).epsilon(1e-12));

  double br, bi;
  REQUIRE(rk_solution_coeff(s.s, 1, 1, &br, &bi) == RK_OK);
  CHECK(br == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rk_solution_coeff(s.s, 1, 2, &br, &bi) == RK_ERR_INVALID_ARGUMENT);
  CHECK(rk_solution_root(s.s, 9, &re, &im, &mult) == RK_ERR_INVALID_ARGUMENT);

  double psi;
  REQUIRE(rk_solution_psi(s.s, 0, &psi) == RK_OK);
  CHECK(psi == doctest::Approx(0.75));
  REQUIRE(rk_solution_psi(s.s, 4, &psi) == RK_OK);
  CHECK(psi == doctest::Approx(0.0625).epsilon(1e-10));
  CHECK(rk_solution_psi(s.s, -1, &psi) == RK_ERR_INVALID_ARGUMENT);

  double a1;
  REQUIRE(rk_solution_approx1(s.s, 3, &a1) == RK_OK);
  CHECK(a1 == doctest::Approx(0.125).epsilon(1e-10));

  double init;
  REQUIRE(rk_solution_initial(s.s, 1, &init) == RK_OK);
  CHECK(init == doctest::Approx(0.5));

  double z2, b2;
  rk_solution_z2(s.s, &z2, &b2);
  CHECK(z2 == doctest::Approx(0.5));
  CHECK(b2 == doctest::Approx(1.0));
  CHECK(rk_solution_dominance_gap(s.s) == doctest::Approx(0.5));
  CHECK(rk_solution_fit_residual(s.s) <= 1e-12);
  CHECK(rk_solution_num_warnings(s.s) == 0);
}

TEST_CASE("oracle, simulation and closed forms through the C surface") {
  const double pmf[] = {0.5, 0.25, 0.25};
  Dist d;
  REQUIRE(rk_dist_new(pmf, 3, &d.d) == RK_OK);

  double psi[5];
  REQUIRE(rk_recursion_oracle(d.d, 4, psi) == RK_OK);
  CHECK(psi[0] == doctest::Approx(0.75));
  CHECK(psi[3] == doctest::Approx(0.125));

  rk_mc_options mo;
  rk_mc_options_init(&mo);
  CHECK(mo.n_paths == 100000);
  mo.n_paths = 20000;
  mo.horizon = 5000;
  mo.seed = 11;
  rk_mc_result res;
  REQUIRE(rk_simulate_ruin(d.d, 1, &mo, &res) == RK_OK);
  CHECK(std::abs(res.estimate - 0.5) <= 4.0 * res.half_width_95);
  rk_mc_result res2;
  REQUIRE(rk_simulate_ruin(d.d, 1, &mo, &res2) == RK_OK);
  CHECK(res.ruined_count == res2.ruined_count);

  double v;
  REQUIRE(rk_approx2(d.d, 2, &v) == RK_OK);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  REQUIRE(rk_geometric_exact(0.6, 1, &v) == RK_OK);
  CHECK(v == doctest::Approx(4.0 / 9.0));
  CHECK(rk_geometric_exact(0.4, 1, &v) == RK_ERR_NET_PROFIT_VIOLATED);
  REQUIRE(rk_gambler_exact(0.75, 2, &v) == RK_OK);
  CHECK(v == doctest::Approx(1.0 / 9.0));
  REQUIRE(rk_ab0_approx(0.4, 0.0, 1, &v) == RK_OK);
  CHECK(rk_ab0_approx(1.0, 0.1, 1, &v) == RK_ERR_INVALID_AB0);

  double p1, p2;
  REQUIRE(rk_psi1_psi2_closed(0.5, 0.25, 0.75, &p1, &p2) == RK_OK);
  CHECK(p1 == doctest::Approx(0.5));
  CHECK(p2 == doctest::Approx(0.25));
}
