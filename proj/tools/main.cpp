// ruin -- command-line front end for the ruinkit shared library.
//
// Subcommands:
//   solve           exact psi(u) table with approximations and the
//                   recursion-oracle column
//   mc              seeded Monte Carlo estimate of psi(u)
//   approx          closed forms without root finding
//   paper-examples  self-contained fixture suite with plot-data emission

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruinkit/ruinkit.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(rk_status s) {
  switch (s) {
    case RK_OK:
      return 0;
    case RK_ERR_NEGATIVE_PROBABILITY:
    case RK_ERR_SUM_NOT_ONE:
    case RK_ERR_SUPPORT_TOO_SMALL:
    case RK_ERR_NET_PROFIT_VIOLATED:
    case RK_ERR_DEGENERATE_RATIO:
    case RK_ERR_INVALID_AB0:
    case RK_ERR_PARSE:
    case RK_ERR_INVALID_ARGUMENT:
      return kExitValidation;
    default:
      return kExitNumerical;
  }
}

[[noreturn]] void die(rk_status s) {
  std::cerr << "error: " << rk_status_name(s) << ": " << rk_last_error() << "\n";
  std::exit(exit_code_for(s));
}

void check(rk_status s) {
  if (s != RK_OK) die(s);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Writes through a temp file and renames, so failures leave no partial file.
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write '" << tmp << "'\n";
      std::exit(kExitValidation);
    }
    out << content;
    if (!out.flush()) {
      std::cerr << "error: write failed for '" << tmp << "'\n";
      std::exit(kExitValidation);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::cerr << "error: cannot rename '" << tmp << "' to '" << path << "'\n";
    std::exit(kExitValidation);
  }
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path)
    write_file_atomic(*path, content);
  else
    std::cout << content;
}

struct SolutionView {
  rk_solution* sol = nullptr;
  ~SolutionView() { rk_solution_free(sol); }
};

struct DistView {
  rk_dist* d = nullptr;
  ~DistView() { rk_dist_free(d); }
};

std::vector<long long> resolve_u_list(const std::vector<long long>& u_list,
                                      long long u_max) {
  std::vector<long long> us = u_list;
  if (us.empty()) {
    for (long long u = 0; u <= u_max; ++u) us.push_back(u);
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  if (!us.empty() && us.front() < 0) {
    std::cerr << "error: u values must be >= 0\n";
    std::exit(kExitValidation);
  }
  if (!us.empty() && us.back() > 1000000) {
    std::cerr << "error: u values beyond 1e6 are not supported by the table commands\n";
    std::exit(kExitValidation);
  }
  return us;
}

double parse_number_flag(const std::string& text, const char* flag) {
  double v = 0.0;
  if (rk_parse_number(text.c_str(), &v) != RK_OK) {
    std::cerr << "error: ParseError: bad value '" << text << "' for " << flag << "\n";
    std::exit(kExitValidation);
  }
  return v;
}

std::string roots_csv(const rk_solution* sol) {
  std::ostringstream out;
  out << "k,z_re,z_im,multiplicity,j,b_re,b_im\n";
  const size_t n = rk_solution_num_roots(sol);
  for (size_t k = 0; k < n; ++k) {
    double re, im;
    int mult;
    rk_solution_root(sol, k, &re, &im, &mult);
    for (int j = 1; j <= mult; ++j) {
      double br, bi;
      rk_solution_coeff(sol, k, j, &br, &bi);
      out << k + 1 << ',' << fmt(re) << ',' << fmt(im) << ',' << mult << ','
          << j << ',' << fmt(br) << ',' << fmt(bi) << '\n';
    }
  }
  return out.str();
}

void print_roots_table(const rk_solution* sol, std::ostream& os) {
  os << "roots (z_k, n_k, b_k,j):\n";
  const size_t n = rk_solution_num_roots(sol);
  for (size_t k = 0; k < n; ++k) {
    double re, im;
    int mult;
    rk_solution_root(sol, k, &re, &im, &mult);
    os << "  z_" << k + 1 << " = " << fmt(re);
    if (im != 0.0) os << (im > 0 ? " + " : " - ") << fmt(std::abs(im)) << "i";
    os << "  n=" << mult << "  b =";
    for (int j = 1; j <= mult; ++j) {
      double br, bi;
      rk_solution_coeff(sol, k, j, &br, &bi);
      os << ' ' << fmt(br);
      if (bi != 0.0) os << (bi > 0 ? "+" : "-") << fmt(std::abs(bi)) << "i";
    }
    os << '\n';
  }
  double z2, b2;
  rk_solution_z2(sol, &z2, &b2);
  os << "z2 = " << fmt(z2) << ", b2 = " << fmt(b2)
     << ", dominance gap = " << fmt(rk_solution_dominance_gap(sol))
     << ", fit residual = " << fmt(rk_solution_fit_residual(sol)) << '\n';
  for (size_t i = 0; i < rk_solution_num_warnings(sol); ++i)
    os << "warning: " << rk_solution_warning(sol, i) << '\n';
}

// ---- solve ----------------------------------------------------------------

int cmd_solve(const std::string& dist_file, std::vector<long long> u_list,
              long long u_max, const std::string& format,
              std::optional<std::string> out_path,
              std::optional<std::string> roots_out,
              const std::string& tol_cluster) {
  DistView dist;
  check(rk_dist_load_file(dist_file.c_str(), &dist.d));

  rk_solve_options opts;
  rk_solve_options_init(&opts);
  if (!tol_cluster.empty()) {
    double tol = parse_number_flag(tol_cluster, "--tol-cluster");
    if (tol <= 0) {
      std::cerr << "error: --tol-cluster must be positive\n";
      return kExitValidation;
    }
    opts.cluster_tol = tol;
  }

  SolutionView sol;
  check(rk_solve(dist.d, &opts, &sol.sol));

  std::vector<long long> us = resolve_u_list(u_list, u_max);
  const long long top = us.back();
  std::vector<double> oracle(static_cast<size_t>(top) + 1);
  check(rk_recursion_oracle(dist.d, static_cast<int>(top), oracle.data()));

  struct RowVals {
    long long u;
    double psi, oracle;
    std::optional<double> a1, a2;
  };
  std::vector<RowVals> rows;
  for (long long u : us) {
    RowVals r;
    r.u = u;
    check(rk_solution_psi(sol.sol, u, &r.psi));
    r.oracle = oracle[static_cast<size_t>(u)];
    if (u >= 1) {
      double a1, a2;
      check(rk_solution_approx1(sol.sol, u, &a1));
      check(rk_approx2(dist.d, u, &a2));
      r.a1 = a1;
      r.a2 = a2;
    }
    rows.push_back(r);
  }

  if (format == "json") {
    nlohmann::json j;
    j["m"] = rk_dist_support_max(dist.d);
    j["mean"] = rk_dist_mean(dist.d);
    std::vector<double> pmf;
    for (int k = 0; k <= rk_dist_support_max(dist.d); ++k)
      pmf.push_back(rk_dist_pmf(dist.d, k));
    j["pmf"] = pmf;
    nlohmann::json roots = nlohmann::json::array();
    for (size_t k = 0; k < rk_solution_num_roots(sol.sol); ++k) {
      double re, im;
      int mult;
      rk_solution_root(sol.sol, k, &re, &im, &mult);
      nlohmann::json b = nlohmann::json::array();
      for (int jj = 1; jj <= mult; ++jj) {
        double br, bi;
        rk_solution_coeff(sol.sol, k, jj, &br, &bi);
        b.push_back({{"re", br}, {"im", bi}});
      }
      roots.push_back({{"re", re}, {"im", im}, {"multiplicity", mult}, {"b", b}});
    }
    j["roots"] = roots;
    double z2, b2;
    rk_solution_z2(sol.sol, &z2, &b2);
    j["z2"] = z2;
    j["b2"] = b2;
    j["dominance_gap"] = rk_solution_dominance_gap(sol.sol);
    j["fit_residual"] = rk_solution_fit_residual(sol.sol);
    std::vector<std::string> warnings;
    for (size_t i = 0; i < rk_solution_num_warnings(sol.sol); ++i)
      warnings.push_back(rk_solution_warning(sol.sol, i));
    j["warnings"] = warnings;
    nlohmann::json psi = nlohmann::json::array();
    for (const RowVals& r : rows) {
      nlohmann::json e = {{"u", r.u}, {"psi", r.psi}, {"oracle", r.oracle}};
      if (r.a1) {
        e["approx1"] = *r.a1;
        e["approx2"] = *r.a2;
        e["abs_err_approx1"] = std::abs(r.psi - *r.a1);
        e["abs_err_approx2"] = std::abs(r.psi - *r.a2);
      }
      psi.push_back(e);
    }
    j["psi"] = psi;
    emit(out_path, j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "u,psi,approx1,approx2,oracle,abs_err_approx1,abs_err_approx2\n";
    for (const RowVals& r : rows) {
      csv << r.u << ',' << fmt(r.psi) << ',';
      if (r.a1) csv << fmt(*r.a1);
      csv << ',';
      if (r.a2) csv << fmt(*r.a2);
      csv << ',' << fmt(r.oracle) << ',';
      if (r.a1) csv << fmt(std::abs(r.psi - *r.a1));
      csv << ',';
      if (r.a2) csv << fmt(std::abs(r.psi - *r.a2));
      csv << '\n';
    }
    emit(out_path, csv.str());
  }

  if (roots_out)
    write_file_atomic(*roots_out, roots_csv(sol.sol));
  else
    print_roots_table(sol.sol, std::cerr);
  return 0;
}

// ---- mc --------------------------------------------------------------------

int cmd_mc(const std::string& dist_file, long long u, std::uint64_t paths,
           std::uint64_t horizon, std::uint64_t seed, int threads) {
  if (u < 0) {
    std::cerr << "error: u must be >= 0\n";
    return kExitValidation;
  }
  DistView dist;
  check(rk_dist_load_file(dist_file.c_str(), &dist.d));
  rk_mc_options opts;
  rk_mc_options_init(&opts);
  opts.n_paths = paths;
  opts.horizon = horizon;
  opts.seed = seed;
  opts.threads = threads;
  rk_mc_result res;
  check(rk_simulate_ruin(dist.d, static_cast<uint64_t>(u), &opts, &res));
  std::cout << "u " << u << "\n"
            << "estimate " << fmt(res.estimate) << "\n"
            << "half_width_95 " << fmt(res.half_width_95) << "\n"
            << "ruined " << res.ruined_count << "\n"
            << "n_paths " << res.n_paths << "\n"
            << "alive_fraction " << fmt(res.alive_fraction) << "\n";
  return 0;
}

// ---- approx ----------------------------------------------------------------

int cmd_approx(const std::optional<std::string>& dist_file,
               const std::optional<std::string>& geometric_p,
               const std::optional<std::string>& gambler_p,
               const std::vector<std::string>& ab0,
               std::vector<long long> u_list, long long u_max) {
  int sources = (dist_file ? 1 : 0) + (geometric_p ? 1 : 0) +
                (gambler_p ? 1 : 0) + (ab0.empty() ? 0 : 1);
  if (sources != 1) {
    std::cerr << "error: choose exactly one of --dist, --geometric, --gambler, --ab0\n";
    return kExitValidation;
  }
  std::vector<long long> us = resolve_u_list(u_list, u_max);

  std::ostringstream csv;
  csv << "u,value\n";
  DistView dist;
  if (dist_file) check(rk_dist_load_file(dist_file->c_str(), &dist.d));

  double p = 0.0, a = 0.0, b = 0.0;
  if (geometric_p) check(rk_parse_number(geometric_p->c_str(), &p));
  if (gambler_p) check(rk_parse_number(gambler_p->c_str(), &p));
  if (!ab0.empty()) {
    check(rk_parse_number(ab0[0].c_str(), &a));
    check(rk_parse_number(ab0[1].c_str(), &b));
  }

  for (long long u : us) {
    double v = 0.0;
    if (dist_file) {
      if (u == 0)
        v = rk_dist_mean(dist.d);
      else
        check(rk_approx2(dist.d, u, &v));
    } else if (geometric_p) {
      check(rk_geometric_exact(p, u, &v));
    } else if (gambler_p) {
      if (u == 0) continue;  // closed form starts at u = 1
      check(rk_gambler_exact(p, u, &v));
    } else {
      if (u == 0) continue;
      check(rk_ab0_approx(a, b, u, &v));
    }
    csv << u << ',' << fmt(v) << '\n';
  }
  std::cout << csv.str();
  return 0;
}

// ---- paper-examples ----------------------------------------------------------

struct CellFailure {
  std::string cell;
  double got, want, tol;
};

struct Harness {
  std::vector<CellFailure> failures;
  int checks = 0;

  void close(const std::string& cell, double got, double want, double tol) {
    ++checks;
    if (!(std::abs(got - want) <= tol)) failures.push_back({cell, got, want, tol});
  }
};

struct ExpectedRoot {
  std::complex<double> z;
  int mult;
  std::vector<std::complex<double>> b;  // compared as a set per root
};

struct Fixture {
  std::string name;
  std::vector<std::string> pmf;          // fraction strings; empty -> binomial 5.2
  std::vector<ExpectedRoot> roots;
  std::vector<long long> u;
  std::vector<double> psi, psi1hat, psi2hat;
  double psi0;
  double tol;
  long long plot_umax;
  // Root positions get their own slack where the source table truncated
  // instead of rounding (one full unit of the printed place).
  double root_tol = 0.0;

  double root_tolerance() const { return root_tol > 0 ? root_tol : tol; }
};

std::vector<double> binomial_pmf_5_99_500() {
  const double p = 99.0 / 500.0;
  std::vector<double> pmf(6);
  for (int k = 0; k <= 5; ++k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (5 - k + i) / i;
    pmf[k] = c * std::pow(p, k) * std::pow(1.0 - p, 5 - k);
  }
  return pmf;
}

rk_dist* fixture_dist(const Fixture& fx) {
  rk_dist* d = nullptr;
  if (fx.pmf.empty()) {
    std::vector<double> pmf = binomial_pmf_5_99_500();
    check(rk_dist_new(pmf.data(), pmf.size(), &d));
  } else {
    nlohmann::json j;
    j["pmf"] = fx.pmf;
    check(rk_dist_parse_json(j.dump().c_str(), &d));
  }
  return d;
}

std::vector<Fixture> paper_fixtures() {
  std::vector<Fixture> fs;
  // m = 2, everything structurally exact.
  fs.push_back({"5.1",
                {"1/2", "1/4", "1/4"},
                {{{1.0, 0.0}, 1, {{0.0, 0.0}}}, {{0.5, 0.0}, 1, {{1.0, 0.0}}}},
                {1, 2, 3, 4, 5, 6},
                {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625},
                {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625},
                {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625},
                0.75,
                1e-10,
                6});
  // Binomial(5, 99/500); pmf generated, not stored.
  fs.push_back({"5.2",
                {},
                {{{1.0, 0.0}, 1, {{0.0, 0.0}}},
                 {{0.975, 0.0}, 1, {{0.995, 0.0}}},
                 {{-0.080, 0.0}, 1, {{1.556e-3, 0.0}}},
                 {{-0.057, 0.091}, 1, {{1.721e-3, 1.025e-3}}},
                 {{-0.057, -0.091}, 1, {{1.721e-3, -1.025e-3}}}},
                {1, 5, 10, 20, 50, 75, 100},
                {0.9699, 0.8778, 0.7744, 0.6027, 0.2842, 0.1519, 0.0812},
                {0.9704, 0.8778, 0.7744, 0.6027, 0.2842, 0.1519, 0.0812},
                {0.9699, 0.8792, 0.7778, 0.6087, 0.2917, 0.1580, 0.0856},
                0.99,
                5e-4,
                100,
                1e-3});
  // Two-point distribution f(0) = 7/8, f(7) = 1/8.
  fs.push_back({"5.3",
                {"7/8", "0", "0", "0", "0", "0", "0", "1/8"},
                {{{1.0, 0.0}, 1, {{0.0, 0.0}}},
                 {{0.9577, 0.0}, 1, {{0.9305, 0.0}}},
                 {{-0.6556, 0.0}, 1, {{0.0125, 0.0}}},
                 {{-0.3674, 0.5577}, 1, {{1.29e-2, 0.54e-2}}},
                 {{-0.3674, -0.5577}, 1, {{1.29e-2, -0.54e-2}}},
                 {{0.2878, 0.6536}, 1, {{1.56e-2, 1.47e-2}}},
                 {{0.2878, -0.6536}, 1, {{1.56e-2, -1.47e-2}}}},
                {1, 12, 24, 36, 48, 60},
                {0.8571, 0.5535, 0.3294, 0.1960, 0.1166, 0.0694},
                {0.8911, 0.5537, 0.3294, 0.1960, 0.1166, 0.0694},
                {0.8571, 0.6576, 0.4924, 0.3688, 0.2762, 0.2068},
                0.875,
                5e-4,
                60});
  // Real root of multiplicity 5 at -1/14.
  fs.push_back({"5.4",
                {"1/2", "3/7", "3/392", "145/2744", "775/76832", "219/268912",
                 "67/2151296", "1/2151296"},
                {{{1.0, 0.0}, 1, {{0.0, 0.0}}},
                 {{0.5, 0.0}, 1, {{0.7242, 0.0}}},
                 {{-1.0 / 14.0, 0.0},
                  5,
                  {{0.2758, 0.0}, {0.4150, 0.0}, {0.2133, 0.0}, {0.0454, 0.0}, {0.0034, 0.0}}}},
                {1, 2, 4, 6, 8, 10},
                {0.2940, 0.1932, 0.0455, 0.0113, 0.0028, 0.0007},
                {0.3621, 0.1810, 0.0453, 0.0113, 0.0028, 0.0007},
                {0.2940, 0.1932, 0.0834, 0.0360, 0.0155, 0.0067},
                0.6470,
                5e-4,
                10});
  // Double real root and a conjugate pair of double complex roots.
  fs.push_back({"5.5",
                {"1/2", "9/28", "477/3136", "543/21952", "9433/19668992",
                 "4462/3813049", "146689/1927561216", "7155/1927561216",
                 "2809/1927561216"},
                {{{1.0, 0.0}, 1, {{0.0, 0.0}}},
                 {{0.5, 0.0}, 1, {{0.82594, 0.0}}},
                 {{-1.0 / 7.0, 0.0}, 2, {{0.07341, 0.0}, {0.02094, 0.0}}},
                 {{1.0 / 28.0, 0.125},
                  2,
                  {{0.01243, -0.00945}, {0.05033, -0.03952}}},
                 {{1.0 / 28.0, -0.125},
                  2,
                  {{0.01243, 0.00945}, {0.05033, 0.03952}}}},
                {1, 2, 4, 6, 8, 10},
                {0.4162, 0.2077, 0.0517, 0.0129, 0.0032, 0.0008},
                {0.4130, 0.2065, 0.0516, 0.0129, 0.0032, 0.0008},
                {0.4162, 0.2077, 0.0517, 0.0129, 0.0032, 0.0008},
                0.7081,
                5e-4,
                10});
  return fs;
}

void check_fixture(const Fixture& fx, Harness& h,
                   const std::optional<std::string>& plots_dir) {
  DistView dist;
  dist.d = fixture_dist(fx);
  SolutionView sol;
  check(rk_solve(dist.d, nullptr, &sol.sol));

  h.close(fx.name + ":psi(0)", rk_dist_mean(dist.d), fx.psi0, fx.tol);

  // Match each expected root to the nearest computed one.
  const size_t nroots = rk_solution_num_roots(sol.sol);
  h.close(fx.name + ":root-count", static_cast<double>(nroots),
          static_cast<double>(fx.roots.size()), 0.1);
  for (const ExpectedRoot& er : fx.roots) {
    size_t best = 0;
    double best_d = 1e300;
    for (size_t k = 0; k < nroots; ++k) {
      double re, im;
      int mult;
      rk_solution_root(sol.sol, k, &re, &im, &mult);
      double d = std::abs(std::complex<double>(re, im) - er.z);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    double re, im;
    int mult;
    rk_solution_root(sol.sol, best, &re, &im, &mult);
    std::string tag = fx.name + ":z(" + fmt(er.z.real()) +
                      (er.z.imag() != 0 ? "," + fmt(er.z.imag()) : "") + ")";
    h.close(tag + ":re", re, er.z.real(), fx.root_tolerance());
    h.close(tag + ":im", im, er.z.imag(), fx.root_tolerance());
    h.close(tag + ":multiplicity", mult, er.mult, 0.1);
    // Coefficients compared as a per-root set, sorted by (re, im).
    std::vector<std::complex<double>> got;
    for (int j = 1; j <= mult; ++j) {
      double br, bi;
      rk_solution_coeff(sol.sol, best, j, &br, &bi);
      got.emplace_back(br, bi);
    }
    std::vector<std::complex<double>> want = er.b;
    auto lex = [](std::complex<double> a, std::complex<double> b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    std::sort(got.begin(), got.end(), lex);
    std::sort(want.begin(), want.end(), lex);
    for (size_t i = 0; i < want.size() && i < got.size(); ++i)
      h.close(tag + ":b[" + std::to_string(i + 1) + "]",
              std::abs(got[i] - want[i]), 0.0, fx.tol);
  }

  for (size_t i = 0; i < fx.u.size(); ++i) {
    double psi, a1, a2;
    check(rk_solution_psi(sol.sol, fx.u[i], &psi));
    check(rk_solution_approx1(sol.sol, fx.u[i], &a1));
    check(rk_approx2(dist.d, fx.u[i], &a2));
    std::string at = "(" + std::to_string(fx.u[i]) + ")";
    h.close(fx.name + ":psi" + at, psi, fx.psi[i], fx.tol);
    h.close(fx.name + ":psi1hat" + at, a1, fx.psi1hat[i], fx.tol);
    h.close(fx.name + ":psi2hat" + at, a2, fx.psi2hat[i], fx.tol);
  }

  if (plots_dir) {
    std::ostringstream csv;
    csv << "u,psi,approx1,approx2\n";
    for (long long u = 0; u <= fx.plot_umax; ++u) {
      double psi;
      check(rk_solution_psi(sol.sol, u, &psi));
      csv << u << ',' << fmt(psi) << ',';
      if (u >= 1) {
        double a1, a2;
        check(rk_solution_approx1(sol.sol, u, &a1));
        check(rk_approx2(dist.d, u, &a2));
        csv << fmt(a1) << ',' << fmt(a2);
      } else {
        csv << ',';
      }
      csv << '\n';
    }
    std::string name = "ex" + fx.name.substr(0, 1) + fx.name.substr(2) + ".csv";
    write_file_atomic((std::filesystem::path(*plots_dir) / name).string(), csv.str());
  }
}

void check_gambler(Harness& h) {
  for (double p : {0.51, 0.6, 0.75, 0.9}) {
    double pmf[3] = {p, 0.0, 1.0 - p};
    DistView dist;
    check(rk_dist_new(pmf, 3, &dist.d));
    SolutionView sol;
    check(rk_solve(dist.d, nullptr, &sol.sol));
    for (long long u = 1; u <= 50; ++u) {
      double psi, closed;
      check(rk_solution_psi(sol.sol, u, &psi));
      check(rk_gambler_exact(p, u, &closed));
      h.close("gambler(p=" + fmt(p) + "):psi(" + std::to_string(u) + ")", psi,
              closed, 1e-10);
    }
  }
}

int cmd_paper_examples(const std::optional<std::string>& plots_dir,
                       bool self_test) {
  if (plots_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*plots_dir, ec);
    if (ec) {
      std::cerr << "error: cannot create '" << *plots_dir << "'\n";
      return kExitValidation;
    }
  }
  Harness h;
  std::vector<Fixture> fixtures = paper_fixtures();
  if (self_test) {
    // Plant a wrong expectation to prove the comparator catches it.
    fixtures[0].roots[1].b[0] = {0.99, 0.0};
  }
  for (const Fixture& fx : fixtures) check_fixture(fx, h, plots_dir);
  check_gambler(h);

  for (const CellFailure& f : h.failures)
    std::cout << "[FAIL] " << f.cell << ": got " << fmt(f.got) << ", want "
              << fmt(f.want) << " (tol " << fmt(f.tol) << ")\n";
  std::cout << (h.failures.empty() ? "[PASS] " : "[FAIL] ")
            << (h.checks - static_cast<int>(h.failures.size())) << "/"
            << h.checks << " checks passed\n";
  return h.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and approximate ultimate-ruin probabilities for "
               "discrete-time risk processes with bounded claims"};
  app.require_subcommand(1);

  // solve
  std::string dist_file;
  std::vector<long long> u_list;
  long long u_max = 10;
  std::string format = "csv";
  std::string out_path, roots_out;
  std::string tol_cluster;
  auto* solve = app.add_subcommand("solve", "exact psi(u) with approximations");
  solve->add_option("dist", dist_file, "distribution file (JSON or 'k value' lines)")
      ->required();
  auto* uopt = solve->add_option("--u", u_list, "explicit u values")->delimiter(',');
  solve->add_option("--u-max", u_max, "evaluate u = 0..N (default 10)")->excludes(uopt);
  solve->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--out", out_path, "write the table here instead of stdout");
  solve->add_option("--roots-out", roots_out, "write the roots table as CSV");
  solve->add_option("--tol-cluster", tol_cluster, "root clustering tolerance")
      ->envname("RUINKIT_TOL_CLUSTER");

  // mc
  std::string mc_dist;
  long long mc_u = 0;
  std::uint64_t paths = 100000, horizon = 100000, seed = 0;
  int threads = 0;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of psi(u)");
  mc->add_option("dist", mc_dist, "distribution file")->required();
  mc->add_option("--u", mc_u, "initial capital (default 0)");
  mc->add_option("--paths", paths, "number of simulated paths");
  mc->add_option("--horizon", horizon, "time steps per path");
  mc->add_option("--seed", seed, "RNG seed")->envname("RUINKIT_SEED");
  mc->add_option("--threads", threads, "worker threads (0 = auto)");

  // approx
  std::optional<std::string> ap_dist, ap_geometric, ap_gambler;
  std::vector<std::string> ap_ab0;
  std::vector<long long> ap_u;
  long long ap_umax = 10;
  auto* approx = app.add_subcommand(
      "approx", "closed forms and the two-point estimate, no root finding");
  approx->add_option("--dist", ap_dist, "two-point estimate from a distribution file");
  approx->add_option("--geometric", ap_geometric, "exact for geometric claims, p in (1/2,1)");
  approx->add_option("--gambler", ap_gambler, "gambler's-ruin closed form, p in (1/2,1)");
  approx->add_option("--ab0", ap_ab0, "(a,b,0)-class estimate; two values a b")
      ->expected(2);
  approx->add_option("--u", ap_u, "explicit u values")->delimiter(',');
  approx->add_option("--u-max", ap_umax, "evaluate u = 0..N (default 10)");

  // paper-examples
  std::optional<std::string> plots_dir;
  bool self_test = false;
  auto* paper = app.add_subcommand("paper-examples",
                                   "verify the built-in example fixtures");
  paper->add_option("--emit-plots", plots_dir, "write one plot-data CSV per example");
  paper->add_flag("--self-test", self_test,
                  "plant a wrong expectation; the run must then fail");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed())
    return cmd_solve(dist_file, u_list, u_max, format,
                     out_path.empty() ? std::nullopt : std::optional(out_path),
                     roots_out.empty() ? std::nullopt : std::optional(roots_out),
                     tol_cluster);
  if (mc->parsed())
    return cmd_mc(mc_dist, mc_u, paths, horizon, seed, threads);
  if (approx->parsed())
    return cmd_approx(ap_dist, ap_geometric, ap_gambler, ap_ab0, ap_u, ap_umax);
  if (paper->parsed()) return cmd_paper_examples(plots_dir, self_test);
  return 0;
}
