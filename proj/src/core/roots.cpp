#include "core/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace ruinkit {

namespace detail {

std::complex<double> poly_eval(const std::vector<double>& coeffs,
                               std::complex<double> z) {
  std::complex<double> v = 0.0;
  for (double c : coeffs) v = v * z + c;
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return {0.0};
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = coeffs[i] * (n - i);
  return d;
}

AberthResult aberth(const std::vector<double>& monic, const RootConfig& cfg) {
  const int n = static_cast<int>(monic.size()) - 1;
  AberthResult out;
  if (n < 1) return out;

  // Radius = geometric mean of the root moduli (|product of roots|^(1/n)),
  // fixed angular offset to avoid symmetry stalls on real-axis roots.
  double r0 = std::pow(std::max(std::abs(monic.back()), 1e-30), 1.0 / n);
  out.points.resize(n);
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * std::numbers::pi * k / n + 0.4;
    out.points[k] = std::polar(r0, th);
  }

  const std::vector<double> deriv = poly_derivative(monic);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    out.iterations = it + 1;
    bool all_small = true;
    for (int i = 0; i < n; ++i) {
      std::complex<double> zi = out.points[i];
      std::complex<double> p = poly_eval(monic, zi);
      if (p == 0.0) continue;
      std::complex<double> dp = poly_eval(deriv, zi);
      std::complex<double> ratio =
          (dp != 0.0) ? p / dp : std::complex<double>(cfg.convergence_tol, 0);
      std::complex<double> s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        std::complex<double> diff = zi - out.points[j];
        if (diff == 0.0) diff = std::complex<double>(1e-14, 1e-14);
        s += 1.0 / diff;
      }
      std::complex<double> denom = 1.0 - ratio * s;
      std::complex<double> w = (denom != 0.0) ? ratio / denom : ratio;
      out.points[i] = zi - w;
      if (std::abs(w) > cfg.convergence_tol * (1.0 + std::abs(zi)))
        all_small = false;
    }
    if (all_small) {
      out.converged = true;
      break;
    }
  }
  for (auto& z : out.points)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      out.points.clear();
      out.converged = false;
      break;
    }
  return out;
}

std::vector<std::complex<double>> companion_roots(const std::vector<double>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  std::vector<std::complex<double>> out;
  if (n < 1) return out;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -monic[n - i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) return out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

namespace {

// Newton refinement of x on the k-th derivative of `monic` (k = mult - 1,
// where the root is simple).
std::complex<double> newton_refine(const std::vector<double>& monic, int order,
                                   std::complex<double> x, int steps) {
  std::vector<double> f = monic;
  for (int i = 0; i < order; ++i) f = poly_derivative(f);
  std::vector<double> df = poly_derivative(f);
  for (int s = 0; s < steps; ++s) {
    std::complex<double> fv = poly_eval(f, x);
    std::complex<double> dv = poly_eval(df, x);
    if (dv == 0.0) break;
    std::complex<double> step = fv / dv;
    x -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(x))) break;
  }
  return x;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

using Partition = std::vector<std::vector<int>>;

Partition snapshot(UnionFind& uf, int n) {
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  Partition p;
  for (auto& g : groups)
    if (!g.empty()) p.push_back(std::move(g));
  std::sort(p.begin(), p.end());
  return p;
}

struct Candidate {
  std::vector<Root> roots;
  double recon_error = std::numeric_limits<double>::infinity();
  bool paired = false;
};

// Refines a partition of the raw points into (root, multiplicity) entries,
// enforces conjugate pairing and measures how well the product of the
// resulting factors reproduces the input polynomial.
Candidate build_candidate(const std::vector<double>& monic,
                          const std::vector<std::complex<double>>& pts,
                          const Partition& part, const RootConfig& cfg) {
  Candidate cand;
  struct Item {
    std::complex<double> z;
    int mult;
  };
  std::vector<Item> items;
  for (const auto& group : part) {
    std::complex<double> mean = 0.0;
    for (int idx : group) mean += pts[idx];
    mean /= static_cast<double>(group.size());
    int mult = static_cast<int>(group.size());
    int steps = std::max(cfg.polish_steps, mult > 1 ? 8 : cfg.polish_steps);
    mean = newton_refine(monic, mult - 1, mean, steps);
    if (!std::isfinite(mean.real()) || !std::isfinite(mean.imag())) return cand;
    items.push_back({mean, mult});
  }

  // Flush iteration noise off the real axis, then symmetrize conjugates.
  for (auto& it : items)
    if (std::abs(it.z.imag()) <= 1e-10 * (1.0 + std::abs(it.z.real())))
      it.z = {it.z.real(), 0.0};

  std::vector<bool> used(items.size(), false);
  std::vector<Item> paired;
  for (size_t i = 0; i < items.size(); ++i) {
    if (used[i]) continue;
    if (items[i].z.imag() == 0.0) {
      paired.push_back(items[i]);
      used[i] = true;
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    size_t mate = items.size();
    for (size_t j = 0; j < items.size(); ++j) {
      if (j == i || used[j] || items[j].z.imag() == 0.0) continue;
      if (items[j].mult != items[i].mult) continue;
      if ((items[j].z.imag() > 0) == (items[i].z.imag() > 0)) continue;
      double d = std::abs(items[j].z - std::conj(items[i].z));
      if (d < best) {
        best = d;
        mate = j;
      }
    }
    double tol = std::max(cfg.cluster_tol, 1e-8) * (1.0 + std::abs(items[i].z));
    if (mate == items.size() || best > tol) return cand;  // unpaired complex root
    std::complex<double> z = 0.5 * (items[i].z + std::conj(items[mate].z));
    if (items[i].z.imag() < 0) z = std::conj(z);
    paired.push_back({z, items[i].mult});
    paired.push_back({std::conj(z), items[i].mult});
    used[i] = used[mate] = true;
  }
  cand.paired = true;

  // Reconstruct prod (y - z)^mult and compare coefficient-wise.
  std::vector<std::complex<double>> rc{1.0};
  for (const auto& it : paired)
    for (int r = 0; r < it.mult; ++r) {
      std::vector<std::complex<double>> next(rc.size() + 1, 0.0);
      for (size_t k = 0; k < rc.size(); ++k) {
        next[k] += rc[k];
        next[k + 1] -= rc[k] * it.z;
      }
      rc = std::move(next);
    }
  if (rc.size() != monic.size()) return cand;
  double err = 0.0;
  for (size_t k = 0; k < rc.size(); ++k)
    err = std::max(err, std::abs(rc[k] - monic[k]));
  cand.recon_error = err;

  cand.roots.reserve(paired.size());
  for (const auto& it : paired)
    cand.roots.push_back({it.z, it.mult, std::abs(poly_eval(monic, it.z))});
  return cand;
}

// Coarsest clustering of the points whose refined representatives still
// reproduce the polynomial. Points within cluster_tol always merge; wider
// merges must earn their keep through the reconstruction check.
bool cluster_points(const std::vector<double>& monic,
                    std::vector<std::complex<double>> pts,
                    const RootConfig& cfg, std::vector<Root>& out) {
  const int n = static_cast<int>(pts.size());
  if (n == 0) return false;

  // A few plain Newton steps per point before clustering.
  for (auto& z : pts) z = newton_refine(monic, 0, z, cfg.polish_steps);

  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double tol = cfg.cluster_tol *
                   std::max({1.0, std::abs(pts[i]), std::abs(pts[j])});
      if (std::abs(pts[i] - pts[j]) <= tol) uf.unite(i, j);
    }

  std::vector<Partition> levels{snapshot(uf, n)};
  std::vector<std::tuple<double, int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pairs.emplace_back(std::abs(pts[i] - pts[j]), i, j);
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [d, i, j] : pairs) {
    if (uf.find(i) == uf.find(j)) continue;
    uf.unite(i, j);
    levels.push_back(snapshot(uf, n));
  }

  double scale = 1.0;
  for (double c : monic) scale = std::max(scale, std::abs(c));
  const double strict = 1e-10 * scale;
  const double loose = 1e-6 * scale;

  Candidate best;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {  // coarse first
    Candidate c = build_candidate(monic, pts, *it, cfg);
    if (!c.paired) continue;
    if (c.recon_error <= strict) {
      out = std::move(c.roots);
      return true;
    }
    if (c.recon_error < best.recon_error) best = std::move(c);
  }
  if (best.paired && best.recon_error <= loose) {
    out = std::move(best.roots);
    return true;
  }
  return false;
}

void sort_canonical(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
}

}  // namespace

}  // namespace detail

RootSet find_roots(const std::vector<double>& monic, const RootConfig& cfg) {
  if (monic.size() < 2 || monic.front() != 1.0)
    throw std::invalid_argument("find_roots expects a monic polynomial of degree >= 1");
  if (!(cfg.convergence_tol > 0) || !(cfg.cluster_tol > 0) ||
      cfg.max_iterations < 1 || cfg.polish_steps < 0)
    throw std::invalid_argument("invalid RootConfig");

  // Roots at the origin come off as exact factors of y.
  std::vector<double> work = monic;
  int zero_mult = 0;
  while (work.size() > 1 && work.back() == 0.0) {
    work.pop_back();
    ++zero_mult;
  }

  const int n = static_cast<int>(work.size()) - 1;
  std::vector<Root> roots;
  if (n == 1) {
    double z = -work[1];
    roots.push_back({{z, 0.0}, 1, std::abs(detail::poly_eval(work, {z, 0.0}))});
  } else if (n >= 2) {
    detail::AberthResult ab = detail::aberth(work, cfg);
    bool ok = !ab.points.empty() &&
              detail::cluster_points(work, ab.points, cfg, roots);
    if (!ok) {
      auto ev = detail::companion_roots(work);
      ok = !ev.empty() && detail::cluster_points(work, ev, cfg, roots);
    }
    if (!ok)
      throw RuinError(ErrorCode::NoConvergence,
                      "root iteration and companion fallback both failed at degree " +
                          std::to_string(n) +
                          "; either retry with a larger max_iterations, or the root"
                          " clusters overlap beyond what binary64 coefficients can"
                          " resolve");
  }
  if (zero_mult > 0) roots.push_back({{0.0, 0.0}, zero_mult, 0.0});

  detail::sort_canonical(roots);
  RootSet rs;
  rs.entries = std::move(roots);
  rs.degree = static_cast<int>(monic.size()) - 1;
  return rs;
}

RootClassification classify(const RootSet& rs, const RootConfig& cfg) {
  if (rs.multiplicity_total() != rs.degree)
    throw RuinError(ErrorCode::StructureViolation,
                    "multiplicity total " + std::to_string(rs.multiplicity_total()) +
                        " does not match degree " + std::to_string(rs.degree));

  RootClassification cls;
  int positive_real = 0;
  bool have_negative_real = false;
  for (size_t i = 0; i < rs.entries.size(); ++i) {
    const Root& r = rs.entries[i];
    if (r.value.imag() == 0.0 && r.value.real() > 0.0) {
      positive_real += r.multiplicity;
      cls.z2_index = i;
      cls.z2 = r.value.real();
      if (r.multiplicity != 1)
        throw RuinError(ErrorCode::StructureViolation,
                        "positive root has multiplicity " +
                            std::to_string(r.multiplicity) + "; it must be simple");
    }
    if (r.value.imag() == 0.0 && r.value.real() < 0.0) have_negative_real = true;
  }
  if (positive_real != 1)
    throw RuinError(ErrorCode::StructureViolation,
                    "expected exactly one positive real root besides the unit root, found " +
                        std::to_string(positive_real));
  if (!(cls.z2 > 0.0) || !(cls.z2 < 1.0))
    throw RuinError(ErrorCode::StructureViolation,
                    "dominant root " + std::to_string(cls.z2) + " outside (0,1)");

  for (size_t i = 0; i < rs.entries.size(); ++i) {
    if (i == cls.z2_index) continue;
    const Root& r = rs.entries[i];
    double mod = std::abs(r.value);
    cls.max_subdominant = std::max(cls.max_subdominant, mod);
    if (mod > cls.z2 + cfg.cluster_tol * (1.0 + cls.z2))
      throw RuinError(ErrorCode::StructureViolation,
                      "root modulus " + std::to_string(mod) +
                          " exceeds the dominant root " + std::to_string(cls.z2));
    if (r.value.imag() != 0.0) {
      bool found = false;
      for (const Root& s : rs.entries) {
        if (s.multiplicity == r.multiplicity &&
            std::abs(s.value - std::conj(r.value)) <=
                1e-8 * (1.0 + std::abs(r.value))) {
          found = true;
          break;
        }
      }
      if (!found)
        throw RuinError(ErrorCode::StructureViolation,
                        "complex root without a conjugate partner of equal multiplicity");
    }
  }

  // Odd m means even degree here, and then a real negative root must exist.
  if ((rs.degree + 1) % 2 == 1 && !have_negative_real)
    throw RuinError(ErrorCode::StructureViolation,
                    "no negative real root despite odd characteristic degree");

  cls.dominance_gap = cls.z2 - cls.max_subdominant;
  return cls;
}

}  // namespace ruinkit
