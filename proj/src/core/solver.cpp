#include "core/solver.hpp"

#include <cmath>
#include <string>

namespace ruinkit {

ZMatrix build_z(const RootSet& roots, int m) {
  if (roots.multiplicity_total() != m)
    throw RuinError(ErrorCode::DimensionMismatch,
                    "multiplicities sum to " +
                        std::to_string(roots.multiplicity_total()) +
                        ", expected " + std::to_string(m));
  ZMatrix z;
  z.mat.resize(m, m);
  z.column_map.reserve(m);
  int col = 0;
  for (size_t k = 0; k < roots.entries.size(); ++k) {
    const Root& r = roots.entries[k];
    for (int j = 1; j <= r.multiplicity; ++j, ++col) {
      std::complex<double> zu = 1.0;
      for (int u = 1; u <= m; ++u) {
        zu *= r.value;
        z.mat(u - 1, col) = std::pow(static_cast<double>(u), j - 1) * zu;
      }
      z.column_map.emplace_back(static_cast<int>(k), j);
    }
  }
  return z;
}

CoeffSet solve_coeffs(const ZMatrix& z, const InitialValues& init) {
  const int m = static_cast<int>(z.mat.rows());
  if (init.count() != m)
    throw RuinError(ErrorCode::DimensionMismatch,
                    "initial values count " + std::to_string(init.count()) +
                        " does not match system size " + std::to_string(m));
  Eigen::VectorXcd rhs(m);
  for (int u = 1; u <= m; ++u) rhs(u - 1) = init.psi[u];

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(z.mat);
  for (int i = 0; i < m; ++i) {
    if (std::abs(lu.matrixLU()(i, i)) < 1e-300)
      throw RuinError(ErrorCode::SingularSystem,
                      "pivot " + std::to_string(i) + " below 1e-300");
  }
  Eigen::VectorXcd b = lu.solve(rhs);

  double residual = (z.mat * b - rhs).cwiseAbs().maxCoeff();
  double rhs_norm = rhs.cwiseAbs().maxCoeff();
  if (residual > 1e-8 * rhs_norm)
    throw RuinError(ErrorCode::IllConditioned,
                    "fit residual " + std::to_string(residual) +
                        " exceeds 1e-8 * " + std::to_string(rhs_norm));

  CoeffSet cs;
  cs.residual_norm = residual;
  cs.b.reserve(m);
  for (int c = 0; c < m; ++c)
    cs.b.push_back({z.column_map[c].first, z.column_map[c].second, b(c)});
  return cs;
}

}  // namespace ruinkit
