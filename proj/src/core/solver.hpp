#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "core/recurrence.hpp"
#include "core/roots.hpp"

namespace ruinkit {

/// Square system fitting the recurrence coefficients to psi(1..m). Column
/// (k, j) holds u^{j-1} z_k^u for row u = 1..m, laid out block by block per
/// root.
struct ZMatrix {
  Eigen::MatrixXcd mat;
  std::vector<std::pair<int, int>> column_map;  // (root index, power j)
};

struct Coefficient {
  int root_index = 0;  // into the RootSet passed to build_z
  int power = 1;       // j, 1-based
  std::complex<double> value;
};

struct CoeffSet {
  std::vector<Coefficient> b;
  double residual_norm = 0.0;  // ||Z b - psi||_inf of the raw solve
};

/// Builds the system matrix from the full root set (unit root included).
/// Throws RuinError(DimensionMismatch) unless the multiplicities sum to m.
ZMatrix build_z(const RootSet& roots, int m);

/// Dense complex LU solve with partial pivoting. Throws
/// RuinError(SingularSystem) on a vanishing pivot and
/// RuinError(IllConditioned) when the residual exceeds 1e-8 * ||psi||_inf.
CoeffSet solve_coeffs(const ZMatrix& z, const InitialValues& init);

}  // namespace ruinkit
