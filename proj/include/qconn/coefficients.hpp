#pragma once

#include <string>
#include <vector>

#include "qconn/scalar.hpp"

namespace qconn {

enum class CoeffKind { Inversion, Connection, Definition };

const char* coeff_kind_name(CoeffKind kind);

// I_m(n) or C_m(n) for m = 0..n, tagged with the formula that produced it.
struct CoefficientVector {
  std::vector<GaussScalar> values;
  int n = 0;
  CoeffKind kind = CoeffKind::Inversion;
  std::string provenance;

  static CoefficientVector delta(int n, CoeffKind kind, std::string provenance);
};

// Lower-triangular matrix stored by rows: rows[n][m] for 0 <= m <= n.
using TriangularMatrix = std::vector<std::vector<GaussScalar>>;

}  // namespace qconn
