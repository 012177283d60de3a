#include "qconn/coefficients.hpp"

namespace qconn {

const char* coeff_kind_name(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::Inversion: return "inversion";
    case CoeffKind::Connection: return "connection";
    case CoeffKind::Definition: return "definition";
  }
  return "unknown";
}

CoefficientVector CoefficientVector::delta(int n, CoeffKind kind, std::string provenance) {
  CoefficientVector v;
  v.values.assign(static_cast<size_t>(n) + 1, GaussScalar(0));
  v.values.back() = GaussScalar(1);
  v.n = n;
  v.kind = kind;
  v.provenance = std::move(provenance);
  return v;
}

}  // namespace qconn
