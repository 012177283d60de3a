#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qconn/coefficients.hpp"
#include "qconn/families.hpp"
#include "qconn/poly.hpp"

namespace qconn {

enum class VerifyStatus { Match, Mismatch, Error };

const char* status_name(VerifyStatus status);

struct VerificationReport {
  std::string identity_id;
  VerifyStatus status = VerifyStatus::Match;
  GaussScalar max_defect;  // first nonzero residual, 0 on Match
  std::string witness;

  bool ok() const { return status == VerifyStatus::Match; }
};

// Solves target = sum_m c_m polys[m] by back-substitution; polys[m] must be
// monomial-basis polynomials of exact degree m. Throws if a residual survives.
std::vector<GaussScalar> triangular_solve(const Polynomial& target, const std::vector<Polynomial>& polys);

CoefficientVector oracle_connection(const FamilyInstance& src, const FamilyInstance& tgt, int n);
std::vector<CoefficientVector> oracle_connection_rows(const FamilyInstance& src, const FamilyInstance& tgt,
                                                      int n_max);

CoefficientVector oracle_inversion(const FamilyInstance& inst, int n);
std::vector<CoefficientVector> oracle_inversion_rows(const FamilyInstance& inst, int n_max);

// A[n][k], k = 0..n, with P~_n = sum_k A[n][k] B_{n-k} and A[n][0] = 1.
using MonicTable = std::vector<std::vector<GaussScalar>>;

// Runs the b_m(n,k) recursion and returns I_j(n) = b_{n-j}(n,0), the
// coefficients of B_n in the monic polynomials P~_j.
CoefficientVector recursive_invert(const MonicTable& A, int n);

// Monic rescaling of a family in its own basis.
MonicTable monic_table(const FamilyInstance& inst, int n_max);

// recursive_invert on the monic rescaling, with the leading coefficients restored.
CoefficientVector recursive_inversion(const FamilyInstance& inst, int n);

using PointFunction = std::function<GaussScalar(const GaussScalar&)>;

VerificationReport verify_pointwise(const std::string& identity_id, const PointFunction& lhs,
                                    const PointFunction& rhs, const std::vector<GaussScalar>& points);

// Exact comparison of two coefficient sequences; expected is the oracle side.
VerificationReport compare_coefficients(const std::string& identity_id, const std::vector<GaussScalar>& expected,
                                        const std::vector<GaussScalar>& actual, const std::string& witness);

// 0, 1, ..., count-1.
std::vector<GaussScalar> integer_points(int count);

// Distinct Gaussian-rational points on the unit circle: ((1-t^2) + 2ti)/(1+t^2).
std::vector<GaussScalar> unit_circle_points(int count);

}  // namespace qconn
