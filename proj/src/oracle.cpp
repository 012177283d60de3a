#include "qconn/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "qconn/error.hpp"

namespace qconn {

const char* status_name(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::Match: return "Match";
    case VerifyStatus::Mismatch: return "Mismatch";
    case VerifyStatus::Error: return "Error";
  }
  return "Unknown";
}

std::vector<GaussScalar> triangular_solve(const Polynomial& target, const std::vector<Polynomial>& polys) {
  int n = static_cast<int>(polys.size()) - 1;
  if (target.degree() > n)
    throw Error(ErrorKind::ShapeMismatch, "target degree exceeds the polynomial set");
  std::vector<GaussScalar> residual = target.coeffs();
  residual.resize(static_cast<size_t>(n) + 1, GaussScalar(0));
  std::vector<GaussScalar> c(static_cast<size_t>(n) + 1, GaussScalar(0));
  for (int m = n; m >= 0; --m) {
    const Polynomial& p = polys[static_cast<size_t>(m)];
    if (p.degree() != m)
      throw Error(ErrorKind::DegenerateLeadingCoefficient,
                  "polynomial of index " + std::to_string(m) + " does not have exact degree " + std::to_string(m));
    const GaussScalar& r = residual[static_cast<size_t>(m)];
    if (r.is_zero()) continue;
    GaussScalar cm = r / p.coeffs()[static_cast<size_t>(m)];
    for (int k = 0; k <= m; ++k) residual[static_cast<size_t>(k)] -= cm * p.coeffs()[static_cast<size_t>(k)];
    c[static_cast<size_t>(m)] = std::move(cm);
  }
  for (const auto& r : residual)
    if (!r.is_zero()) throw std::logic_error("triangular solve left a nonzero residual");
  return c;
}

namespace {

void check_pair(const FamilyInstance& src, const FamilyInstance& tgt) {
  if (!src.spec().expansion_capable || !tgt.spec().expansion_capable)
    throw Error(ErrorKind::NotExpansionCapable, "oracle needs expansion-capable families");
  if (!(src.q() == tgt.q()))
    throw Error(ErrorKind::MixedContexts, "source and target use different q");
  if (!src.same_variable(tgt))
    throw Error(ErrorKind::VariableMismatch, src.id() + " (" + src.variable_key() + ") and " + tgt.id() + " (" +
                                                 tgt.variable_key() + ") use different working variables");
}

CoefficientVector wrap(std::vector<GaussScalar> values, int n, CoeffKind kind) {
  CoefficientVector v;
  v.values = std::move(values);
  v.n = n;
  v.kind = kind;
  v.provenance = "oracle";
  return v;
}

}  // namespace

std::vector<CoefficientVector> oracle_connection_rows(const FamilyInstance& src, const FamilyInstance& tgt,
                                                      int n_max) {
  check_pair(src, tgt);
  auto sources = family_polynomials(src, n_max);
  auto targets = family_polynomials(tgt, n_max);
  std::vector<CoefficientVector> rows;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Polynomial> prefix(targets.begin(), targets.begin() + n + 1);
    rows.push_back(wrap(triangular_solve(sources[static_cast<size_t>(n)], prefix), n, CoeffKind::Connection));
  }
  return rows;
}

CoefficientVector oracle_connection(const FamilyInstance& src, const FamilyInstance& tgt, int n) {
  check_pair(src, tgt);
  auto targets = family_polynomials(tgt, n);
  return wrap(triangular_solve(family_polynomial(src, n), targets), n, CoeffKind::Connection);
}

std::vector<CoefficientVector> oracle_inversion_rows(const FamilyInstance& inst, int n_max) {
  if (!inst.spec().expansion_capable)
    throw Error(ErrorKind::NotExpansionCapable, inst.id() + " has no polynomial basis");
  auto polys = family_polynomials(inst, n_max);
  auto basis = basis_elements(inst.basis(), n_max);
  std::vector<CoefficientVector> rows;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Polynomial> prefix(polys.begin(), polys.begin() + n + 1);
    rows.push_back(wrap(triangular_solve(basis[static_cast<size_t>(n)], prefix), n, CoeffKind::Inversion));
  }
  return rows;
}

CoefficientVector oracle_inversion(const FamilyInstance& inst, int n) {
  if (!inst.spec().expansion_capable)
    throw Error(ErrorKind::NotExpansionCapable, inst.id() + " has no polynomial basis");
  auto polys = family_polynomials(inst, n);
  return wrap(triangular_solve(basis_element(inst.basis(), n), polys), n, CoeffKind::Inversion);
}

CoefficientVector recursive_invert(const MonicTable& A, int n) {
  if (static_cast<int>(A.size()) <= n) throw Error(ErrorKind::ShapeMismatch, "monic table too short");
  for (int j = 0; j <= n; ++j) {
    const auto& row = A[static_cast<size_t>(j)];
    if (static_cast<int>(row.size()) < j + 1 || !row[0].is_one())
      throw Error(ErrorKind::NonMonic, "row " + std::to_string(j) + " of the expansion table is not monic");
  }
  auto a = [&](int j, int k) -> const GaussScalar& { return A[static_cast<size_t>(j)][static_cast<size_t>(k)]; };
  // b holds b_m(n, k) for k = 0..n-m.
  std::vector<GaussScalar> b(static_cast<size_t>(n) + 1, GaussScalar(0));
  b[0] = GaussScalar(1);
  std::vector<GaussScalar> values(static_cast<size_t>(n) + 1);
  values[static_cast<size_t>(n)] = b[0];
  for (int m = 0; m < n; ++m) {
    GaussScalar b0 = b[0];
    std::vector<GaussScalar> next(static_cast<size_t>(n - m), GaussScalar(0));
    for (int k = 0; k < n - m; ++k) next[static_cast<size_t>(k)] = b[static_cast<size_t>(k) + 1] - b0 * a(n - m, k + 1);
    b = std::move(next);
    values[static_cast<size_t>(n - m - 1)] = b[0];
  }
  CoefficientVector out;
  out.values = std::move(values);
  out.n = n;
  out.kind = CoeffKind::Inversion;
  out.provenance = "lemma2.2";
  return out;
}

MonicTable monic_table(const FamilyInstance& inst, int n_max) {
  MonicTable A;
  for (int n = 0; n <= n_max; ++n) {
    auto d = family_basis_coefficients(inst, n);
    const GaussScalar& lead = d.back();
    std::vector<GaussScalar> row(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) row[static_cast<size_t>(k)] = d[static_cast<size_t>(n - k)] / lead;
    A.push_back(std::move(row));
  }
  return A;
}

CoefficientVector recursive_inversion(const FamilyInstance& inst, int n) {
  CoefficientVector v = recursive_invert(monic_table(inst, n), n);
  for (int j = 0; j <= n; ++j) v.values[static_cast<size_t>(j)] /= family_basis_coefficients(inst, j).back();
  return v;
}

VerificationReport verify_pointwise(const std::string& identity_id, const PointFunction& lhs,
                                    const PointFunction& rhs, const std::vector<GaussScalar>& points) {
  VerificationReport report{identity_id, VerifyStatus::Match, GaussScalar(0), ""};
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) throw Error(ErrorKind::UsageError, "verification points must be distinct");
  for (const auto& y : points) {
    GaussScalar defect;
    try {
      defect = lhs(y) - rhs(y);
    } catch (const Error& e) {
      report.status = VerifyStatus::Error;
      report.witness = "point " + y.str() + ": " + e.what();
      return report;
    }
    if (!defect.is_zero()) {
      report.status = VerifyStatus::Mismatch;
      report.max_defect = defect;
      report.witness = "point " + y.str();
      return report;
    }
  }
  report.witness = std::to_string(points.size()) + " points";
  return report;
}

VerificationReport compare_coefficients(const std::string& identity_id, const std::vector<GaussScalar>& expected,
                                        const std::vector<GaussScalar>& actual, const std::string& witness) {
  VerificationReport report{identity_id, VerifyStatus::Match, GaussScalar(0), witness};
  size_t len = std::max(expected.size(), actual.size());
  for (size_t m = 0; m < len; ++m) {
    GaussScalar e = m < expected.size() ? expected[m] : GaussScalar(0);
    GaussScalar a = m < actual.size() ? actual[m] : GaussScalar(0);
    if (!(e == a)) {
      report.status = VerifyStatus::Mismatch;
      report.max_defect = a - e;
      report.witness = witness + " m=" + std::to_string(m);
      return report;
    }
  }
  return report;
}

std::vector<GaussScalar> integer_points(int count) {
  std::vector<GaussScalar> out;
  for (int i = 0; i < count; ++i) out.emplace_back(i);
  return out;
}

std::vector<GaussScalar> unit_circle_points(int count) {
  std::vector<GaussScalar> out;
  // Walk t = a/b with 0 < a < b, gcd(a, b) = 1, in order of b; each t gives a distinct point.
  for (long b = 2; static_cast<int>(out.size()) < count; ++b) {
    for (long a = 1; a < b && static_cast<int>(out.size()) < count; ++a) {
      mpz_class g;
      mpz_class ma(a), mb(b);
      mpz_gcd(g.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
      if (g != 1) continue;
      Rational t(a, b);
      Rational den = 1 + t * t;
      out.emplace_back(Rational((1 - t * t) / den), Rational(2 * t / den));
    }
  }
  return out;
}

}  // namespace qconn
