#include <doctest.h>

#include <set>

#include "qconn/coeffs.hpp"
#include "qconn/oracle.hpp"

using namespace qconn;

namespace {
using V = std::vector<GaussScalar>;
GaussScalar r(long n, long d = 1) { return GaussScalar(n, d); }
}  // namespace

TEST_CASE("oracle basics") {
  Context third = make_context(r(1, 3));
  FamilyInstance lql = make_instance("little-q-laguerre", {{"a", r(1, 2)}}, third);
  FamilyInstance mono = make_instance("monomial", {}, third);
  CHECK(oracle_inversion(lql, 0).values == V{1});
  CHECK(oracle_inversion(lql, 1).values == V{r(5, 6), r(-5, 6)});
  CHECK(oracle_connection(mono, lql, 1).values == V{r(5, 6), r(-5, 6)});
  CHECK(oracle_connection(lql, lql, 3).values == V{0, 0, 0, 1});
  // A monomial target returns the expansion of P_n itself.
  CHECK(oracle_connection(lql, mono, 2).values == family_polynomial(lql, 2).coeffs());
}

TEST_CASE("triangular_solve rejects a residual") {
  std::vector<Polynomial> polys{Polynomial::monomial({1})};
  CHECK_THROWS(triangular_solve(Polynomial::monomial({0, 1}), polys));
}

TEST_CASE("al-salam-carlitz I against its table row") {
  Context ctx = make_context(r(2, 5));
  FamilyInstance asc = make_instance("al-salam-carlitz-1", {{"a", r(-3, 4)}}, ctx);
  for (int n = 0; n <= 4; ++n) CHECK(oracle_inversion(asc, n).values == closed_form_inversion(asc, n).values);
}

TEST_CASE("recursive_invert") {
  MonicTable ident, tele;
  for (int n = 0; n <= 5; ++n) {
    V a(static_cast<size_t>(n + 1), GaussScalar(0));
    a[0] = 1;
    ident.push_back(a);
    if (n >= 1) a[1] = -1;
    tele.push_back(a);
  }
  V d{0, 0, 0, 0, 1}, ones{1, 1, 1, 1, 1};
  CHECK(recursive_invert(ident, 4).values == d);
  CHECK(recursive_invert(tele, 4).values == ones);
}

TEST_CASE("recursive_inversion matches the closed form") {
  Context ctx = make_context(r(3, 7));
  FamilyInstance g = make_instance("generic-q-a", {{"a", r(2, 9)}, {"a1", r(1, 5)}, {"b1", r(5, 3)}}, ctx);
  for (int n = 0; n <= 8; ++n) CHECK(recursive_inversion(g, n).values == invert_basic(r(2, 9), V{r(1, 5)}, V{r(5, 3)}, n, ctx).values);
}

TEST_CASE("verify_pointwise") {
  auto pts = integer_points(4);
  auto y = [](const GaussScalar& v) { return v; };
  auto y1 = [](const GaussScalar& v) { return v + GaussScalar(1); };
  VerificationReport same = verify_pointwise("same", y, y, pts);
  CHECK(same.status == VerifyStatus::Match);
  CHECK(same.max_defect.is_zero());
  VerificationReport off = verify_pointwise("off", y, y1, pts);
  CHECK(off.status == VerifyStatus::Mismatch);
  CHECK((off.max_defect == GaussScalar(1) || off.max_defect == GaussScalar(-1)));
}

TEST_CASE("unit circle points") {
  auto pts = unit_circle_points(11);
  std::set<std::string> seen;
  for (const auto& z : pts) {
    CHECK(z.norm() == 1);
    seen.insert(z.str());
  }
  CHECK(seen.size() == pts.size());
}
