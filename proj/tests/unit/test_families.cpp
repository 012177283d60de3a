#include <doctest.h>

#include <set>

#include "qconn/error.hpp"
#include "qconn/families.hpp"
#include "qconn/oracle.hpp"

using namespace qconn;

namespace {
using V = std::vector<GaussScalar>;
GaussScalar r(long n, long d = 1) { return GaussScalar(n, d); }
}  // namespace

TEST_CASE("registry lookup") {
  CHECK(registry_lookup("askey-wilson").parameter_names.size() == 4);
  const FamilySpec& dql = registry_lookup("d-q-laguerre");
  REQUIRE(dql.groups.size() == 1);
  CHECK(dql.groups[0].prefix == "b");
  try {
    registry_lookup("no-such-family");
    FAIL("lookup succeeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownFamily);
  }
}

TEST_CASE("registry ids are unique") {
  std::set<std::string> ids;
  for (const auto& s : registry()) CHECK(ids.insert(s.id).second);
  CHECK(ids.count("monomial") == 1);
}

TEST_CASE("family polynomials") {
  Context ctx = make_context(r(1, 3));
  FamilyInstance lql = make_instance("little-q-laguerre", {{"a", r(1, 2)}}, ctx);
  CHECK(family_polynomial(lql, 0).coeffs() == V{1});
  CHECK(family_polynomial(lql, 1).coeffs() == V{1, r(-6, 5)});

  Context q25 = make_context(r(2, 5));
  FamilyInstance aw = make_instance("askey-wilson", {{"a", r(1, 2)}, {"b", r(1, 3)}, {"c", r(1, 5)}, {"d", r(1, 7)}}, q25);
  for (int n = 0; n <= 4; ++n) CHECK(family_polynomial(aw, n).degree() == n);
  // The polynomial expands exactly in its own basis.
  Polynomial p2 = family_polynomial(aw, 2);
  std::vector<Polynomial> basis;
  for (int k = 0; k <= 2; ++k) basis.push_back(family_basis_element(aw, k));
  CHECK(triangular_solve(p2, basis) == family_basis_coefficients(aw, 2));
}

TEST_CASE("family basis elements") {
  Context third = make_context(r(1, 3));
  FamilyInstance qm = make_instance("q-meixner", {{"b", r(1, 2)}, {"c", r(3)}}, third);
  CHECK(family_basis_element(qm, 1).coeffs() == V{1, -1});
  FamilyInstance asc = make_instance("al-salam-carlitz-1", {{"a", r(-2)}}, third);
  CHECK(family_basis_element(asc, 2).coeffs() == V{r(1, 3), r(-4, 3), 1});
  // gamma*delta*q = 1/5
  FamilyInstance qr =
      make_instance("q-racah", {{"alpha", r(1, 2)}, {"beta", r(1, 7)}, {"gamma", r(3, 5)}, {"delta", r(1)}}, third);
  CHECK(family_basis_element(qr, 1).coeffs() == V{r(6, 5), -1});
}

TEST_CASE("binding errors") {
  Context ctx = make_context(r(2, 5));
  CHECK_THROWS_AS(make_instance("little-q-laguerre", {}, ctx), Error);
  CHECK_THROWS_AS(make_instance("little-q-laguerre", {{"a", r(1, 2)}, {"zz", r(1)}}, ctx), Error);
}

TEST_CASE("families needing a root of q reject q without one") {
  Context ctx = make_context(r(2, 5));
  try {
    make_instance("continuous-q-laguerre", {{"qa", r(1, 2)}}, ctx);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BindingError);
  }
  CHECK_NOTHROW(make_instance("continuous-q-laguerre", {{"qa", r(1, 2)}}, make_context(r(16, 81))));
}

TEST_CASE("degenerate leading coefficient") {
  Context ctx = make_context(r(1, 2));
  // a q = q^{-1} kills (aq;q)_n in the denominator of little q-Laguerre at n = 2.
  try {
    FamilyInstance bad = make_instance("little-q-laguerre", {{"a", r(4)}}, ctx);
    check_nondegenerate(bad, 3);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::DenominatorVanishes || e.kind() == ErrorKind::DegenerateLeadingCoefficient ||
           e.kind() == ErrorKind::DivisionByZero || e.kind() == ErrorKind::BindingError));
  }
}

TEST_CASE("continuous q-Hermite is not expansion capable") {
  Context ctx = make_context(r(2, 5));
  FamilyInstance h = make_instance("continuous-q-hermite", {}, ctx);
  CHECK_FALSE(h.spec().expansion_capable);
  CHECK_THROWS_AS(family_basis_coefficients(h, 2), Error);
  // H_1 = 2x = z + 1/z at z = e^{i theta}.
  GaussScalar z = unit_circle_points(3)[2];
  CHECK(continuous_q_hermite_eval(1, z, *ctx) == z + z.inverse());
}
