#include <doctest.h>

#include "qconn/coeffs.hpp"
#include "qconn/error.hpp"
#include "qconn/oracle.hpp"

using namespace qconn;

namespace {
using V = std::vector<GaussScalar>;
GaussScalar r(long n, long d = 1) { return GaussScalar(n, d); }

V delta(int n) {
  V v(static_cast<size_t>(n + 1), GaussScalar(0));
  v.back() = 1;
  return v;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::UsageError;
}
}  // namespace

TEST_CASE("invert_basic") {
  Context ctx = make_context(r(1, 3));
  V zero{0}, aq{r(1, 6)};
  CHECK(invert_basic(r(1, 7), aq, aq, 0, ctx).values == V{1});
  CHECK(invert_basic(r(0), zero, aq, 1, ctx).values == V{r(5, 6), r(-5, 6)});
}

TEST_CASE("invert_basic matches the oracle on a generic family") {
  Context ctx = make_context(r(2, 5));
  FamilyInstance g = make_instance("generic-q-a", {{"a", r(1, 7)}, {"a1", r(1, 3)}, {"b1", r(3, 4)}}, ctx);
  for (int n = 0; n <= 5; ++n) CHECK(closed_form_inversion(g, n).values == oracle_inversion(g, n).values);
}

TEST_CASE("connect_basic") {
  Context ctx = make_context(r(2, 5));
  V num{r(1, 3)}, den{r(3, 4)};
  CHECK(connect_basic(r(1, 7), num, den, r(1, 7), num, den, 3, ctx).values == delta(3));
  CHECK(connect_basic(r(1, 7), num, den, r(1, 5), {}, {}, 0, ctx).values == V{1});
}

TEST_CASE("classical inversion") {
  V num{r(2)}, den{r(3)};
  CHECK(invert_classical(std::nullopt, num, den, 0).values == V{1});
  CHECK(kind_of([&] { invert_classical(r(-2), num, den, 2); }) == ErrorKind::VanishingFactor);
  CHECK(connect_classical(std::nullopt, num, den, std::nullopt, num, den, 4).values == delta(4));
  V five{r(5)};
  CHECK(connect_classical(r(1, 2), num, den, r(1, 3), {}, five, 0).values == V{1});
}

TEST_CASE("compose with identities") {
  TriangularMatrix id, m;
  for (int n = 0; n <= 3; ++n) {
    id.push_back(delta(n));
    V row;
    for (int k = 0; k <= n; ++k) row.push_back(r(n + 1, k + 2));
    m.push_back(row);
  }
  CHECK(compose(id, m) == m);
  CHECK(compose(m, id) == m);
}

TEST_CASE("self_inverse_check") {
  V two{r(2)}, three{r(3)};
  CHECK(self_inverse_check({}, {}, 4));
  CHECK(self_inverse_check(two, three, 5));
  CHECK(self_inverse_check(two, three, 0));
}

TEST_CASE("closed_form_inversion") {
  Context third = make_context(r(1, 3));
  FamilyInstance lql = make_instance("little-q-laguerre", {{"a", r(1, 2)}}, third);
  CHECK(closed_form_inversion(lql, 0).values == V{1});
  CHECK(closed_form_inversion(lql, 1).values == V{r(5, 6), r(-5, 6)});

  Context q25 = make_context(r(2, 5));
  FamilyInstance aw = make_instance("askey-wilson", {{"a", r(1, 2)}, {"b", r(1, 3)}, {"c", r(1, 5)}, {"d", r(1, 7)}}, q25);
  for (int n = 0; n <= 5; ++n) CHECK(closed_form_inversion(aw, n).values == oracle_inversion(aw, n).values);
  FamilyInstance qc = make_instance("q-charlier", {{"a", r(3, 7)}}, q25);
  for (int n = 0; n <= 6; ++n) CHECK(closed_form_inversion(qc, n).values == oracle_inversion(qc, n).values);
}

TEST_CASE("closed_form_connection") {
  Context q25 = make_context(r(2, 5));
  FamilyInstance src = make_instance("big-q-laguerre", {{"a", r(1, 3)}, {"b", r(2, 7)}}, q25);
  FamilyInstance tgt = make_instance("big-q-laguerre", {{"a", r(1, 3)}, {"b", r(5, 9)}}, q25);
  for (int n = 0; n <= 5; ++n) {
    CHECK(closed_form_connection(src, src, n).values == delta(n));
    CHECK(closed_form_connection(src, tgt, n).values == oracle_connection(src, tgt, n).values);
  }
}

TEST_CASE("q-Racah connection requires a shared gamma*delta") {
  Context q25 = make_context(r(2, 5));
  auto qr = [&](GaussScalar ga, GaussScalar de) {
    return make_instance("q-racah", {{"alpha", r(1, 2)}, {"beta", r(1, 7)}, {"gamma", ga}, {"delta", de}}, q25);
  };
  FamilyInstance src = qr(r(3, 5), r(2, 3)), ok = qr(r(2, 9), r(9, 5)), bad = qr(r(2, 9), r(1, 5));
  CHECK(kind_of([&] { closed_form_connection(src, bad, 2); }) == ErrorKind::PreconditionViolated);
  for (int n = 0; n <= 5; ++n) CHECK(closed_form_connection(src, ok, n).values == oracle_connection(src, ok, n).values);
}

TEST_CASE("connections across q are rejected") {
  FamilyInstance a = make_instance("little-q-laguerre", {{"a", r(1, 2)}}, make_context(r(1, 3)));
  FamilyInstance b = make_instance("little-q-laguerre", {{"a", r(1, 2)}}, make_context(r(2, 5)));
  CHECK_THROWS_AS(closed_form_connection(a, b, 1), Error);
}

TEST_CASE("every corrected row has a ledger entry with all fields") {
  CHECK_FALSE(corrections_ledger().empty());
  for (const auto& e : corrections_ledger()) {
    CHECK_FALSE(e.location.empty());
    CHECK_FALSE(e.printed_form.empty());
    CHECK_FALSE(e.corrected_form.empty());
    CHECK(e.printed_form != e.corrected_form);
  }
}
