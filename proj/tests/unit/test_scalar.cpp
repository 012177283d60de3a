#include <doctest.h>

#include "qconn/error.hpp"
#include "qconn/literal.hpp"
#include "qconn/scalar.hpp"

using namespace qconn;

namespace {
GaussScalar s(const char* text) { return parse_scalar(text); }

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

TEST_CASE("parse_scalar grammar") {
  CHECK(s("2/5") == GaussScalar(2, 5));
  CHECK(s("-1/3+2/7i") == GaussScalar(Rational(-1, 3), Rational(2, 7)));
  CHECK(s("3i") == GaussScalar(Rational(0), Rational(3)));
  CHECK(s("1-1i") == GaussScalar(Rational(1), Rational(-1)));
  CHECK(s("4/6") == GaussScalar(2, 3));
  CHECK(kind_of([] { s("1/0"); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { s("abc"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { s(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { s("i"); }) == ErrorKind::ParseError);
}

TEST_CASE("format round trip") {
  for (const char* t : {"0", "2/5", "-1/3+2/7i", "-1i", "5/4-1/2i"}) CHECK(s(format_scalar(s(t)).c_str()) == s(t));
  CHECK(format_scalar(GaussScalar(-5, 6)) == "-5/6");
}

TEST_CASE("Gaussian arithmetic") {
  GaussScalar i = GaussScalar::i();
  CHECK(i * i == GaussScalar(-1));
  GaussScalar z = s("3/4+1/2i");
  CHECK(z * z.inverse() == GaussScalar(1));
  CHECK(z * z.conj() == GaussScalar(z.norm()));
  CHECK(kind_of([] { GaussScalar(0).inverse(); }) == ErrorKind::DivisionByZero);
  CHECK(pow(GaussScalar(2, 5), -2) == GaussScalar(25, 4));
}

TEST_CASE("qpochhammer") {
  CHECK(qpochhammer(GaussScalar(7, 3), GaussScalar(2, 5), 0) == GaussScalar(1));
  CHECK(qpochhammer(GaussScalar(1, 2), GaussScalar(1, 3), 2) == GaussScalar(5, 12));
  GaussScalar q(2, 5);
  CHECK(qpochhammer(pow(q, -2), q, 3).is_zero());
}

TEST_CASE("qpochhammer_multi") {
  GaussScalar q(1, 3);
  std::vector<GaussScalar> none, half{GaussScalar(1, 2)}, zeros{GaussScalar(0), GaussScalar(0)};
  CHECK(qpochhammer_multi(none, q, 5) == GaussScalar(1));
  CHECK(qpochhammer_multi(half, q, 2) == GaussScalar(5, 12));
  CHECK(qpochhammer_multi(zeros, q, 4) == GaussScalar(1));
}

TEST_CASE("qbinomial and negpow") {
  QContext half(GaussScalar(1, 2), 16), third(GaussScalar(1, 3), 16);
  CHECK(qbinomial(5, 0, half) == GaussScalar(1));
  CHECK(qbinomial(3, 1, half) == GaussScalar(7, 4));
  CHECK(qbinomial(3, 4, half).is_zero());
  CHECK(qpochhammer_negpow(4, 0, third) == GaussScalar(1));
  CHECK(qpochhammer_negpow(2, 3, third).is_zero());
  CHECK(qpochhammer_negpow(2, 1, third) == qpochhammer(GaussScalar(9), GaussScalar(1, 3), 1));
  CHECK(qpochhammer_negpow(2, 1, third) == GaussScalar(-8));
}

TEST_CASE("rising factorial") {
  CHECK(rising_factorial(GaussScalar(9), 0) == GaussScalar(1));
  CHECK(rising_factorial(GaussScalar(3), 2) == GaussScalar(12));
  CHECK(rising_factorial(GaussScalar(-2), 3).is_zero());
}

TEST_CASE("context validation") {
  CHECK(kind_of([] { make_context(GaussScalar(0)); }) == ErrorKind::InvalidContext);
  CHECK(kind_of([] { make_context(GaussScalar(1)); }) == ErrorKind::InvalidContext);
  CHECK(kind_of([] { make_context(GaussScalar(-1)); }) == ErrorKind::InvalidContext);
  CHECK(kind_of([] { make_context(GaussScalar::i()); }) == ErrorKind::InvalidContext);
  Context ctx = make_context(GaussScalar(2, 5), 8);
  GaussScalar direct(1);
  for (int k = 1; k <= 8; ++k) {
    direct *= GaussScalar(1) - pow(ctx->q(), k);
    CHECK(ctx->qq(k) == direct);
  }
  CHECK(kind_of([&] { ctx->require_degree(9); }) == ErrorKind::DegreeExceeded);
}

TEST_CASE("exact roots") {
  CHECK(exact_root(GaussScalar(16, 81), 4) == GaussScalar(2, 3));
  CHECK(exact_root(GaussScalar(4, 9), 2) == GaussScalar(2, 3));
  CHECK_FALSE(exact_root(GaussScalar(2, 5), 2).has_value());
}
