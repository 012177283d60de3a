#include <doctest.h>

#include "qconn/phi.hpp"
#include "qconn/poly.hpp"

using namespace qconn;

namespace {
using V = std::vector<GaussScalar>;
Context third() { return make_context(GaussScalar(1, 3)); }
}  // namespace

TEST_CASE("basis elements") {
  Context ctx = third();
  CHECK(basis_element(Basis::qshifted(ctx), 1).coeffs() == V{1, -1});
  CHECK(basis_element(Basis::paired(ctx, GaussScalar(1), GaussScalar(0)), 1).coeffs() == V{1, -1});
  CHECK(basis_element(Basis::shifted_nodes(ctx), 2).coeffs() == V{GaussScalar(1, 3), GaussScalar(-4, 3), 1});
  for (auto b : {Basis::monomial(ctx), Basis::qshifted(ctx), Basis::shifted_nodes(ctx), Basis::imaginary_shifted(ctx),
                 Basis::paired(ctx, GaussScalar(1, 2), GaussScalar(1, 5))}) {
    CHECK(basis_element(b, 0).coeffs() == V{1});
    for (int n = 1; n <= 5; ++n) CHECK(basis_element(b, n).degree() == n);
  }
}

TEST_CASE("to_monomial") {
  Context ctx = third();
  CHECK(to_monomial(Polynomial::monomial({2, 3})).coeffs() == V{2, 3});
  CHECK(to_monomial(Polynomial(Basis::qshifted(ctx), {0, 1})).coeffs() == V{1, -1});
  CHECK(to_monomial(Polynomial(Basis::qshifted(ctx), {1, 1})).coeffs() == V{2, -1});
}

TEST_CASE("trailing zeros are trimmed") {
  Polynomial p = Polynomial::monomial({1, 2, 0, 0});
  CHECK(p.degree() == 1);
  CHECK(Polynomial::monomial({0}).is_zero());
}

TEST_CASE("poly_eval") {
  Context ctx = third();
  CHECK(poly_eval(Polynomial(), GaussScalar(7)).is_zero());
  CHECK(poly_eval(Polynomial::monomial({1, -1}), GaussScalar(1)).is_zero());
  Polynomial e2 = Polynomial(Basis::qshifted(ctx), {0, 0, 1});
  CHECK(poly_eval(e2, GaussScalar(2)) == GaussScalar(-1, 3));
  Polynomial p(Basis::paired(ctx, GaussScalar(1, 2), GaussScalar(1, 5)), {3, -1, 2, 7});
  for (int y = -2; y <= 2; ++y) CHECK(poly_eval(p, GaussScalar(y)) == poly_eval_direct(p, GaussScalar(y)));
}

TEST_CASE("linear_combination") {
  Context ctx = third();
  Polynomial p(Basis::qshifted(ctx), {1, 2, 3});
  CHECK(linear_combination({{1, p}}) == to_monomial(p));
  CHECK(linear_combination({{1, p}, {-1, p}}).is_zero());
  CHECK(linear_combination({{2, Polynomial::monomial({1})}, {3, Polynomial::monomial({0, 1})}}).coeffs() == V{2, 3});
}

TEST_CASE("eval_phi_scalar") {
  Context half = make_context(GaussScalar(1, 2));
  PhiSpec zero = PhiSpec::truncated({GaussScalar(5)}, {GaussScalar(7)}, half, 0);
  CHECK(eval_phi_scalar(zero, GaussScalar(3)) == GaussScalar(1));
  PhiSpec one = PhiSpec::terminating({GaussScalar(2)}, {}, half);
  CHECK(eval_phi_scalar(one, GaussScalar(1)) == GaussScalar(-1));

  Context ctx = third();
  PhiSpec lql = PhiSpec::terminating({GaussScalar(3), GaussScalar(0)}, {GaussScalar(1, 6)}, ctx);
  CHECK(eval_phi_scalar(lql, GaussScalar(1, 3)) == GaussScalar(-1, 5));
}

TEST_CASE("eval_phi_poly") {
  Context ctx = third();
  PhiSpec lql = PhiSpec::terminating({GaussScalar(3), GaussScalar(0)}, {GaussScalar(1, 6)}, ctx);
  CHECK(eval_phi_poly(lql, ctx->q()).coeffs() == V{1, GaussScalar(-6, 5)});
  CHECK(eval_phi_poly(lql, GaussScalar(0)).coeffs() == V{1});
  PhiSpec zero = PhiSpec::truncated({GaussScalar(5)}, {}, ctx, 0);
  CHECK(eval_phi_poly(zero, GaussScalar(2)).coeffs() == V{1});
}

TEST_CASE("phi coefficients agree with direct recomputation") {
  Context ctx = make_context(GaussScalar(2, 5));
  GaussScalar q = ctx->q();
  PhiSpec s = PhiSpec::terminating({pow(q, -5), GaussScalar(1, 7), GaussScalar(3)}, {GaussScalar(2, 9)}, ctx);
  CHECK(phi_coefficients(s, true) == phi_coefficients(s, false));
}

TEST_CASE("eval_hyp_scalar") {
  CHECK(eval_hyp_scalar({0, 1}, {2}, 0, GaussScalar(1)) == GaussScalar(1));
  CHECK(eval_hyp_scalar({-1}, {}, 1, GaussScalar(2)) == GaussScalar(-1));
  CHECK(eval_hyp_scalar({-2, 1}, {2}, 2, GaussScalar(1)) == GaussScalar(1, 3));
  // Chu-Vandermonde: 2F1(-n, b; c; 1) = (c-b)_n/(c)_n.
  GaussScalar b(2, 3), c(7, 2);
  CHECK(eval_hyp_scalar({-4, b}, {c}, 4, GaussScalar(1)) == rising_factorial(c - b, 4) / rising_factorial(c, 4));
}
