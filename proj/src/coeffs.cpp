#include "qconn/coeffs.hpp"

#include <algorithm>

#include "qconn/error.hpp"
#include "qconn/phi.hpp"

namespace qconn {

namespace {

using G = GaussScalar;

[[noreturn]] void vanishing(const std::string& what) {
  throw Error(ErrorKind::VanishingFactor, what + " vanishes");
}

G checked(const G& value, const std::string& what) {
  if (value.is_zero()) vanishing(what);
  return value;
}

void check_denominators(ParamList den, const QContext& ctx, int n) {
  for (size_t j = 0; j < den.size(); ++j)
    if (qpochhammer(den[j], ctx.q(), n).is_zero())
      throw Error(ErrorKind::DenominatorVanishes,
                  "denominator parameter #" + std::to_string(j + 1) + " (" + den[j].str() +
                      ") makes (b;q)_" + std::to_string(n) + " vanish");
}

std::vector<G> shifted(ParamList params, const G& factor) { return scaled(params, factor); }

CoefficientVector make_vector(std::vector<G> values, int n, CoeffKind kind, std::string provenance) {
  CoefficientVector v;
  v.values = std::move(values);
  v.n = n;
  v.kind = kind;
  v.provenance = std::move(provenance);
  return v;
}

int natural_exponent(bool has_a, size_t r, size_t s) {
  return static_cast<int>(s) - static_cast<int>(r) - (has_a ? 1 : 0);
}

}  // namespace

CoefficientVector canonical_inversion(const CanonicalForm& form, int n, const Context& ctx, std::string provenance) {
  if (n < 0) throw Error(ErrorKind::UsageError, "negative degree");
  ctx->require_degree(n);
  const G& q = ctx->q();
  check_denominators(form.dens, *ctx, n);
  G fn = checked(qpochhammer_multi(form.nums, q, n), "numerator Pochhammer [a_r;q]_" + std::to_string(n)) /
         qpochhammer_multi(form.dens, q, n) * compensator(n, q, form.E);
  G scale = pow(q / checked(form.w, "series argument scale"), n) / fn;
  std::vector<G> values;
  values.reserve(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    G v = qbinomial(n, m, *ctx) * sign_pow(m) * pow(q, tri(m)) * scale;
    if (form.aK) {
      const G& a = *form.aK;
      v /= checked(qpochhammer(a * pow(q, m), q, m), "(aq^m;q)_m at m = " + std::to_string(m));
      v /= checked(qpochhammer(a * pow(q, 2 * m + 1), q, n - m), "(aq^{2m+1};q)_{n-m} at m = " + std::to_string(m));
    }
    if (form.pi) v /= checked(form.pi(m), "normalization factor of degree " + std::to_string(m));
    values.push_back(std::move(v));
  }
  return make_vector(std::move(values), n, CoeffKind::Inversion, std::move(provenance));
}

CoefficientVector invert_basic(const G& a, ParamList num, ParamList den, int n, const Context& ctx) {
  CanonicalForm form;
  bool has_a = !a.is_zero();
  if (has_a) form.aK = a;
  form.nums.assign(num.begin(), num.end());
  form.dens.assign(den.begin(), den.end());
  form.E = natural_exponent(has_a, num.size(), den.size());
  form.w = ctx->q();
  return canonical_inversion(form, n, ctx, has_a ? "Eq2.1" : "Eq2.6");
}

CoefficientVector connect_basic(const G& a, ParamList num, ParamList den, const G& c, ParamList tgt_num,
                                ParamList tgt_den, int n, const Context& ctx, bool as_printed) {
  if (n < 0) throw Error(ErrorKind::UsageError, "negative degree");
  ctx->require_degree(n);
  const G& q = ctx->q();
  bool has_a = !a.is_zero(), has_c = !c.is_zero();
  check_denominators(den, *ctx, n);
  check_denominators(tgt_den, *ctx, n);
  int e = natural_exponent(has_a, num.size(), den.size()) - natural_exponent(has_c, tgt_num.size(), tgt_den.size());
  std::vector<G> values;
  values.reserve(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    G qm = pow(q, m);
    G pre = qbinomial(n, m, *ctx) * pow(q, static_cast<long>(m) * (m - n)) * sign_pow(static_cast<long>(m) * e) *
            pow(q, static_cast<long>(e) * tri(m));
    if (as_printed && !has_a && !has_c) pre *= pow(q, -tri(m));
    pre *= qpochhammer_multi(num, q, m) * qpochhammer_multi(tgt_den, q, m);
    pre /= checked(qpochhammer_multi(tgt_num, q, m), "target numerator Pochhammer [c_l;q]_" + std::to_string(m));
    pre /= qpochhammer_multi(den, q, m);
    if (has_a) pre *= qpochhammer(a * pow(q, n), q, m);
    if (has_c) pre /= checked(qpochhammer(c * qm, q, m), "(cq^m;q)_m at m = " + std::to_string(m));

    std::vector<G> inner_num{pow(q, m - n)};
    if (has_a) inner_num.push_back(a * pow(q, n + m));
    for (const auto& v : shifted(num, qm)) inner_num.push_back(v);
    for (const auto& v : shifted(tgt_den, qm)) inner_num.push_back(v);
    std::vector<G> inner_den;
    if (has_c) inner_den.push_back(c * pow(q, 2 * m + 1));
    for (const auto& v : shifted(den, qm)) inner_den.push_back(v);
    for (const auto& v : shifted(tgt_num, qm)) inner_den.push_back(v);
    int extra = 1 + static_cast<int>(inner_den.size()) - static_cast<int>(inner_num.size()) - e;
    PhiSpec inner = PhiSpec::truncated(std::move(inner_num), std::move(inner_den), ctx, n - m, extra);
    values.push_back(pre * eval_phi_scalar(inner, pow(q, 1 + static_cast<long>(m) * e)));
  }
  return make_vector(std::move(values), n, CoeffKind::Connection, (has_a || has_c) ? "Eq2.2" : "Eq2.7");
}

CoefficientVector invert_classical(const std::optional<G>& lambda, ParamList num, ParamList den, int n) {
  if (n < 0) throw Error(ErrorKind::UsageError, "negative degree");
  G scale(1);
  for (const auto& b : den) scale *= rising_factorial(b, n);
  for (const auto& a : num) scale /= checked(rising_factorial(a, n), "(" + a.str() + ")_" + std::to_string(n));
  std::vector<G> values;
  for (int m = 0; m <= n; ++m) {
    G v = scale * binomial(n, m) * sign_pow(m);
    if (lambda) {
      v /= checked(rising_factorial(*lambda + G(m), m), "(lambda+m)_m at m = " + std::to_string(m));
      v /= checked(rising_factorial(*lambda + G(2 * m + 1), n - m),
                   "(lambda+2m+1)_{n-m} at m = " + std::to_string(m));
    }
    values.push_back(std::move(v));
  }
  return make_vector(std::move(values), n, CoeffKind::Inversion, lambda ? "Eq2.8" : "Eq2.10");
}

CoefficientVector connect_classical(const std::optional<G>& lambda, ParamList num, ParamList den,
                                    const std::optional<G>& mu, ParamList tgt_num, ParamList tgt_den, int n) {
  if (n < 0) throw Error(ErrorKind::UsageError, "negative degree");
  auto rising_multi = [](ParamList params, int k) {
    G r(1);
    for (const auto& p : params) r *= rising_factorial(p, k);
    return r;
  };
  auto plus = [](ParamList params, int k) {
    std::vector<G> out;
    for (const auto& p : params) out.push_back(p + G(k));
    return out;
  };
  std::vector<G> values;
  for (int m = 0; m <= n; ++m) {
    G pre = binomial(n, m) * rising_multi(num, m) * rising_multi(tgt_den, m);
    pre /= checked(rising_multi(tgt_num, m), "target numerator factorial at m = " + std::to_string(m));
    G den_m = rising_multi(den, m);
    if (den_m.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "source denominator factorial vanishes");
    pre /= den_m;
    if (lambda) pre *= rising_factorial(*lambda + G(n), m);
    if (mu) pre /= checked(rising_factorial(*mu + G(m), m), "(mu+m)_m at m = " + std::to_string(m));

    std::vector<G> inner_num{G(m - n)};
    if (lambda) inner_num.push_back(*lambda + G(n + m));
    for (const auto& v : plus(num, m)) inner_num.push_back(v);
    for (const auto& v : plus(tgt_den, m)) inner_num.push_back(v);
    std::vector<G> inner_den;
    if (mu) inner_den.push_back(*mu + G(2 * m + 1));
    for (const auto& v : plus(den, m)) inner_den.push_back(v);
    for (const auto& v : plus(tgt_num, m)) inner_den.push_back(v);
    values.push_back(pre * eval_hyp_scalar(inner_num, inner_den, n - m, G(1)));
  }
  return make_vector(std::move(values), n, CoeffKind::Connection, (lambda || mu) ? "Eq2.9" : "Eq2.11");
}

TriangularMatrix compose(const TriangularMatrix& D, const TriangularMatrix& I) {
  if (D.size() != I.size()) throw Error(ErrorKind::ShapeMismatch, "compose: matrices cover different degree ranges");
  for (size_t n = 0; n < D.size(); ++n)
    if (D[n].size() != n + 1 || I[n].size() != n + 1)
      throw Error(ErrorKind::ShapeMismatch, "compose: row " + std::to_string(n) + " is not lower-triangular");
  TriangularMatrix C(D.size());
  for (size_t n = 0; n < D.size(); ++n) {
    C[n].assign(n + 1, G(0));
    for (size_t m = 0; m <= n; ++m)
      for (size_t k = m; k <= n; ++k) C[n][m] += D[n][k] * I[k][m];
  }
  return C;
}

bool self_inverse_check(ParamList num, ParamList den, int n_max) {
  if (n_max < 0) throw Error(ErrorKind::UsageError, "negative degree");
  auto rising_multi = [](ParamList params, int k) {
    G r(1);
    for (const auto& p : params) r *= rising_factorial(p, k);
    return r;
  };
  size_t N = static_cast<size_t>(n_max) + 1;
  std::vector<std::vector<G>> M(N, std::vector<G>(N, G(0)));
  for (int n = 0; n <= n_max; ++n) {
    G scale = rising_multi(den, n) / checked(rising_multi(num, n), "numerator factorial of degree " + std::to_string(n));
    for (int k = 0; k <= n; ++k) {
      G t = rising_factorial(G(-n), k) * rising_multi(num, k);
      G d = rising_multi(den, k) * rising_factorial(G(1), k);
      M[static_cast<size_t>(n)][static_cast<size_t>(k)] =
          scale * t / checked(d, "denominator factorial of order " + std::to_string(k));
    }
  }
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      G acc(0);
      for (size_t k = 0; k < N; ++k) acc += M[i][k] * M[k][j];
      if (!(acc == G(i == j ? 1 : 0))) return false;
    }
  return true;
}

namespace {

G lemma_power(int n, int m, int exponent, const G& q) {
  long e = -static_cast<long>(m) * (2L * n - m - 1) / 2;
  return pow(sign_pow(m) * pow(q, e), exponent);
}

}  // namespace

GaussScalar lemma_b(const G& a, ParamList num, ParamList den, int n, int m, const QContext& ctx, bool as_printed) {
  const G& q = ctx.q();
  int s_r_1 = static_cast<int>(den.size()) - static_cast<int>(num.size()) - 1;
  G qnm = pow(q, n - m);
  G v = qbinomial(n, m, ctx) * lemma_power(n, m, s_r_1, q) * qpochhammer_multi(scaled(den, qnm), q, m) /
        checked(qpochhammer_multi(scaled(num, qnm), q, m), "[a_r q^{n-m};q]_m");
  if (as_printed)
    return v * qpochhammer(a * qnm, q, n - m) / checked(qpochhammer(a * pow(q, n), q, n), "(aq^n;q)_n");
  return v / checked(qpochhammer(a * pow(q, 2 * n - 2 * m + 1), q, m), "(aq^{2n-2m+1};q)_m");
}

GaussScalar lemma_A(const G& a, ParamList num, ParamList den, int n, int k, const QContext& ctx, bool as_printed) {
  const G& q = ctx.q();
  int s_r_1 = static_cast<int>(den.size()) - static_cast<int>(num.size()) - 1;
  G qnk = pow(q, n - k);
  G v = sign_pow(k) * qbinomial(n, k, ctx) * lemma_power(n, k, s_r_1, q) * pow(q, tri(k)) *
        qpochhammer_multi(scaled(den, qnk), q, k) /
        checked(qpochhammer_multi(scaled(num, qnk), q, k), "[a_r q^{n-k};q]_k");
  if (as_printed)
    return v * qpochhammer(a * qnk, q, n - k) / checked(qpochhammer(a * pow(q, n), q, n), "(aq^n;q)_n");
  return v / checked(qpochhammer(a * pow(q, 2 * n - k), q, k), "(aq^{2n-k};q)_k");
}

}  // namespace qconn
