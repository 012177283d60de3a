#include "qconn/phi.hpp"

#include <stdexcept>
#include <string>

#include "qconn/error.hpp"

namespace qconn {

namespace {

std::optional<int> negative_q_power(const GaussScalar& a, const QContext& ctx) {
  GaussScalar qinv = ctx.q().inverse();
  GaussScalar power(1);
  for (int j = 0; j <= ctx.max_degree(); ++j) {
    if (a == power) return j;
    power *= qinv;
  }
  return std::nullopt;
}

std::optional<int> nonpositive_integer(const GaussScalar& a) {
  if (!a.is_real() || a.re().get_den() != 1 || sgn(a.re()) > 0) return std::nullopt;
  if (!a.re().get_num().fits_slong_p()) return std::nullopt;
  return static_cast<int>(-a.re().get_num().get_si());
}

[[noreturn]] void denominator_vanishes(int k, size_t which, const GaussScalar& value) {
  throw Error(ErrorKind::DenominatorVanishes, "denominator parameter #" + std::to_string(which + 1) + " (" +
                                                  value.str() + ") makes the Pochhammer vanish at term " +
                                                  std::to_string(k));
}

}  // namespace

int PhiSpec::compensator_exponent() const {
  return 1 + static_cast<int>(den.size()) - (static_cast<int>(num.size()) + extra_numerators);
}

PhiSpec PhiSpec::terminating(std::vector<GaussScalar> num, std::vector<GaussScalar> den, Context ctx,
                             int extra_numerators) {
  std::optional<int> best;
  for (const auto& a : num) {
    auto j = negative_q_power(a, *ctx);
    if (j && (!best || *j < *best)) best = j;
  }
  if (!best) throw Error(ErrorKind::NonTerminating, "no numerator parameter of the form q^{-n}");
  return PhiSpec{std::move(num), std::move(den), std::move(ctx), *best, extra_numerators};
}

PhiSpec PhiSpec::truncated(std::vector<GaussScalar> num, std::vector<GaussScalar> den, Context ctx,
                           int termination, int extra_numerators) {
  if (termination < 0) throw Error(ErrorKind::UsageError, "negative termination index");
  return PhiSpec{std::move(num), std::move(den), std::move(ctx), termination, extra_numerators};
}

HypSpec HypSpec::terminating(std::vector<GaussScalar> num, std::vector<GaussScalar> den) {
  std::optional<int> best;
  for (const auto& a : num) {
    auto j = nonpositive_integer(a);
    if (j && (!best || *j < *best)) best = j;
  }
  if (!best) throw Error(ErrorKind::NonTerminating, "no numerator parameter that is a non-positive integer");
  return HypSpec{std::move(num), std::move(den), *best};
}

std::vector<GaussScalar> phi_coefficients(const PhiSpec& spec, bool verify) {
  const QContext& ctx = *spec.ctx;
  ctx.require_degree(spec.termination);
  const GaussScalar& q = ctx.q();
  const int e = spec.compensator_exponent();
  std::vector<GaussScalar> out;
  out.reserve(static_cast<size_t>(spec.termination) + 1);
  out.emplace_back(1);
  GaussScalar qk(1);
  for (int k = 0; k < spec.termination; ++k) {
    GaussScalar ratio(1);
    for (const auto& a : spec.num) ratio *= GaussScalar(1) - a * qk;
    GaussScalar den(1);
    for (size_t j = 0; j < spec.den.size(); ++j) {
      GaussScalar f = GaussScalar(1) - spec.den[j] * qk;
      if (f.is_zero()) denominator_vanishes(k + 1, j, spec.den[j]);
      den *= f;
    }
    den *= GaussScalar(1) - qk * q;
    if (e != 0) ratio *= pow(-qk, e);
    out.push_back(out.back() * ratio / den);
    qk *= q;
  }
  if (verify) {
    for (int k = 0; k <= spec.termination; ++k) {
      GaussScalar direct = qpochhammer_multi(spec.num, q, k) /
                           (qpochhammer_multi(spec.den, q, k) * ctx.qq(k)) * compensator(k, q, e);
      if (!(direct == out[static_cast<size_t>(k)]))
        throw std::logic_error("series term recurrence disagrees with direct evaluation at k = " +
                               std::to_string(k));
    }
  }
  return out;
}

std::vector<GaussScalar> hyp_coefficients(const HypSpec& spec) {
  std::vector<GaussScalar> out;
  out.reserve(static_cast<size_t>(spec.termination) + 1);
  out.emplace_back(1);
  for (int k = 0; k < spec.termination; ++k) {
    GaussScalar ratio(1);
    for (const auto& a : spec.num) ratio *= a + GaussScalar(k);
    GaussScalar den(k + 1);
    for (size_t j = 0; j < spec.den.size(); ++j) {
      GaussScalar f = spec.den[j] + GaussScalar(k);
      if (f.is_zero()) denominator_vanishes(k + 1, j, spec.den[j]);
      den *= f;
    }
    out.push_back(out.back() * ratio / den);
  }
  return out;
}

GaussScalar sum_series(const std::vector<GaussScalar>& coeffs, const GaussScalar& z) {
  GaussScalar acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

GaussScalar eval_phi_scalar(const PhiSpec& spec, const GaussScalar& z) {
  return sum_series(phi_coefficients(spec), z);
}

namespace {

Polynomial scale_to_poly(std::vector<GaussScalar> c, const GaussScalar& arg_scale, Context ctx) {
  GaussScalar s(1);
  for (auto& v : c) {
    v *= s;
    s *= arg_scale;
  }
  return Polynomial::monomial(std::move(c), std::move(ctx));
}

}  // namespace

Polynomial eval_phi_poly(const PhiSpec& spec, const GaussScalar& arg_scale) {
  return scale_to_poly(phi_coefficients(spec), arg_scale, spec.ctx);
}

GaussScalar eval_hyp_scalar(const std::vector<GaussScalar>& num, const std::vector<GaussScalar>& den,
                            int termination, const GaussScalar& z) {
  return sum_series(hyp_coefficients(HypSpec{num, den, termination}), z);
}

Polynomial eval_hyp_poly(const HypSpec& spec, const GaussScalar& arg_scale) {
  return scale_to_poly(hyp_coefficients(spec), arg_scale, nullptr);
}

std::optional<int> first_vanishing_term(const PhiSpec& spec) {
  auto c = phi_coefficients(spec);
  for (size_t k = 0; k < c.size(); ++k)
    if (c[k].is_zero()) return static_cast<int>(k);
  return std::nullopt;
}

}  // namespace qconn
