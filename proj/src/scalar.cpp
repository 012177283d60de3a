#include "qconn/scalar.hpp"

#include "qconn/error.hpp"

namespace qconn {

GaussScalar::GaussScalar(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in rational literal");
  re_ = Rational(num, den);
  re_.canonicalize();
}

GaussScalar GaussScalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (is_real()) return GaussScalar(Rational(1) / re_);
  Rational n = norm();
  return GaussScalar(re_ / n, -im_ / n);
}

GaussScalar& GaussScalar::operator+=(const GaussScalar& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussScalar& GaussScalar::operator-=(const GaussScalar& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussScalar& GaussScalar::operator*=(const GaussScalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussScalar& GaussScalar::operator/=(const GaussScalar& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

namespace {

std::string rational_text(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace

std::string GaussScalar::str() const {
  if (is_real()) return rational_text(re_);
  std::string im_text = rational_text(im_) + "i";
  if (sgn(re_) == 0) return im_text;
  return rational_text(re_) + (sgn(im_) > 0 ? "+" : "") + im_text;
}

GaussScalar pow(const GaussScalar& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  if (base.is_real()) {
    const Rational& r = base.re();
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational out;
    mpq_set_num(out.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(out.get_mpq_t(), den.get_mpz_t());
    return GaussScalar(out);
  }
  GaussScalar result(1);
  GaussScalar b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

std::optional<GaussScalar> exact_root(const GaussScalar& value, int k) {
  if (k < 1 || !value.is_real()) return std::nullopt;
  if (k == 1) return value;
  const Rational& r = value.re();
  if (sgn(r) < 0 && k % 2 == 0) return std::nullopt;
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(k)) == 0)
    return std::nullopt;
  if (mpz_root(den.get_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(k)) == 0)
    return std::nullopt;
  Rational out(num, den);
  out.canonicalize();
  return GaussScalar(out);
}

QContext::QContext(GaussScalar q, int max_degree) : q_(std::move(q)), max_degree_(max_degree) {
  if (max_degree_ < 0) throw Error(ErrorKind::InvalidContext, "negative max_degree");
  if (q_.is_zero()) throw Error(ErrorKind::InvalidContext, "q must be nonzero");
  qq_cache_.reserve(static_cast<size_t>(max_degree_) + 1);
  qq_cache_.emplace_back(1);
  GaussScalar qk = q_;
  for (int k = 1; k <= max_degree_; ++k) {
    GaussScalar factor = GaussScalar(1) - qk;
    if (factor.is_zero())
      throw Error(ErrorKind::InvalidContext,
                  "(q;q)_" + std::to_string(k) + " vanishes: q = " + q_.str() + " is a root of unity");
    qq_cache_.push_back(qq_cache_.back() * factor);
    qk *= q_;
  }
}

const GaussScalar& QContext::qq(int k) const {
  require_degree(k);
  return qq_cache_.at(static_cast<size_t>(k));
}

void QContext::require_degree(int n) const {
  if (n > max_degree_)
    throw Error(ErrorKind::DegreeExceeded, "degree " + std::to_string(n) + " exceeds context max_degree " +
                                               std::to_string(max_degree_));
}

Context make_context(const GaussScalar& q, int max_degree) {
  return std::make_shared<const QContext>(q, max_degree);
}

GaussScalar qpochhammer(const GaussScalar& a, const GaussScalar& q, int n) {
  GaussScalar result(1);
  if (a.is_zero()) return result;
  GaussScalar term = a;
  for (int k = 0; k < n; ++k) {
    result *= GaussScalar(1) - term;
    if (result.is_zero()) return result;
    term *= q;
  }
  return result;
}

GaussScalar qpochhammer_multi(std::span<const GaussScalar> params, const GaussScalar& q, int k) {
  GaussScalar result(1);
  for (const auto& a : params) result *= qpochhammer(a, q, k);
  return result;
}

GaussScalar qbinomial(int n, int m, const QContext& ctx) {
  ctx.require_degree(n);
  if (m < 0 || m > n) return GaussScalar(0);
  return ctx.qq(n) / (ctx.qq(m) * ctx.qq(n - m));
}

GaussScalar rising_factorial(const GaussScalar& a, int n) {
  GaussScalar result(1);
  for (int k = 0; k < n; ++k) result *= a + GaussScalar(k);
  return result;
}

GaussScalar qpochhammer_negpow(int n, int m, const QContext& ctx) {
  ctx.require_degree(n);
  if (m > n) return GaussScalar(0);
  return sign_pow(m) * ctx.qq(n) / ctx.qq(n - m) * ctx.qpow(tri(m) - static_cast<long>(n) * m);
}

GaussScalar compensator(int k, const GaussScalar& q, int e) {
  if (e == 0) return GaussScalar(1);
  GaussScalar base = sign_pow(k) * pow(q, tri(k));
  return pow(base, e);
}

GaussScalar binomial(int n, int m) {
  if (m < 0 || m > n) return GaussScalar(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  return GaussScalar(Rational(b));
}

std::vector<GaussScalar> scaled(std::span<const GaussScalar> params, const GaussScalar& factor) {
  std::vector<GaussScalar> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back(p * factor);
  return out;
}

}  // namespace qconn
