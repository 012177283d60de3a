#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qconn {

// GMP keeps mpq_class values canonical after every arithmetic operation.
using Rational = mpq_class;

class GaussScalar {
 public:
  GaussScalar() = default;
  GaussScalar(long v) : re_(v) {}
  GaussScalar(const Rational& re) : re_(re) {}
  GaussScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  GaussScalar(long num, long den);

  static GaussScalar i() { return GaussScalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussScalar conj() const { return GaussScalar(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussScalar inverse() const;

  GaussScalar& operator+=(const GaussScalar& o);
  GaussScalar& operator-=(const GaussScalar& o);
  GaussScalar& operator*=(const GaussScalar& o);
  GaussScalar& operator/=(const GaussScalar& o);

  friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
  friend GaussScalar operator-(GaussScalar a, const GaussScalar& b) { return a -= b; }
  friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
  friend GaussScalar operator/(GaussScalar a, const GaussScalar& b) { return a /= b; }
  GaussScalar operator-() const { return GaussScalar(-re_, -im_); }

  friend bool operator==(const GaussScalar& a, const GaussScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Literal in the rational/Gaussian grammar, e.g. "2/5", "-1/3+2/7i".
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussScalar pow(const GaussScalar& base, long exponent);

// Integer sign helper: (-1)^k.
inline GaussScalar sign_pow(long k) { return (k % 2 == 0) ? GaussScalar(1) : GaussScalar(-1); }

// Exact k-th root of a real rational when one exists (principal real root).
std::optional<GaussScalar> exact_root(const GaussScalar& value, int k);

class QContext {
 public:
  QContext(GaussScalar q, int max_degree);

  const GaussScalar& q() const { return q_; }
  int max_degree() const { return max_degree_; }

  // (q;q)_k from the eager cache.
  const GaussScalar& qq(int k) const;
  GaussScalar qpow(long e) const { return pow(q_, e); }
  void require_degree(int n) const;

 private:
  GaussScalar q_;
  int max_degree_;
  std::vector<GaussScalar> qq_cache_;
};

using Context = std::shared_ptr<const QContext>;

Context make_context(const GaussScalar& q, int max_degree = 16);

// Triangular number k(k-1)/2.
inline long tri(long k) { return k * (k - 1) / 2; }

GaussScalar qpochhammer(const GaussScalar& a, const GaussScalar& q, int n);
GaussScalar qpochhammer_multi(std::span<const GaussScalar> params, const GaussScalar& q, int k);
GaussScalar qbinomial(int n, int m, const QContext& ctx);
GaussScalar rising_factorial(const GaussScalar& a, int n);
GaussScalar qpochhammer_negpow(int n, int m, const QContext& ctx);

// ((-1)^k q^{k(k-1)/2})^e, the compensating factor of the basic series.
GaussScalar compensator(int k, const GaussScalar& q, int e);

// Ordinary binomial coefficient as a scalar; 0 outside 0 <= m <= n.
GaussScalar binomial(int n, int m);

// Multiplies each entry of params by factor.
std::vector<GaussScalar> scaled(std::span<const GaussScalar> params, const GaussScalar& factor);

}  // namespace qconn
