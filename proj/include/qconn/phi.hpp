#pragma once

#include <optional>
#include <vector>

#include "qconn/poly.hpp"
#include "qconn/scalar.hpp"

namespace qconn {

// A terminating basic series summed for k = 0..termination. The compensating
// exponent is 1 + s - r with r = num.size() + extra_numerators; extra_numerators
// counts parameters carried by the basis (e.g. the q^{-x} slot) and may be
// negative when a caller needs a larger compensator.
struct PhiSpec {
  std::vector<GaussScalar> num;
  std::vector<GaussScalar> den;
  Context ctx;
  int termination = 0;
  int extra_numerators = 0;

  int compensator_exponent() const;

  // Infers the termination index from a numerator equal to q^{-n}.
  static PhiSpec terminating(std::vector<GaussScalar> num, std::vector<GaussScalar> den, Context ctx,
                             int extra_numerators = 0);
  static PhiSpec truncated(std::vector<GaussScalar> num, std::vector<GaussScalar> den, Context ctx,
                           int termination, int extra_numerators = 0);
};

struct HypSpec {
  std::vector<GaussScalar> num;
  std::vector<GaussScalar> den;
  int termination = 0;

  static HypSpec terminating(std::vector<GaussScalar> num, std::vector<GaussScalar> den);
};

// Term k of the series divided by z^k, for k = 0..termination. With verify set,
// every term from the multiplicative recurrence is recomputed from scratch.
std::vector<GaussScalar> phi_coefficients(const PhiSpec& spec, bool verify = false);
std::vector<GaussScalar> hyp_coefficients(const HypSpec& spec);

GaussScalar eval_phi_scalar(const PhiSpec& spec, const GaussScalar& z);
Polynomial eval_phi_poly(const PhiSpec& spec, const GaussScalar& arg_scale);

GaussScalar eval_hyp_scalar(const std::vector<GaussScalar>& num, const std::vector<GaussScalar>& den,
                            int termination, const GaussScalar& z);
Polynomial eval_hyp_poly(const HypSpec& spec, const GaussScalar& arg_scale);

// First index k <= termination whose term vanishes because a numerator
// Pochhammer hit zero before the nominal end of the sum.
std::optional<int> first_vanishing_term(const PhiSpec& spec);

// Sum of c_k z^k for precomputed coefficients.
GaussScalar sum_series(const std::vector<GaussScalar>& coeffs, const GaussScalar& z);

}  // namespace qconn
