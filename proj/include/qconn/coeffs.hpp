#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qconn/coefficients.hpp"
#include "qconn/families.hpp"
#include "qconn/scalar.hpp"

namespace qconn {

using ParamList = std::span<const GaussScalar>;

// y^n = sum_m I_m(n) P_m(y) for P_n = phi(q^{-n}, a q^n, (a_r); (b_s); q; q y).
// a = 0 selects the class without the a q^n slot.
CoefficientVector invert_basic(const GaussScalar& a, ParamList num, ParamList den, int n, const Context& ctx);

// P_n = sum_m C_m(n) Q_m with P from (a, num, den) and Q from (c, tgt_num, tgt_den).
// as_printed reproduces the uncorrected a = c = 0 prefactor q^{m(m-1)/2 (s+l-r-1-h)}.
CoefficientVector connect_basic(const GaussScalar& a, ParamList num, ParamList den, const GaussScalar& c,
                                ParamList tgt_num, ParamList tgt_den, int n, const Context& ctx,
                                bool as_printed = false);

// x^n = sum_m I_m(n) F_m(x) for F_n = F(-n, [n + lambda], (a_r); (b_s); x).
CoefficientVector invert_classical(const std::optional<GaussScalar>& lambda, ParamList num, ParamList den, int n);

CoefficientVector connect_classical(const std::optional<GaussScalar>& lambda, ParamList num, ParamList den,
                                    const std::optional<GaussScalar>& mu, ParamList tgt_num, ParamList tgt_den,
                                    int n);

// Inversion of P_n = pi_n phi(q^{-n}, aK q^n, nums; dens; q; w y) with compensator
// exponent E, for constant w. pi may be empty (pi_n = 1).
struct CanonicalForm {
  std::optional<GaussScalar> aK;
  std::vector<GaussScalar> nums;
  std::vector<GaussScalar> dens;
  int E = 0;
  GaussScalar w;
  std::function<GaussScalar(int)> pi;
};

CoefficientVector canonical_inversion(const CanonicalForm& form, int n, const Context& ctx, std::string provenance);

// C_m(n) = sum_{k=m}^{n} D_k(n) I_m(k).
TriangularMatrix compose(const TriangularMatrix& D, const TriangularMatrix& I);

// M·M = identity for the monomial coefficient matrix of (b)_n/(a)_n F(-n, (a); (b); x).
bool self_inverse_check(ParamList num, ParamList den, int n_max);

// Closed forms of the recursion coefficients b_m(n,0) and A_k(n) for the monic rescaling
// of phi(q^{-n}, a q^n, (a_r); (b_s); q; q y). as_printed selects the uncorrected
// (a q^{n-m};q)_{n-m}/(a q^n;q)_n factor.
GaussScalar lemma_b(const GaussScalar& a, ParamList num, ParamList den, int n, int m, const QContext& ctx,
                    bool as_printed = false);
GaussScalar lemma_A(const GaussScalar& a, ParamList num, ParamList den, int n, int k, const QContext& ctx,
                    bool as_printed = false);

using InversionFormula = std::function<GaussScalar(const FamilyInstance&, int n, int m)>;
using ConnectionFormula = std::function<GaussScalar(const FamilyInstance&, const FamilyInstance&, int n, int m)>;

struct InversionRow {
  std::string family;
  std::string provenance;
  InversionFormula printed;
  InversionFormula corrected;  // empty when the printed row is exact
  std::string printed_text;
  std::string corrected_text;
};

struct ConnectionRow {
  std::string family;
  std::string provenance;
  ConnectionFormula printed;
  ConnectionFormula corrected;
  std::string printed_text;
  std::string corrected_text;
  // Throws PreconditionViolated when the pair falls outside the row.
  std::function<void(const FamilyInstance&, const FamilyInstance&)> precondition;
  // Rewrites target bindings so that a sampled pair satisfies the precondition.
  std::function<void(const Bindings&, Bindings&)> align;
};

const std::vector<InversionRow>& inversion_rows();
const std::vector<ConnectionRow>& connection_rows();
const InversionRow* find_inversion_row(const std::string& family);
const ConnectionRow* find_connection_row(const std::string& family);

struct CorrectionEntry {
  std::string location;
  std::string printed_form;
  std::string corrected_form;
  std::string evidence;
};

const std::vector<CorrectionEntry>& corrections_ledger();

CoefficientVector closed_form_inversion(const FamilyInstance& inst, int n, bool as_printed = false);
CoefficientVector closed_form_connection(const FamilyInstance& src, const FamilyInstance& tgt, int n,
                                         bool as_printed = false);

// Families that closed_form_connection accepts as both source and target.
bool pair_capable(const FamilySpec& spec);

}  // namespace qconn
