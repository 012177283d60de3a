#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qconn/scalar.hpp"

namespace qconn {

enum class BasisKind { Monomial, QShifted, PairedProduct, ShiftedNodes, ImaginaryShifted };

// Element n of each basis, in the working variable y:
//   Monomial          y^n
//   QShifted          prod_{j<n} (1 - y q^j)
//   PairedProduct     prod_{j<n} (1 - alpha q^j y + tau q^{2j})
//   ShiftedNodes      prod_{j<n} (y - q^j)
//   ImaginaryShifted  prod_{j<n} (1 - i y q^j)
struct Basis {
  BasisKind kind = BasisKind::Monomial;
  GaussScalar alpha;
  GaussScalar tau;
  Context ctx;

  static Basis monomial(Context ctx = nullptr);
  static Basis qshifted(Context ctx);
  static Basis paired(Context ctx, GaussScalar alpha, GaussScalar tau);
  static Basis shifted_nodes(Context ctx);
  static Basis imaginary_shifted(Context ctx);

  bool same_as(const Basis& other) const;
  std::string describe() const;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Basis basis, std::vector<GaussScalar> coeffs);

  static Polynomial monomial(std::vector<GaussScalar> coeffs, Context ctx = nullptr);

  const Basis& basis() const { return basis_; }
  const std::vector<GaussScalar>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  GaussScalar coeff(int k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.basis_.same_as(b.basis_) && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  Basis basis_;
  std::vector<GaussScalar> coeffs_;
};

std::string basis_kind_name(BasisKind kind);

Polynomial basis_element(const Basis& basis, int n);

// Monomial expansions of B_0 .. B_{n_max}, built incrementally.
std::vector<Polynomial> basis_elements(const Basis& basis, int n_max);

// Direct product evaluation of B_n(y).
GaussScalar basis_eval(const Basis& basis, int n, const GaussScalar& y);

Polynomial to_monomial(const Polynomial& p);

GaussScalar poly_eval(const Polynomial& p, const GaussScalar& y);

// Evaluation straight from the stored representation, summing coeffs[k] B_k(y).
GaussScalar poly_eval_direct(const Polynomial& p, const GaussScalar& y);

Polynomial linear_combination(const std::vector<std::pair<GaussScalar, Polynomial>>& terms);

}  // namespace qconn
