#include "qconn/poly.hpp"

#include "qconn/error.hpp"

namespace qconn {

namespace {

const QContext& need_ctx(const Basis& basis) {
  if (!basis.ctx) throw Error(ErrorKind::InvalidContext, basis.describe() + " basis requires a q context");
  return *basis.ctx;
}

// Multiplies p (monomial coefficients) by the linear factor c0 + c1 y.
void multiply_factor(std::vector<GaussScalar>& p, const GaussScalar& c0, const GaussScalar& c1) {
  std::vector<GaussScalar> out(p.size() + 1);
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k].is_zero()) continue;
    if (!c0.is_zero()) out[k] += p[k] * c0;
    if (!c1.is_zero()) out[k + 1] += p[k] * c1;
  }
  p = std::move(out);
}

bool same_context(const Context& a, const Context& b) {
  if (!a || !b) return true;
  return a == b || a->q() == b->q();
}

}  // namespace

Basis Basis::monomial(Context ctx) { return Basis{BasisKind::Monomial, {}, {}, std::move(ctx)}; }

Basis Basis::qshifted(Context ctx) { return Basis{BasisKind::QShifted, {}, {}, std::move(ctx)}; }

Basis Basis::paired(Context ctx, GaussScalar alpha, GaussScalar tau) {
  return Basis{BasisKind::PairedProduct, std::move(alpha), std::move(tau), std::move(ctx)};
}

Basis Basis::shifted_nodes(Context ctx) { return Basis{BasisKind::ShiftedNodes, {}, {}, std::move(ctx)}; }

Basis Basis::imaginary_shifted(Context ctx) {
  return Basis{BasisKind::ImaginaryShifted, {}, {}, std::move(ctx)};
}

bool Basis::same_as(const Basis& other) const {
  if (kind != other.kind) return false;
  if (kind == BasisKind::Monomial) return true;
  if (!same_context(ctx, other.ctx)) return false;
  if (kind == BasisKind::PairedProduct) return alpha == other.alpha && tau == other.tau;
  return true;
}

std::string basis_kind_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::Monomial: return "monomial";
    case BasisKind::QShifted: return "q-shifted";
    case BasisKind::PairedProduct: return "paired-product";
    case BasisKind::ShiftedNodes: return "shifted-nodes";
    case BasisKind::ImaginaryShifted: return "imaginary-shifted";
  }
  return "unknown";
}

std::string Basis::describe() const {
  if (kind == BasisKind::PairedProduct)
    return "paired-product(alpha=" + alpha.str() + ", tau=" + tau.str() + ")";
  return basis_kind_name(kind);
}

Polynomial::Polynomial(Basis basis, std::vector<GaussScalar> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::monomial(std::vector<GaussScalar> coeffs, Context ctx) {
  return Polynomial(Basis::monomial(std::move(ctx)), std::move(coeffs));
}

GaussScalar Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return GaussScalar(0);
  return coeffs_[static_cast<size_t>(k)];
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::vector<Polynomial> basis_elements(const Basis& basis, int n_max) {
  std::vector<Polynomial> out;
  if (n_max < 0) return out;
  if (basis.kind != BasisKind::Monomial) need_ctx(basis).require_degree(n_max);
  out.reserve(static_cast<size_t>(n_max) + 1);
  std::vector<GaussScalar> current{GaussScalar(1)};
  out.push_back(Polynomial::monomial(current, basis.ctx));
  GaussScalar qj(1);
  GaussScalar q2j(1);
  for (int j = 0; j < n_max; ++j) {
    switch (basis.kind) {
      case BasisKind::Monomial:
        current.insert(current.begin(), GaussScalar(0));
        break;
      case BasisKind::QShifted:
        multiply_factor(current, GaussScalar(1), -qj);
        break;
      case BasisKind::PairedProduct:
        multiply_factor(current, GaussScalar(1) + basis.tau * q2j, -(basis.alpha * qj));
        break;
      case BasisKind::ShiftedNodes:
        multiply_factor(current, -qj, GaussScalar(1));
        break;
      case BasisKind::ImaginaryShifted:
        multiply_factor(current, GaussScalar(1), -(GaussScalar::i() * qj));
        break;
    }
    out.push_back(Polynomial::monomial(current, basis.ctx));
    if (basis.kind != BasisKind::Monomial) {
      qj *= basis.ctx->q();
      q2j *= basis.ctx->q() * basis.ctx->q();
    }
  }
  return out;
}

Polynomial basis_element(const Basis& basis, int n) {
  if (n < 0) throw Error(ErrorKind::UsageError, "negative basis index");
  return basis_elements(basis, n).back();
}

GaussScalar basis_eval(const Basis& basis, int n, const GaussScalar& y) {
  if (basis.kind == BasisKind::Monomial) return pow(y, n);
  const QContext& ctx = need_ctx(basis);
  ctx.require_degree(n);
  GaussScalar result(1);
  GaussScalar qj(1);
  for (int j = 0; j < n; ++j) {
    switch (basis.kind) {
      case BasisKind::QShifted: result *= GaussScalar(1) - y * qj; break;
      case BasisKind::PairedProduct:
        result *= GaussScalar(1) - basis.alpha * qj * y + basis.tau * qj * qj;
        break;
      case BasisKind::ShiftedNodes: result *= y - qj; break;
      case BasisKind::ImaginaryShifted: result *= GaussScalar(1) - GaussScalar::i() * y * qj; break;
      case BasisKind::Monomial: break;
    }
    qj *= ctx.q();
  }
  return result;
}

Polynomial to_monomial(const Polynomial& p) {
  if (p.basis().kind == BasisKind::Monomial) return p;
  if (p.is_zero()) return Polynomial::monomial({}, p.basis().ctx);
  auto elements = basis_elements(p.basis(), p.degree());
  std::vector<GaussScalar> out(static_cast<size_t>(p.degree()) + 1);
  for (int n = 0; n <= p.degree(); ++n) {
    const GaussScalar& c = p.coeffs()[static_cast<size_t>(n)];
    if (c.is_zero()) continue;
    const auto& e = elements[static_cast<size_t>(n)].coeffs();
    for (size_t k = 0; k < e.size(); ++k) out[k] += c * e[k];
  }
  return Polynomial::monomial(std::move(out), p.basis().ctx);
}

GaussScalar poly_eval(const Polynomial& p, const GaussScalar& y) {
  Polynomial m = to_monomial(p);
  GaussScalar acc(0);
  for (auto it = m.coeffs().rbegin(); it != m.coeffs().rend(); ++it) acc = acc * y + *it;
  return acc;
}

GaussScalar poly_eval_direct(const Polynomial& p, const GaussScalar& y) {
  GaussScalar acc(0);
  for (int k = 0; k <= p.degree(); ++k) {
    const GaussScalar& c = p.coeffs()[static_cast<size_t>(k)];
    if (!c.is_zero()) acc += c * basis_eval(p.basis(), k, y);
  }
  return acc;
}

Polynomial linear_combination(const std::vector<std::pair<GaussScalar, Polynomial>>& terms) {
  Context ctx;
  for (const auto& [c, p] : terms) {
    const Context& pc = p.basis().ctx;
    if (!pc) continue;
    if (ctx && !same_context(ctx, pc))
      throw Error(ErrorKind::MixedContexts, "linear_combination over polynomials with different q contexts");
    if (!ctx) ctx = pc;
  }
  std::vector<GaussScalar> out;
  for (const auto& [c, p] : terms) {
    if (c.is_zero()) continue;
    Polynomial m = to_monomial(p);
    if (out.size() < m.coeffs().size()) out.resize(m.coeffs().size());
    for (size_t k = 0; k < m.coeffs().size(); ++k) out[k] += c * m.coeffs()[k];
  }
  return Polynomial::monomial(std::move(out), ctx);
}

}  // namespace qconn
