#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qconn/phi.hpp"
#include "qconn/poly.hpp"
#include "qconn/scalar.hpp"

namespace qconn {

using Bindings = std::map<std::string, GaussScalar>;

class FamilyInstance;

// P_n(y) = prefactor * sum_k c_k arg_scale^k B_k(y), where c_k are the series
// coefficients of phi (or hyp for the classical classes). Families whose
// polynomials are not a single series supply the basis coefficients directly.
struct SeriesForm {
  std::optional<PhiSpec> phi;
  std::optional<HypSpec> hyp;
  std::optional<std::vector<GaussScalar>> direct;
  GaussScalar arg_scale{1};
  GaussScalar prefactor{1};
};

struct ParamGroup {
  std::string prefix;  // binds prefix1, prefix2, ...
  int min_count = 0;
};

struct FamilySpec {
  std::string id;
  std::string title;
  std::vector<std::string> parameter_names;
  std::vector<ParamGroup> groups;
  std::vector<std::string> optional_names;
  std::string variable_note;
  int root_order = 1;  // the family needs an exact q^{1/root_order}
  bool expansion_capable = true;
  bool classical = false;
  std::function<Basis(const FamilyInstance&)> basis_builder;
  std::function<SeriesForm(const FamilyInstance&, int)> phi_builder;
  std::function<void(const FamilyInstance&)> constraints;
  std::function<std::string(const FamilyInstance&)> variable_key;
};

class FamilyInstance {
 public:
  FamilyInstance(const FamilySpec& spec, Bindings bindings, Context ctx, bool finite_support = false);

  const FamilySpec& spec() const { return *spec_; }
  const std::string& id() const { return spec_->id; }
  const Bindings& bindings() const { return bindings_; }
  const Context& ctx() const { return ctx_; }
  const GaussScalar& q() const { return ctx_->q(); }
  bool finite_support() const { return finite_support_; }

  const GaussScalar& p(const std::string& name) const;
  bool has(const std::string& name) const { return bindings_.count(name) != 0; }
  std::vector<GaussScalar> group(const std::string& prefix) const;

  // Exact q^{1/k}; available when the family declared root_order k.
  const GaussScalar& qroot(int k) const;

  const Basis& basis() const { return basis_; }
  std::string variable_key() const;

  // True when both instances express polynomials in the same working variable.
  bool same_variable(const FamilyInstance& other) const;

 private:
  const FamilySpec* spec_;
  Bindings bindings_;
  Context ctx_;
  bool finite_support_;
  std::map<int, GaussScalar> roots_;
  Basis basis_;
};

const std::vector<FamilySpec>& registry();
const FamilySpec& registry_lookup(const std::string& id);

FamilyInstance make_instance(const std::string& id, const Bindings& bindings, const Context& ctx);

// Coefficients D_k(n), k = 0..n, of P_n in the family's own basis.
std::vector<GaussScalar> family_basis_coefficients(const FamilyInstance& inst, int n);

// Rows 0..n_max of the definition matrix D.
std::vector<std::vector<GaussScalar>> definition_matrix(const FamilyInstance& inst, int n_max);

Polynomial family_polynomial(const FamilyInstance& inst, int n);
std::vector<Polynomial> family_polynomials(const FamilyInstance& inst, int n_max);
Polynomial family_basis_element(const FamilyInstance& inst, int n);

// Leading coefficients D_n(n) for n <= n_max must be nonzero.
void check_nondegenerate(const FamilyInstance& inst, int n_max);

// Continuous q-Hermite H_n(x|q), x = cos(theta), evaluated at z = e^{i theta}:
// sum_k [n,k]_q z^{n-2k}.
GaussScalar continuous_q_hermite_eval(int n, const GaussScalar& z, const QContext& ctx);

}  // namespace qconn
