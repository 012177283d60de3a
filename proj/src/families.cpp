#include "qconn/families.hpp"

#include <algorithm>
#include <cctype>

#include "qconn/error.hpp"

namespace qconn {

namespace {

using G = GaussScalar;

// Canonical basic form: prefactor * phi(q^{-n}, aK q^n, nums; dens; q; w y) with
// compensator exponent E imposed through the extra-numerator count.
SeriesForm canon(const FamilyInstance& f, int n, std::optional<G> aK, const std::vector<G>& nums,
                 const std::vector<G>& dens, int E, G w, G pref = G(1)) {
  const G& q = f.q();
  std::vector<G> num{pow(q, -n)};
  if (aK) num.push_back(*aK * pow(q, n));
  num.insert(num.end(), nums.begin(), nums.end());
  int extra = 1 + static_cast<int>(dens.size()) - static_cast<int>(num.size()) - E;
  SeriesForm s;
  s.phi = PhiSpec::truncated(std::move(num), dens, f.ctx(), n, extra);
  s.arg_scale = std::move(w);
  s.prefactor = std::move(pref);
  return s;
}

G qp(const G& a, const G& q, int n) { return qpochhammer(a, q, n); }

G qpm(std::initializer_list<G> params, const G& q, int n) {
  G r(1);
  for (const auto& a : params) r *= qpochhammer(a, q, n);
  return r;
}

G qqn(const FamilyInstance& f, int n) { return f.ctx()->qq(n); }

std::vector<G> zeros(int count) { return std::vector<G>(static_cast<size_t>(std::max(count, 0)), G(0)); }

std::string key_x(const FamilyInstance&) { return "x"; }
std::string key_qx(const FamilyInstance&) { return "q^-x"; }
std::string key_cos(const FamilyInstance&) { return "2cos"; }
std::string key_tau(const FamilyInstance& f) { return "q^-x+tau*q^x;tau=" + f.basis().tau.str(); }

Basis mono(const FamilyInstance& f) { return Basis::monomial(f.ctx()); }
Basis qshift(const FamilyInstance& f) { return Basis::qshifted(f.ctx()); }
Basis nodes(const FamilyInstance& f) { return Basis::shifted_nodes(f.ctx()); }

void require_unit(const FamilyInstance& f, const std::string& name) {
  if (f.p(name).norm() != 1)
    throw Error(ErrorKind::BindingError, f.id() + ": parameter " + name + " must lie on the unit circle");
}

bool is_negative_q_power(const G& value, const QContext& ctx) {
  G power(1);
  G qinv = ctx.q().inverse();
  for (int j = 0; j <= ctx.max_degree(); ++j) {
    if (power == value) return true;
    power *= qinv;
  }
  return false;
}

FamilySpec make_spec(std::string id, std::string title, std::vector<std::string> params, std::string note,
                     std::function<Basis(const FamilyInstance&)> basis,
                     std::function<SeriesForm(const FamilyInstance&, int)> series,
                     std::function<std::string(const FamilyInstance&)> key) {
  FamilySpec s;
  s.id = std::move(id);
  s.title = std::move(title);
  s.parameter_names = std::move(params);
  s.variable_note = std::move(note);
  s.basis_builder = std::move(basis);
  s.phi_builder = std::move(series);
  s.variable_key = std::move(key);
  return s;
}

std::vector<FamilySpec> build_registry() {
  std::vector<FamilySpec> r;
  const std::string cos_note = "y = 2x, x = cos(theta)";

  r.push_back(make_spec(
      "askey-wilson", "Askey-Wilson", {"a", "b", "c", "d"}, cos_note,
      [](const FamilyInstance& f) {
        const G& a = f.p("a");
        return Basis::paired(f.ctx(), a, a * a);
      },
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &b = f.p("b"), &c = f.p("c"), &d = f.p("d"), &q = f.q();
        return canon(f, n, a * b * c * d / q, {}, {a * b, a * c, a * d}, 0, q,
                     qpm({a * b, a * c, a * d}, q, n) / pow(a, n));
      },
      key_cos));

  {
    FamilySpec s = make_spec(
        "q-racah", "q-Racah", {"alpha", "beta", "gamma", "delta"}, "y = mu(x) = q^{-x} + gamma*delta*q^{x+1}",
        [](const FamilyInstance& f) { return Basis::paired(f.ctx(), G(1), f.p("gamma") * f.p("delta") * f.q()); },
        [](const FamilyInstance& f, int n) {
          const G &al = f.p("alpha"), &be = f.p("beta"), &ga = f.p("gamma"), &de = f.p("delta"), &q = f.q();
          return canon(f, n, al * be * q, {}, {al * q, be * de * q, ga * q}, 0, q);
        },
        key_tau);
    r.push_back(std::move(s));
  }

  r.push_back(make_spec(
      "continuous-dual-q-hahn", "Continuous dual q-Hahn", {"a", "b", "c"}, cos_note,
      [](const FamilyInstance& f) {
        const G& a = f.p("a");
        return Basis::paired(f.ctx(), a, a * a);
      },
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &b = f.p("b"), &c = f.p("c"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {a * b, a * c}, 0, q, qpm({a * b, a * c}, q, n) / pow(a, n));
      },
      key_cos));

  {
    FamilySpec s = make_spec(
        "continuous-q-hahn", "Continuous q-Hahn", {"a", "b", "c", "d", "eiphi"}, "y = 2x, x = cos(theta + phi)",
        [](const FamilyInstance& f) {
          G ae = f.p("a") * f.p("eiphi");
          return Basis::paired(f.ctx(), ae, ae * ae);
        },
        [](const FamilyInstance& f, int n) {
          const G &a = f.p("a"), &b = f.p("b"), &c = f.p("c"), &d = f.p("d"), &e = f.p("eiphi"), &q = f.q();
          G ab = a * b * e * e;
          return canon(f, n, a * b * c * d / q, {}, {ab, a * c, a * d}, 0, q,
                       qpm({ab, a * c, a * d}, q, n) / pow(a * e, n));
        },
        key_cos);
    s.constraints = [](const FamilyInstance& f) { require_unit(f, "eiphi"); };
    r.push_back(std::move(s));
  }

  r.push_back(make_spec(
      "big-q-jacobi", "Big q-Jacobi", {"a", "b", "c"}, "y = x", qshift,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &b = f.p("b"), &c = f.p("c"), &q = f.q();
        return canon(f, n, a * b * q, {}, {a * q, c * q}, 0, q);
      },
      key_x));

  r.push_back(make_spec(
      "q-hahn", "q-Hahn", {"alpha", "beta", "qnegN"}, "y = q^{-x}", qshift,
      [](const FamilyInstance& f, int n) {
        const G &al = f.p("alpha"), &be = f.p("beta"), &qn = f.p("qnegN"), &q = f.q();
        return canon(f, n, al * be * q, {}, {al * q, qn}, 0, q);
      },
      key_qx));

  r.push_back(make_spec(
      "dual-q-hahn", "Dual q-Hahn", {"gamma", "delta", "qnegN"}, "y = mu(x) = q^{-x} + gamma*delta*q^{x+1}",
      [](const FamilyInstance& f) { return Basis::paired(f.ctx(), G(1), f.p("gamma") * f.p("delta") * f.q()); },
      [](const FamilyInstance& f, int n) {
        const G &ga = f.p("gamma"), &qn = f.p("qnegN"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {ga * q, qn}, 0, q);
      },
      key_tau));

  r.push_back(make_spec(
      "al-salam-chihara", "Al-Salam-Chihara", {"a", "b"}, cos_note,
      [](const FamilyInstance& f) {
        const G& a = f.p("a");
        return Basis::paired(f.ctx(), a, a * a);
      },
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &b = f.p("b"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {a * b, G(0)}, 0, q, qp(a * b, q, n) / pow(a, n));
      },
      key_cos));

  {
    FamilySpec s = make_spec(
        "q-meixner-pollaczek", "q-Meixner-Pollaczek", {"a", "eiphi"}, "y = 2x, x = cos(theta + phi)",
        [](const FamilyInstance& f) {
          G ae = f.p("a") * f.p("eiphi");
          return Basis::paired(f.ctx(), ae, ae * ae);
        },
        [](const FamilyInstance& f, int n) {
          const G &a = f.p("a"), &e = f.p("eiphi"), &q = f.q();
          return canon(f, n, std::nullopt, {}, {a * a, G(0)}, 0, q,
                       qp(a * a, q, n) / (qqn(f, n) * pow(a * e, n)));
        },
        key_cos);
    s.constraints = [](const FamilyInstance& f) { require_unit(f, "eiphi"); };
    r.push_back(std::move(s));
  }

  {
    // qa = q^{alpha/2+1/4}, qb = q^{beta/2+1/4}.
    FamilySpec s = make_spec(
        "continuous-q-jacobi", "Continuous q-Jacobi", {"qa", "qb"}, cos_note,
        [](const FamilyInstance& f) {
          const G& A = f.p("qa");
          return Basis::paired(f.ctx(), A, A * A);
        },
        [](const FamilyInstance& f, int n) {
          const G &A = f.p("qa"), &B = f.p("qb"), &q = f.q();
          const G& s = f.qroot(2);
          return canon(f, n, A * A * B * B, {}, {A * A * s, -(A * B), -(A * B * s)}, 0, q,
                       qp(A * A * s, q, n) / qqn(f, n));
        },
        key_cos);
    s.root_order = 2;
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "continuous-q-ultraspherical", "Continuous q-ultraspherical (Rogers)", {"sbeta"}, cos_note,
        [](const FamilyInstance& f) {
          const G& sb = f.p("sbeta");
          return Basis::paired(f.ctx(), sb, sb * sb);
        },
        [](const FamilyInstance& f, int n) {
          const G &sb = f.p("sbeta"), &q = f.q();
          const G& s = f.qroot(2);
          G be = sb * sb;
          return canon(f, n, be * be, {}, {be * s, -be, -(be * s)}, 0, q,
                       qp(be * be, q, n) / (qqn(f, n) * pow(sb, n)));
        },
        key_cos);
    s.root_order = 2;
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "continuous-q-legendre", "Continuous q-Legendre", {}, cos_note,
        [](const FamilyInstance& f) { return Basis::paired(f.ctx(), f.qroot(4), f.qroot(2)); },
        [](const FamilyInstance& f, int n) {
          const G& q = f.q();
          const G& s = f.qroot(2);
          return canon(f, n, q, {}, {q, -s, -q}, 0, q);
        },
        key_cos);
    s.root_order = 4;
    r.push_back(std::move(s));
  }

  r.push_back(make_spec(
      "big-q-laguerre", "Big q-Laguerre", {"a", "b"}, "y = x", qshift,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &b = f.p("b"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {a * q, b * q}, 0, q);
      },
      key_x));

  r.push_back(make_spec(
      "little-q-jacobi", "Little q-Jacobi", {"a", "b"}, "y = x", mono,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &b = f.p("b"), &q = f.q();
        return canon(f, n, a * b * q, {}, {a * q}, 0, q);
      },
      key_x));

  r.push_back(make_spec(
      "little-q-legendre", "Little q-Legendre", {}, "y = x", mono,
      [](const FamilyInstance& f, int n) {
        const G& q = f.q();
        return canon(f, n, q, {}, {q}, 0, q);
      },
      key_x));

  r.push_back(make_spec(
      "q-meixner", "q-Meixner", {"b", "c"}, "y = q^{-x}", qshift,
      [](const FamilyInstance& f, int n) {
        const G &b = f.p("b"), &c = f.p("c"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {b * q}, 0, -pow(q, n + 1) / c);
      },
      key_qx));

  r.push_back(make_spec(
      "quantum-q-krawtchouk", "Quantum q-Krawtchouk", {"p", "qnegN"}, "y = q^{-x}", qshift,
      [](const FamilyInstance& f, int n) {
        const G &p = f.p("p"), &qn = f.p("qnegN"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {qn}, 0, p * pow(q, n + 1));
      },
      key_qx));

  r.push_back(make_spec(
      "q-krawtchouk", "q-Krawtchouk", {"p", "qnegN"}, "y = q^{-x}", qshift,
      [](const FamilyInstance& f, int n) {
        const G &p = f.p("p"), &qn = f.p("qnegN"), &q = f.q();
        return canon(f, n, -p, {}, {qn, G(0)}, 0, q);
      },
      key_qx));

  r.push_back(make_spec(
      "affine-q-krawtchouk", "Affine q-Krawtchouk", {"p", "qnegN"}, "y = q^{-x}", qshift,
      [](const FamilyInstance& f, int n) {
        const G &p = f.p("p"), &qn = f.p("qnegN"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {p * q, qn}, 0, q);
      },
      key_qx));

  r.push_back(make_spec(
      "dual-q-krawtchouk", "Dual q-Krawtchouk", {"c", "qnegN"}, "y = lambda(x) = q^{-x} + c*q^{x-N}",
      [](const FamilyInstance& f) { return Basis::paired(f.ctx(), G(1), f.p("c") * f.p("qnegN")); },
      [](const FamilyInstance& f, int n) {
        const G &qn = f.p("qnegN"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {qn, G(0)}, 0, q);
      },
      key_tau));

  r.push_back(make_spec(
      "continuous-big-q-hermite", "Continuous big q-Hermite", {"a"}, cos_note,
      [](const FamilyInstance& f) {
        const G& a = f.p("a");
        return Basis::paired(f.ctx(), a, a * a);
      },
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {G(0), G(0)}, 0, q, pow(a, -n));
      },
      key_cos));

  {
    // qa = q^{alpha/2+1/4}.
    FamilySpec s = make_spec(
        "continuous-q-laguerre", "Continuous q-Laguerre", {"qa"}, cos_note,
        [](const FamilyInstance& f) {
          const G& A = f.p("qa");
          return Basis::paired(f.ctx(), A, A * A);
        },
        [](const FamilyInstance& f, int n) {
          const G &A = f.p("qa"), &q = f.q();
          const G& s = f.qroot(2);
          return canon(f, n, std::nullopt, {}, {A * A * s, G(0)}, 0, q, qp(A * A * s, q, n) / qqn(f, n));
        },
        key_cos);
    s.root_order = 2;
    r.push_back(std::move(s));
  }

  r.push_back(make_spec(
      "little-q-laguerre", "Little q-Laguerre (Wall)", {"a"}, "y = x", mono,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &q = f.q();
        return canon(f, n, std::nullopt, {G(0)}, {a * q}, 0, q);
      },
      key_x));

  r.push_back(make_spec(
      "q-laguerre", "q-Laguerre", {"qalpha"}, "y = x", mono,
      [](const FamilyInstance& f, int n) {
        const G &qa = f.p("qalpha"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {qa * q}, 1, -pow(q, n + 1) * qa, qp(qa * q, q, n) / qqn(f, n));
      },
      key_x));

  r.push_back(make_spec(
      "alternative-q-charlier", "Alternative q-Charlier", {"a"}, "y = x", mono,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &q = f.q();
        return canon(f, n, -a, {}, {G(0)}, 0, q);
      },
      key_x));

  r.push_back(make_spec(
      "q-charlier", "q-Charlier", {"a"}, "y = q^{-x}", qshift,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {G(0)}, 0, -pow(q, n + 1) / a);
      },
      key_qx));

  r.push_back(make_spec(
      "al-salam-carlitz-1", "Al-Salam-Carlitz I", {"a"}, "y = x", nodes,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {G(0)}, 0, q / a, pow(-a, n) * pow(q, tri(n)));
      },
      key_x));

  r.push_back(make_spec(
      "al-salam-carlitz-2", "Al-Salam-Carlitz II", {"a"}, "y = x", qshift,
      [](const FamilyInstance& f, int n) {
        const G &a = f.p("a"), &q = f.q();
        return canon(f, n, std::nullopt, {}, {}, -1, pow(q, n) / a, pow(-a, n) * pow(q, -tri(n)));
      },
      key_x));

  {
    FamilySpec s;
    s.id = "continuous-q-hermite";
    s.title = "Continuous q-Hermite";
    s.variable_note = "x = cos(theta); evaluated pointwise at z = e^{i theta}";
    s.expansion_capable = false;
    s.basis_builder = [](const FamilyInstance& f) { return Basis::monomial(f.ctx()); };
    s.variable_key = [](const FamilyInstance&) { return std::string("theta"); };
    r.push_back(std::move(s));
  }

  r.push_back(make_spec(
      "stieltjes-wigert", "Stieltjes-Wigert", {}, "y = x", mono,
      [](const FamilyInstance& f, int n) {
        const G& q = f.q();
        return canon(f, n, std::nullopt, {}, {G(0)}, 1, -pow(q, n + 1), qqn(f, n).inverse());
      },
      key_x));

  r.push_back(make_spec(
      "discrete-q-hermite-1", "Discrete q-Hermite I", {}, "y = x", nodes,
      [](const FamilyInstance& f, int n) {
        const G& q = f.q();
        return canon(f, n, std::nullopt, {}, {G(0)}, 0, -q, pow(q, tri(n)));
      },
      key_x));

  r.push_back(make_spec(
      "discrete-q-hermite-2", "Discrete q-Hermite II", {}, "y = x",
      [](const FamilyInstance& f) { return Basis::imaginary_shifted(f.ctx()); },
      [](const FamilyInstance& f, int n) {
        const G& q = f.q();
        return canon(f, n, std::nullopt, {}, {}, -1, -pow(q, n), pow(G::i(), -n) * pow(q, -tri(n)));
      },
      key_x));

  {
    // d defaults to the number of b parameters; the series carries d zero slots.
    FamilySpec s = make_spec(
        "d-little-q-laguerre", "d-orthogonal little q-Laguerre type", {}, "y = x", mono,
        [](const FamilyInstance& f, int n) {
          auto b = f.group("b");
          int d = f.has("d") ? static_cast<int>(f.p("d").re().get_num().get_si()) : static_cast<int>(b.size());
          return canon(f, n, std::nullopt, zeros(d), b, static_cast<int>(b.size()) - d, f.q());
        },
        key_x);
    s.groups = {{"b", 1}};
    s.optional_names = {"d"};
    s.constraints = [](const FamilyInstance& f) {
      if (!f.has("d")) return;
      const G& d = f.p("d");
      if (!d.is_real() || d.re().get_den() != 1 || d.re() < 1 || d.re() > 64)
        throw Error(ErrorKind::BindingError, "d-little-q-laguerre: d must be a positive integer");
    };
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "d-q-meixner", "d-orthogonal q-Meixner type", {"c"}, "y = q^{-x}", qshift,
        [](const FamilyInstance& f, int n) {
          auto b = f.group("b");
          const G& q = f.q();
          return canon(f, n, std::nullopt, {}, b, static_cast<int>(b.size()) - 1, -pow(q, n + 1) / f.p("c"));
        },
        key_qx);
    s.groups = {{"b", 1}};
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "d-big-q-laguerre", "d-orthogonal big q-Laguerre type", {}, "y = x", qshift,
        [](const FamilyInstance& f, int n) {
          auto b = f.group("b");
          return canon(f, n, std::nullopt, zeros(static_cast<int>(b.size()) - 1), b, 0, f.q());
        },
        key_x);
    s.groups = {{"b", 2}};
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "d-q-laguerre", "d-orthogonal q-Laguerre type", {}, "y = x", mono,
        [](const FamilyInstance& f, int n) {
          auto b = f.group("b");
          return canon(f, n, std::nullopt, {}, b, static_cast<int>(b.size()), pow(f.q(), n));
        },
        key_x);
    s.groups = {{"b", 1}};
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "generic-q", "Generic basic class phi(q^{-n}, (a_r); (b_s); q; qx)", {}, "y = x", mono,
        [](const FamilyInstance& f, int n) {
          const G& q = f.q();
          std::vector<G> num{pow(q, -n)};
          auto a = f.group("a");
          num.insert(num.end(), a.begin(), a.end());
          SeriesForm s;
          s.phi = PhiSpec::truncated(std::move(num), f.group("b"), f.ctx(), n);
          s.arg_scale = q;
          return s;
        },
        key_x);
    s.groups = {{"a", 0}, {"b", 0}};
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "generic-q-a", "Generic basic class phi(q^{-n}, aq^n, (a_r); (b_s); q; qx)", {"a"}, "y = x", mono,
        [](const FamilyInstance& f, int n) {
          const G& q = f.q();
          std::vector<G> num{pow(q, -n), f.p("a") * pow(q, n)};
          auto a = f.group("a");
          num.insert(num.end(), a.begin(), a.end());
          SeriesForm s;
          s.phi = PhiSpec::truncated(std::move(num), f.group("b"), f.ctx(), n);
          s.arg_scale = q;
          return s;
        },
        key_x);
    s.groups = {{"a", 0}, {"b", 0}};
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "generic-hyp", "Generic hypergeometric class F(-n, (a_r); (b_s); x)", {}, "y = x", mono,
        [](const FamilyInstance& f, int n) {
          std::vector<G> num{G(-n)};
          auto a = f.group("a");
          num.insert(num.end(), a.begin(), a.end());
          SeriesForm s;
          s.hyp = HypSpec{std::move(num), f.group("b"), n};
          return s;
        },
        key_x);
    s.groups = {{"a", 0}, {"b", 0}};
    s.classical = true;
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "generic-hyp-lambda", "Generic hypergeometric class F(-n, n+lambda, (a_r); (b_s); x)", {"lambda"}, "y = x",
        mono,
        [](const FamilyInstance& f, int n) {
          std::vector<G> num{G(-n), G(n) + f.p("lambda")};
          auto a = f.group("a");
          num.insert(num.end(), a.begin(), a.end());
          SeriesForm s;
          s.hyp = HypSpec{std::move(num), f.group("b"), n};
          return s;
        },
        key_x);
    s.groups = {{"a", 0}, {"b", 0}};
    s.classical = true;
    r.push_back(std::move(s));
  }

  {
    FamilySpec s = make_spec(
        "monomial", "Monomials y^n", {}, "any working variable", mono,
        [](const FamilyInstance&, int n) {
          SeriesForm s;
          std::vector<G> d(static_cast<size_t>(n) + 1, G(0));
          d.back() = G(1);
          s.direct = std::move(d);
          return s;
        },
        [](const FamilyInstance&) { return std::string("any"); });
    r.push_back(std::move(s));
  }

  return r;
}

bool parse_group_name(const std::string& name, const std::string& prefix, int& index) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  std::string rest = name.substr(prefix.size());
  if (rest[0] == '0') return false;
  for (char ch : rest)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  if (rest.size() > 3) return false;
  index = std::stoi(rest);
  return true;
}

void validate_bindings(const FamilySpec& spec, const Bindings& bindings) {
  std::map<std::string, int> counts;
  std::map<std::string, std::vector<int>> seen;
  for (const auto& [name, value] : bindings) {
    if (std::find(spec.parameter_names.begin(), spec.parameter_names.end(), name) != spec.parameter_names.end())
      continue;
    if (std::find(spec.optional_names.begin(), spec.optional_names.end(), name) != spec.optional_names.end())
      continue;
    bool matched = false;
    for (const auto& g : spec.groups) {
      int index = 0;
      if (parse_group_name(name, g.prefix, index)) {
        seen[g.prefix].push_back(index);
        matched = true;
        break;
      }
    }
    if (!matched) throw Error(ErrorKind::BindingError, spec.id + ": unknown parameter '" + name + "'");
  }
  for (const auto& name : spec.parameter_names)
    if (!bindings.count(name)) throw Error(ErrorKind::BindingError, spec.id + ": missing parameter '" + name + "'");
  for (const auto& g : spec.groups) {
    auto& idx = seen[g.prefix];
    std::sort(idx.begin(), idx.end());
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx[i] != static_cast<int>(i) + 1)
        throw Error(ErrorKind::BindingError,
                    spec.id + ": parameters " + g.prefix + "1.." + g.prefix + "k must be numbered without gaps");
    if (static_cast<int>(idx.size()) < g.min_count)
      throw Error(ErrorKind::BindingError, spec.id + ": needs at least " + std::to_string(g.min_count) + " '" +
                                               g.prefix + "' parameters");
  }
}

}  // namespace

const std::vector<FamilySpec>& registry() {
  static const std::vector<FamilySpec> specs = build_registry();
  return specs;
}

const FamilySpec& registry_lookup(const std::string& id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw Error(ErrorKind::UnknownFamily, "unknown family id '" + id + "'");
}

FamilyInstance::FamilyInstance(const FamilySpec& spec, Bindings bindings, Context ctx, bool finite_support)
    : spec_(&spec), bindings_(std::move(bindings)), ctx_(std::move(ctx)), finite_support_(finite_support) {
  if (!ctx_) throw Error(ErrorKind::InvalidContext, spec.id + ": missing q context");
  validate_bindings(spec, bindings_);
  for (int k = 2; k <= spec.root_order; k *= 2) {
    auto root = exact_root(ctx_->q(), k);
    if (!root)
      throw Error(ErrorKind::BindingError, spec.id + " needs an exact rational q^{1/" + std::to_string(k) +
                                               "}; q = " + ctx_->q().str() + " has none");
    roots_[k] = *root;
  }
  if (spec.constraints) spec.constraints(*this);
  basis_ = spec.basis_builder(*this);
  if (basis_.kind == BasisKind::PairedProduct && basis_.alpha.is_zero())
    throw Error(ErrorKind::BindingError, spec.id + ": paired-product basis degenerates (alpha = 0)");
}

const GaussScalar& FamilyInstance::p(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw Error(ErrorKind::BindingError, id() + ": parameter '" + name + "' is not bound");
  return it->second;
}

std::vector<GaussScalar> FamilyInstance::group(const std::string& prefix) const {
  std::vector<GaussScalar> out;
  for (int i = 1;; ++i) {
    auto it = bindings_.find(prefix + std::to_string(i));
    if (it == bindings_.end()) break;
    out.push_back(it->second);
  }
  return out;
}

const GaussScalar& FamilyInstance::qroot(int k) const {
  if (k == 1) return ctx_->q();
  auto it = roots_.find(k);
  if (it == roots_.end())
    throw Error(ErrorKind::BindingError, id() + ": q^{1/" + std::to_string(k) + "} is not available");
  return it->second;
}

std::string FamilyInstance::variable_key() const { return spec_->variable_key(*this); }

bool FamilyInstance::same_variable(const FamilyInstance& other) const {
  std::string a = variable_key(), b = other.variable_key();
  return a == "any" || b == "any" || a == b;
}

FamilyInstance make_instance(const std::string& id, const Bindings& bindings, const Context& ctx) {
  const FamilySpec& spec = registry_lookup(id);
  bool finite = false;
  if (bindings.count("qnegN")) finite = is_negative_q_power(bindings.at("qnegN"), *ctx);
  if (id == "q-racah" && bindings.count("alpha"))
    finite = is_negative_q_power(bindings.at("alpha") * ctx->q(), *ctx);
  return FamilyInstance(spec, bindings, ctx, finite);
}

std::vector<GaussScalar> family_basis_coefficients(const FamilyInstance& inst, int n) {
  const FamilySpec& spec = inst.spec();
  if (!spec.expansion_capable)
    throw Error(ErrorKind::NotExpansionCapable, spec.id + " has no expansion in a polynomial basis");
  inst.ctx()->require_degree(n);
  SeriesForm form = spec.phi_builder(inst, n);
  std::vector<GaussScalar> c;
  if (form.direct) {
    c = *form.direct;
  } else {
    c = form.phi ? phi_coefficients(*form.phi) : hyp_coefficients(*form.hyp);
    GaussScalar s = form.prefactor;
    for (auto& v : c) {
      v *= s;
      s *= form.arg_scale;
    }
  }
  c.resize(static_cast<size_t>(n) + 1, GaussScalar(0));
  if (c.back().is_zero())
    throw Error(ErrorKind::DegenerateLeadingCoefficient,
                spec.id + ": leading coefficient of degree " + std::to_string(n) + " vanishes");
  return c;
}

std::vector<std::vector<GaussScalar>> definition_matrix(const FamilyInstance& inst, int n_max) {
  std::vector<std::vector<GaussScalar>> rows;
  for (int n = 0; n <= n_max; ++n) rows.push_back(family_basis_coefficients(inst, n));
  return rows;
}

Polynomial family_polynomial(const FamilyInstance& inst, int n) {
  return to_monomial(Polynomial(inst.basis(), family_basis_coefficients(inst, n)));
}

std::vector<Polynomial> family_polynomials(const FamilyInstance& inst, int n_max) {
  auto elements = basis_elements(inst.basis(), n_max);
  std::vector<Polynomial> out;
  for (int n = 0; n <= n_max; ++n) {
    auto d = family_basis_coefficients(inst, n);
    std::vector<GaussScalar> m(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      const GaussScalar& c = d[static_cast<size_t>(k)];
      if (c.is_zero()) continue;
      const auto& e = elements[static_cast<size_t>(k)].coeffs();
      for (size_t j = 0; j < e.size(); ++j) m[j] += c * e[j];
    }
    out.push_back(Polynomial::monomial(std::move(m), inst.ctx()));
  }
  return out;
}

Polynomial family_basis_element(const FamilyInstance& inst, int n) {
  if (!inst.spec().expansion_capable)
    throw Error(ErrorKind::NotExpansionCapable, inst.id() + " has no polynomial basis");
  return basis_element(inst.basis(), n);
}

void check_nondegenerate(const FamilyInstance& inst, int n_max) {
  for (int n = 0; n <= n_max; ++n)
    if (family_basis_coefficients(inst, n).back().is_zero())
      throw Error(ErrorKind::DegenerateLeadingCoefficient,
                  inst.id() + ": leading coefficient of degree " + std::to_string(n) + " vanishes");
}

GaussScalar continuous_q_hermite_eval(int n, const GaussScalar& z, const QContext& ctx) {
  GaussScalar acc(0);
  for (int k = 0; k <= n; ++k) acc += qbinomial(n, k, ctx) * pow(z, n - 2 * k);
  return acc;
}

}  // namespace qconn
