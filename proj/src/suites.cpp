#include "qconn/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qconn/coeffs.hpp"
#include "qconn/error.hpp"
#include "qconn/sampling.hpp"

namespace qconn {

namespace {

using G = GaussScalar;
using Reports = std::vector<VerificationReport>;
using Rows = std::vector<CoefficientVector>;
using ValuesAt = std::function<std::vector<G>(int)>;

int pick(const SuiteOptions& o, int fallback) { return o.n_max >= 0 ? o.n_max : fallback; }

std::vector<G> q_grid(const SuiteOptions& o, int root_order) {
  if (o.q) return {*o.q};
  if (root_order > 1) return {G(16, 81), G(81, 256)};
  return {G(2, 5), G(3, 7)};
}

std::string describe(const Bindings& b) {
  std::string out;
  for (const auto& [k, v] : b) {
    if (!out.empty()) out += ",";
    out += k + "=" + v.str();
  }
  return out.empty() ? "-" : out;
}

std::string list_str(const std::vector<G>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + "]";
}

VerificationReport failed(const std::string& id, const std::string& witness, const std::exception& e) {
  std::string kind;
  if (auto* err = dynamic_cast<const Error*>(&e)) kind = std::string(kind_name(err->kind())) + ": ";
  return VerificationReport{id, VerifyStatus::Error, G(0), witness + ": " + kind + e.what()};
}

VerificationReport matched(const std::string& id, const std::string& witness) {
  return VerificationReport{id, VerifyStatus::Match, G(0), witness};
}

// Compares actual(n) against expected[n] for every n; the first defect wins.
VerificationReport compare_rows(const std::string& id, const Rows& expected, const ValuesAt& actual,
                                const std::string& witness) {
  for (size_t n = 0; n < expected.size(); ++n) {
    std::string w = witness + " n=" + std::to_string(n);
    try {
      auto r = compare_coefficients(id, expected[n].values, actual(static_cast<int>(n)), w);
      if (!r.ok()) return r;
    } catch (const std::exception& e) {
      return failed(id, w, e);
    }
  }
  return matched(id, witness + " n<=" + std::to_string(static_cast<int>(expected.size()) - 1));
}

// Keeps the first non-Match report of a cell, or one Match summary.
class CellMerger {
 public:
  CellMerger(std::string id, std::string witness) : report_{std::move(id), VerifyStatus::Match, G(0), std::move(witness)} {}
  void add(const VerificationReport& r) {
    ++checks_;
    if (report_.ok() && !r.ok()) report_ = r;
  }
  VerificationReport done() {
    if (report_.ok()) report_.witness += " (" + std::to_string(checks_) + " checks)";
    return report_;
  }

 private:
  VerificationReport report_;
  int checks_ = 0;
};

std::vector<const FamilySpec*> sorted_specs() {
  std::vector<const FamilySpec*> out;
  for (const auto& s : registry()) out.push_back(&s);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->id < b->id; });
  return out;
}

// ---------------------------------------------------------------- hermite

G hermite_rhs(const std::vector<G>& c, const G& z, const QContext& ctx) {
  G acc(0);
  for (size_t m = 0; m < c.size(); ++m)
    acc += c[m] * pow(z, -static_cast<long>(m)) * continuous_q_hermite_eval(static_cast<int>(m), z, ctx);
  return acc;
}

VerificationReport hermite_check(const Context& ctx, int n, bool printed) {
  const std::string id = "Table1:continuous-q-hermite";
  std::string witness = "q=" + ctx->q().str() + " n=" + std::to_string(n);
  try {
    FamilyInstance inst = make_instance("continuous-q-hermite", {}, ctx);
    auto c = closed_form_inversion(inst, n, printed).values;
    auto lhs = [n](const G& z) { return pow(z, -2L * n); };
    auto rhs = [&c, &ctx](const G& z) { return hermite_rhs(c, z, *ctx); };
    auto r = verify_pointwise(id, lhs, rhs, unit_circle_points(2 * n + 1));
    r.witness = witness + " " + r.witness;
    return r;
  } catch (const std::exception& e) {
    return failed(id, witness, e);
  }
}

void hermite_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 5);
  for (const auto& q : q_grid(o, 1)) {
    Context ctx = make_context(q, o.max_degree);
    for (int n = 0; n <= N; ++n) out.push_back(hermite_check(ctx, n, o.as_printed));
  }
}

// ---------------------------------------------------------------- inversion rows

bool has_inversion_closed_form(const FamilySpec& s) {
  return find_inversion_row(s.id) || s.id == "continuous-dual-q-hahn" || s.id == "continuous-q-hahn";
}

std::string inversion_id(const FamilyInstance& inst) {
  if (const InversionRow* row = find_inversion_row(inst.id())) return row->provenance;
  return closed_form_inversion(inst, 0).provenance + ":" + inst.id();
}

FamilyInstance sample_for_inversion(Sampler& s, const std::string& id, const Context& ctx, int N) {
  return sample_instance(s, id, ctx, N, [N](const FamilyInstance& inst) {
    for (int n = 0; n <= N; ++n) {
      closed_form_inversion(inst, n, false);
      closed_form_inversion(inst, n, true);
    }
  });
}

void table1_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 6);
  Sampler sampler(o.seed);
  for (const FamilySpec* spec : sorted_specs()) {
    if (!has_inversion_closed_form(*spec)) continue;
    if (!spec->expansion_capable) {
      for (const auto& q : q_grid(o, 1)) {
        Context ctx = make_context(q, o.max_degree);
        for (int n = 0; n <= std::min(N, 5); ++n) out.push_back(hermite_check(ctx, n, o.as_printed));
      }
      continue;
    }
    for (const auto& q : q_grid(o, spec->root_order)) {
      Context ctx = make_context(q, o.max_degree);
      for (int set = 1; set <= o.parameter_sets; ++set) {
        std::string witness = "q=" + q.str() + " set=" + std::to_string(set);
        std::string id = "Table1:" + spec->id;
        try {
          FamilyInstance inst = sample_for_inversion(sampler, spec->id, ctx, N);
          id = inversion_id(inst);
          witness += " " + describe(inst.bindings());
          Rows oracle = oracle_inversion_rows(inst, N);
          out.push_back(compare_rows(
              id, oracle, [&](int n) { return closed_form_inversion(inst, n, o.as_printed).values; }, witness));
        } catch (const std::exception& e) {
          out.push_back(failed(id, witness, e));
        }
      }
    }
  }
}

// ---------------------------------------------------------------- connection rows

std::pair<FamilyInstance, FamilyInstance> sample_for_row(Sampler& s, const ConnectionRow& row, const Context& ctx,
                                                         int N) {
  return sample_pair(s, row.family, row.family, ctx, N, row.align,
                     [&row, N](const FamilyInstance& a, const FamilyInstance& b) {
                       row.precondition(a, b);
                       for (int n = 0; n <= N; ++n) {
                         closed_form_connection(a, b, n, false);
                         closed_form_connection(a, b, n, true);
                       }
                     });
}

void table2_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 6);
  Sampler sampler(o.seed);
  std::vector<const ConnectionRow*> rows;
  for (const auto& r : connection_rows()) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->family < b->family; });
  for (const ConnectionRow* row : rows) {
    const FamilySpec& spec = registry_lookup(row->family);
    for (const auto& q : q_grid(o, spec.root_order)) {
      Context ctx = make_context(q, o.max_degree);
      for (int set = 1; set <= o.parameter_sets; ++set) {
        std::string witness = "q=" + q.str() + " set=" + std::to_string(set);
        try {
          auto [src, tgt] = sample_for_row(sampler, *row, ctx, N);
          witness += " src{" + describe(src.bindings()) + "} tgt{" + describe(tgt.bindings()) + "}";
          Rows oracle = oracle_connection_rows(src, tgt, N);
          out.push_back(compare_rows(
              row->provenance, oracle,
              [&, &src = src, &tgt = tgt](int n) { return closed_form_connection(src, tgt, n, o.as_printed).values; },
              witness));
        } catch (const std::exception& e) {
          out.push_back(failed(row->provenance, witness, e));
        }
      }
      // Pairs drawn without alignment must be refused by rows that carry a precondition.
      std::string id = row->provenance + ":precondition";
      std::string witness = "q=" + q.str();
      try {
        auto [src, tgt] = sample_pair(sampler, row->family, row->family, ctx, 1);
        bool restricted = false;
        try {
          row->precondition(src, tgt);
        } catch (const Error& e) {
          restricted = e.kind() == ErrorKind::PreconditionViolated;
        }
        if (!restricted) continue;
        witness += " src{" + describe(src.bindings()) + "} tgt{" + describe(tgt.bindings()) + "}";
        try {
          closed_form_connection(src, tgt, 1);
          out.push_back(VerificationReport{id, VerifyStatus::Mismatch, G(0), witness + ": accepted"});
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::PreconditionViolated)
            out.push_back(matched(id, witness + ": rejected"));
          else
            out.push_back(failed(id, witness, e));
        }
      } catch (const std::exception& e) {
        out.push_back(failed(id, witness, e));
      }
    }
  }
}

// ---------------------------------------------------------------- delta

void delta_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 6);
  Sampler sampler(o.seed);
  for (const FamilySpec* spec : sorted_specs()) {
    if (!pair_capable(*spec)) continue;
    G q = q_grid(o, spec->root_order).front();
    Context ctx = make_context(q, o.max_degree);
    for (int set = 1; set <= o.parameter_sets; ++set) {
      std::string id = "delta:" + spec->id;
      std::string witness = "q=" + q.str() + " set=" + std::to_string(set);
      try {
        FamilyInstance inst = sample_instance(sampler, spec->id, ctx, N, [N](const FamilyInstance& f) {
          for (int n = 0; n <= N; ++n) closed_form_connection(f, f, n);
        });
        witness += " " + describe(inst.bindings());
        Rows delta;
        for (int n = 0; n <= N; ++n) delta.push_back(CoefficientVector::delta(n, CoeffKind::Connection, "delta"));
        out.push_back(compare_rows(
            id, delta, [&](int n) { return closed_form_connection(inst, inst, n, o.as_printed).values; }, witness));
      } catch (const std::exception& e) {
        out.push_back(failed(id, witness, e));
      }
    }
  }
}

// ---------------------------------------------------------------- generic basic classes

Bindings basic_bindings(const G& a, const std::vector<G>& num, const std::vector<G>& den, bool with_a) {
  Bindings b;
  if (with_a) b["a"] = a;
  for (size_t i = 0; i < num.size(); ++i) b["a" + std::to_string(i + 1)] = num[i];
  for (size_t i = 0; i < den.size(); ++i) b["b" + std::to_string(i + 1)] = den[i];
  return b;
}

std::vector<G> draw_list(Sampler& s, int count) {
  std::vector<G> out;
  for (int i = 0; i < count; ++i) out.emplace_back(s.rational());
  return out;
}

struct BasicDraw {
  G a;
  std::vector<G> num, den;
};

std::string basic_id(const G& a) { return a.is_zero() ? "generic-q" : "generic-q-a"; }

FamilyInstance sample_basic(Sampler& s, const G& a, int r, int k, const Context& ctx, int N, BasicDraw& out,
                            const Acceptance& extra = {}) {
  return sample_instance(
      s, basic_id(a), ctx, N,
      [&](const FamilyInstance& inst) {
        out = BasicDraw{a, inst.group("a"), inst.group("b")};
        if (extra) extra(inst);
      },
      [&](Sampler& sm) {
        auto num = draw_list(sm, r);
        auto den = draw_list(sm, k);
        return basic_bindings(a, num, den, !a.is_zero());
      });
}

std::string basic_witness(const G& q, const BasicDraw& d) {
  return "q=" + q.str() + " a=" + d.a.str() + " num=" + list_str(d.num) + " den=" + list_str(d.den);
}

struct GridFlags {
  bool inversion = false;
  bool connection = false;
  bool compose = false;
};

void basic_grid(const SuiteOptions& o, const GridFlags& flags, Reports& out) {
  int N_inv = pick(o, 6), N_conn = pick(o, 5);
  int N = std::max(N_inv, N_conn);
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, 1)) {
    Context ctx = make_context(q, o.max_degree);
    for (const G& a : {G(1, 7), G(2, 9), G(0)}) {
      std::vector<G> c_grid = a.is_zero() ? std::vector<G>{G(0)} : std::vector<G>{G(1, 5), G(3, 11)};
      for (int r = 0; r <= 2; ++r)
        for (int k = 0; k <= 2; ++k)
          for (int set = 1; set <= o.parameter_sets; ++set) {
            BasicDraw src_draw;
            std::string inv_id = a.is_zero() ? "Eq2.6" : "Eq2.1";
            std::string witness = "q=" + q.str() + " a=" + a.str() + " r=" + std::to_string(r) +
                                  " s=" + std::to_string(k) + " set=" + std::to_string(set);
            std::optional<FamilyInstance> src;
            try {
              src.emplace(sample_basic(sampler, a, r, k, ctx, N, src_draw, [&](const FamilyInstance& inst) {
                for (int n = 0; n <= N; ++n) invert_basic(a, inst.group("a"), inst.group("b"), n, ctx);
              }));
            } catch (const std::exception& e) {
              out.push_back(failed(inv_id, witness, e));
              continue;
            }
            witness = basic_witness(q, src_draw) + " set=" + std::to_string(set);
            auto invert = [&](int n) { return invert_basic(a, src_draw.num, src_draw.den, n, ctx).values; };

            if (flags.inversion) {
              try {
                Rows oracle = oracle_inversion_rows(*src, N_inv);
                out.push_back(compare_rows(inv_id, oracle, invert, witness));

                // Sum_m I_m(n) P_m must rebuild y^n exactly.
                auto polys = family_polynomials(*src, N_inv);
                VerificationReport rec = matched(inv_id + ":reconstruction", witness);
                for (int n = 0; n <= N_inv && rec.ok(); ++n) {
                  auto I = invert(n);
                  std::vector<std::pair<G, Polynomial>> terms;
                  for (int m = 0; m <= n; ++m) terms.emplace_back(I[static_cast<size_t>(m)], polys[static_cast<size_t>(m)]);
                  Polynomial sum = to_monomial(linear_combination(terms));
                  rec = compare_coefficients(inv_id + ":reconstruction", basis_element(Basis::monomial(), n).coeffs(),
                                             sum.coeffs(), witness + " n=" + std::to_string(n));
                }
                out.push_back(rec);

                if (a.is_zero()) {
                  // The a-class at a = 0 is the a-free class with one extra zero numerator.
                  std::vector<G> padded{G(0)};
                  padded.insert(padded.end(), src_draw.num.begin(), src_draw.num.end());
                  FamilyInstance special = make_instance("generic-q-a", basic_bindings(G(0), src_draw.num, src_draw.den, true), ctx);
                  Rows so = oracle_inversion_rows(special, N_inv);
                  out.push_back(compare_rows(
                      "Eq2.6:a->0", so, [&](int n) { return invert_basic(G(0), padded, src_draw.den, n, ctx).values; },
                      witness));
                }
              } catch (const std::exception& e) {
                out.push_back(failed(inv_id, witness, e));
              }
            }

            if (!flags.connection && !flags.compose) continue;
            CellMerger conn_cell(a.is_zero() ? "Eq2.7" : "Eq2.2", witness);
            CellMerger comp_cell("compose", witness);
            for (const G& c : c_grid)
              for (int l = 0; l <= 2; ++l)
                for (int h = 0; h <= 2; ++h) {
                  std::string tw = witness + " -> c=" + c.str() + " l=" + std::to_string(l) + " h=" + std::to_string(h);
                  BasicDraw tgt_draw;
                  try {
                    FamilyInstance tgt = sample_basic(sampler, c, l, h, ctx, N_conn, tgt_draw, [&](const FamilyInstance& t) {
                      for (int n = 0; n <= N_conn; ++n) {
                        connect_basic(a, src_draw.num, src_draw.den, c, t.group("a"), t.group("b"), n, ctx);
                        invert_basic(c, t.group("a"), t.group("b"), n, ctx);
                      }
                    });
                    tw += " tnum=" + list_str(tgt_draw.num) + " tden=" + list_str(tgt_draw.den);
                    auto connect = [&](int n, bool printed) {
                      return connect_basic(a, src_draw.num, src_draw.den, c, tgt_draw.num, tgt_draw.den, n, ctx, printed)
                          .values;
                    };
                    if (flags.connection) {
                      Rows oracle = oracle_connection_rows(*src, tgt, N_conn);
                      conn_cell.add(compare_rows(
                          a.is_zero() && c.is_zero() ? "Eq2.7" : "Eq2.2", oracle,
                          [&](int n) { return connect(n, o.as_printed); }, tw));
                    }
                    if (flags.compose) {
                      TriangularMatrix D = definition_matrix(*src, N_conn), I;
                      for (int n = 0; n <= N_conn; ++n)
                        I.push_back(invert_basic(c, tgt_draw.num, tgt_draw.den, n, ctx).values);
                      TriangularMatrix C = compose(D, I);
                      Rows composed;
                      for (int n = 0; n <= N_conn; ++n) {
                        CoefficientVector v;
                        v.values = C[static_cast<size_t>(n)];
                        v.n = n;
                        composed.push_back(std::move(v));
                      }
                      comp_cell.add(compare_rows("compose", composed, [&](int n) { return connect(n, false); }, tw));
                    }
                  } catch (const std::exception& e) {
                    if (flags.connection) conn_cell.add(failed(a.is_zero() ? "Eq2.7" : "Eq2.2", tw, e));
                    if (flags.compose) comp_cell.add(failed("compose", tw, e));
                  }
                }
            if (flags.connection) out.push_back(conn_cell.done());
            if (flags.compose) out.push_back(comp_cell.done());
          }
    }
  }
}

// Closed-form connections between different registered families that share a basis.
void cross_family_compose(const SuiteOptions& o, Reports& out) {
  int N = std::min(pick(o, 4), 4);
  Sampler sampler(o.seed + 1);
  G q = o.q ? *o.q : G(16, 81);
  Context ctx = make_context(q, o.max_degree);
  std::vector<FamilyInstance> pool;
  for (const FamilySpec* spec : sorted_specs()) {
    if (!pair_capable(*spec) || spec->classical || spec->id.rfind("generic", 0) == 0 || spec->id == "monomial") continue;
    try {
      pool.push_back(sample_for_inversion(sampler, spec->id, ctx, N));
    } catch (const Error&) {
      // q lacks the root this family needs; the pair check simply skips it.
    }
  }
  for (const auto& src : pool)
    for (const auto& tgt : pool) {
      if (src.id() == tgt.id() || !src.same_variable(tgt) || !src.basis().same_as(tgt.basis())) continue;
      std::string id = "compose:" + src.id() + "->" + tgt.id();
      std::string witness = "q=" + q.str() + " src{" + describe(src.bindings()) + "} tgt{" + describe(tgt.bindings()) + "}";
      try {
        Rows oracle = oracle_connection_rows(src, tgt, N);
        out.push_back(compare_rows(
            id, oracle, [&](int n) { return closed_form_connection(src, tgt, n).values; }, witness));
      } catch (const std::exception& e) {
        out.push_back(failed(id, witness, e));
      }
    }
}

// ---------------------------------------------------------------- classical classes

struct ClassicalDraw {
  std::optional<G> lambda;
  std::vector<G> num, den;
};

FamilyInstance sample_classical(Sampler& s, bool with_lambda, int r, int k, const Context& ctx, int N,
                                ClassicalDraw& out, const Acceptance& extra = {}) {
  std::string id = with_lambda ? "generic-hyp-lambda" : "generic-hyp";
  return sample_instance(
      s, id, ctx, N,
      [&](const FamilyInstance& inst) {
        out = ClassicalDraw{with_lambda ? std::optional<G>(inst.p("lambda")) : std::nullopt, inst.group("a"),
                            inst.group("b")};
        if (extra) extra(inst);
      },
      [&](Sampler& sm) {
        Bindings b = basic_bindings(G(0), draw_list(sm, r), draw_list(sm, k), false);
        if (with_lambda) b["lambda"] = G(sm.rational());
        return b;
      });
}

std::string classical_witness(const ClassicalDraw& d) {
  return "lambda=" + (d.lambda ? d.lambda->str() : std::string("none")) + " num=" + list_str(d.num) +
         " den=" + list_str(d.den);
}

void classical_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 6);
  Sampler sampler(o.seed);
  Context ctx = make_context(G(2, 5), o.max_degree);
  for (bool with_lambda : {false, true})
    for (int r = 0; r <= 2; ++r)
      for (int k = 0; k <= 2; ++k)
        for (int set = 1; set <= o.parameter_sets; ++set) {
          std::string inv_id = with_lambda ? "Eq2.8" : "Eq2.10";
          std::string witness = "r=" + std::to_string(r) + " s=" + std::to_string(k) + " set=" + std::to_string(set);
          ClassicalDraw sd;
          std::optional<FamilyInstance> src;
          try {
            src.emplace(sample_classical(sampler, with_lambda, r, k, ctx, N, sd, [&](const FamilyInstance& f) {
              for (int n = 0; n <= N; ++n)
                invert_classical(with_lambda ? std::optional<G>(f.p("lambda")) : std::nullopt, f.group("a"),
                                 f.group("b"), n);
            }));
            witness += " " + classical_witness(sd);
            Rows oracle = oracle_inversion_rows(*src, N);
            out.push_back(compare_rows(
                inv_id, oracle, [&](int n) { return invert_classical(sd.lambda, sd.num, sd.den, n).values; }, witness));
          } catch (const std::exception& e) {
            out.push_back(failed(inv_id, witness, e));
            continue;
          }
          CellMerger cell(with_lambda ? "Eq2.9" : "Eq2.11", witness);
          for (bool with_mu : {false, true})
            for (int l = 0; l <= 2; ++l)
              for (int h = 0; h <= 2; ++h) {
                std::string id = (with_lambda || with_mu) ? "Eq2.9" : "Eq2.11";
                std::string tw = witness + " -> l=" + std::to_string(l) + " h=" + std::to_string(h);
                ClassicalDraw td;
                try {
                  FamilyInstance tgt = sample_classical(sampler, with_mu, l, h, ctx, N, td, [&](const FamilyInstance& f) {
                    auto mu = with_mu ? std::optional<G>(f.p("lambda")) : std::nullopt;
                    for (int n = 0; n <= N; ++n)
                      connect_classical(sd.lambda, sd.num, sd.den, mu, f.group("a"), f.group("b"), n);
                  });
                  tw += " mu=" + (td.lambda ? td.lambda->str() : std::string("none")) + " tnum=" + list_str(td.num) +
                        " tden=" + list_str(td.den);
                  Rows oracle = oracle_connection_rows(*src, tgt, N);
                  cell.add(compare_rows(
                      id, oracle,
                      [&](int n) { return connect_classical(sd.lambda, sd.num, sd.den, td.lambda, td.num, td.den, n).values; },
                      tw));
                } catch (const std::exception& e) {
                  cell.add(failed(id, tw, e));
                }
              }
          out.push_back(cell.done());
        }
}

// ---------------------------------------------------------------- lemma

void lemma_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 10);
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, 1)) {
    Context ctx = make_context(q, std::max(o.max_degree, N));
    for (const G& a : {G(1, 7), G(2, 9)})
      for (int r = 0; r <= 2; ++r)
        for (int k = 0; k <= 2; ++k)
          for (int set = 1; set <= o.parameter_sets; ++set) {
            std::string witness = "q=" + q.str() + " a=" + a.str() + " r=" + std::to_string(r) + " s=" +
                                  std::to_string(k) + " set=" + std::to_string(set);
            BasicDraw d;
            try {
              FamilyInstance inst = sample_basic(sampler, a, r, k, ctx, N, d, [&](const FamilyInstance& f) {
                for (int n = 0; n <= N; ++n) {
                  invert_basic(a, f.group("a"), f.group("b"), n, ctx);
                  for (int m = 0; m <= n; ++m) {
                    lemma_b(a, f.group("a"), f.group("b"), n, m, *ctx, true);
                    lemma_A(a, f.group("a"), f.group("b"), n, m, *ctx, true);
                  }
                }
              });
              witness = basic_witness(q, d) + " set=" + std::to_string(set);
              MonicTable A = monic_table(inst, N);

              Rows expected;
              for (int n = 0; n <= N; ++n) expected.push_back(invert_basic(a, d.num, d.den, n, ctx));
              out.push_back(compare_rows(
                  "lemma2.2", expected, [&](int n) { return recursive_inversion(inst, n).values; }, witness));

              Rows recursion;
              for (int n = 0; n <= N; ++n) {
                auto v = recursive_invert(A, n);
                std::reverse(v.values.begin(), v.values.end());  // index by m: b_m(n,0)
                recursion.push_back(v);
              }
              out.push_back(compare_rows(
                  "lemma2.2:b", recursion,
                  [&](int n) {
                    std::vector<G> b;
                    for (int m = 0; m <= n; ++m) b.push_back(lemma_b(a, d.num, d.den, n, m, *ctx, o.as_printed));
                    return b;
                  },
                  witness));

              Rows table;
              for (int n = 0; n <= N; ++n) {
                CoefficientVector v;
                v.values = A[static_cast<size_t>(n)];
                v.n = n;
                table.push_back(v);
              }
              out.push_back(compare_rows(
                  "lemma2.2:A", table,
                  [&](int n) {
                    std::vector<G> row;
                    for (int k2 = 0; k2 <= n; ++k2) row.push_back(lemma_A(a, d.num, d.den, n, k2, *ctx, o.as_printed));
                    return row;
                  },
                  witness));
            } catch (const std::exception& e) {
              out.push_back(failed("lemma2.2", witness, e));
            }
          }
  }
}

// ---------------------------------------------------------------- self-inverse

void selfinverse_suite(const SuiteOptions& o, Reports& out) {
  int N = pick(o, 8);
  Sampler sampler(o.seed);
  const int sizes[] = {0, 1, 2, 1, 2};
  for (int set = 0; set < 5; ++set) {
    int r = sizes[set];
    std::string witness = "r=s=" + std::to_string(r) + " set=" + std::to_string(set + 1);
    try {
      std::optional<bool> result;
      std::string last;
      std::vector<G> num, den;
      for (int attempt = 0; attempt < Sampler::kRetryCap && !result; ++attempt) {
        num = draw_list(sampler, r);
        den = draw_list(sampler, r);
        try {
          result = self_inverse_check(num, den, N);
        } catch (const Error& e) {
          if (!is_degenerate_draw(e.kind())) throw;
          last = e.what();
        }
      }
      if (!result) throw Error(ErrorKind::SamplingExhausted, "no admissible parameters: " + last);
      witness += " num=" + list_str(num) + " den=" + list_str(den) + " n_max=" + std::to_string(N);
      out.push_back(VerificationReport{"selfinverse", *result ? VerifyStatus::Match : VerifyStatus::Mismatch, G(0),
                                       witness});
    } catch (const std::exception& e) {
      out.push_back(failed("selfinverse", witness, e));
    }
  }
}

// ---------------------------------------------------------------- q -> 1

std::vector<G> q_powers(const G& q, const std::vector<long>& exps) {
  std::vector<G> out;
  for (long e : exps) out.push_back(pow(q, e));
  return out;
}

std::vector<G> integers(const std::vector<long>& v) {
  std::vector<G> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::string exps_str(const std::vector<long>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

void limits_suite(const SuiteOptions& o, Reports& out) {
  int N = std::min(pick(o, 4), 4);
  struct Case {
    std::vector<long> a, b, c, d;
  };
  const std::vector<Case> cases = {
      {{2}, {3}, {1}, {4}},
      {{}, {}, {2}, {4}},
      {{1, 3}, {2, 4}, {2}, {3}},
      {{4}, {2}, {1, 2}, {3, 4}},
  };
  for (const auto& c : cases) {
    std::string witness = "num=q^" + exps_str(c.a) + " den=q^" + exps_str(c.b) + " tnum=q^" + exps_str(c.c) +
                          " tden=q^" + exps_str(c.d) + " n<=" + std::to_string(N);
    try {
      auto samples = limit_samples(c.a, c.b, c.c, c.d, N);
      double lo = 1e300, hi = -1e300;
      int exact = 0;
      VerificationReport r = matched("limits", witness);
      for (const auto& s : samples) {
        // Coefficients that already agree exactly at both q carry no rate information.
        if (s.error_coarse == 0 && s.error_fine == 0) {
          ++exact;
          continue;
        }
        double ratio = s.ratio();
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        if (!(ratio >= 5 && ratio <= 20) && r.ok()) {
          r.status = VerifyStatus::Mismatch;
          r.witness = witness + " n=" + std::to_string(s.n) + " m=" + std::to_string(s.m) +
                      " ratio=" + std::to_string(ratio);
        }
      }
      if (r.ok())
        r.witness += " ratios in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], " + std::to_string(exact) +
                     " coefficients exact at both q";
      out.push_back(r);
    } catch (const std::exception& e) {
      out.push_back(failed("limits", witness, e));
    }
  }
}

// ---------------------------------------------------------------- ledger

// Runs one inversion or connection row over the default parameter grid.
// Returns {printed form failed somewhere, shipped form failed somewhere, last error}.
struct RowOutcome {
  bool printed_failed = false;
  bool shipped_failed = false;
  std::string detail;
};

RowOutcome inversion_outcome(const InversionRow& row, const SuiteOptions& o) {
  RowOutcome res;
  int N = 6;
  const FamilySpec& spec = registry_lookup(row.family);
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, spec.root_order)) {
    Context ctx = make_context(q, o.max_degree);
    if (!spec.expansion_capable) {
      for (int n = 0; n <= 5; ++n) {
        if (!hermite_check(ctx, n, true).ok()) res.printed_failed = true;
        auto shipped = hermite_check(ctx, n, false);
        if (!shipped.ok()) {
          res.shipped_failed = true;
          res.detail = shipped.witness;
        }
      }
      continue;
    }
    for (int set = 1; set <= o.parameter_sets; ++set) {
      FamilyInstance inst = sample_for_inversion(sampler, row.family, ctx, N);
      Rows oracle = oracle_inversion_rows(inst, N);
      std::string w = "q=" + q.str() + " " + describe(inst.bindings());
      if (!compare_rows(row.provenance, oracle, [&](int n) { return closed_form_inversion(inst, n, true).values; }, w).ok())
        res.printed_failed = true;
      auto shipped = compare_rows(row.provenance, oracle,
                                  [&](int n) { return closed_form_inversion(inst, n, false).values; }, w);
      if (!shipped.ok()) {
        res.shipped_failed = true;
        res.detail = shipped.witness;
      }
    }
  }
  return res;
}

RowOutcome connection_outcome(const ConnectionRow& row, const SuiteOptions& o) {
  RowOutcome res;
  int N = 6;
  const FamilySpec& spec = registry_lookup(row.family);
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, spec.root_order)) {
    Context ctx = make_context(q, o.max_degree);
    for (int set = 1; set <= o.parameter_sets; ++set) {
      auto [src, tgt] = sample_for_row(sampler, row, ctx, N);
      Rows oracle = oracle_connection_rows(src, tgt, N);
      std::string w = "q=" + q.str() + " src{" + describe(src.bindings()) + "} tgt{" + describe(tgt.bindings()) + "}";
      if (!compare_rows(row.provenance, oracle,
                        [&, &src = src, &tgt = tgt](int n) { return closed_form_connection(src, tgt, n, true).values; }, w)
               .ok())
        res.printed_failed = true;
      auto shipped = compare_rows(
          row.provenance, oracle,
          [&, &src = src, &tgt = tgt](int n) { return closed_form_connection(src, tgt, n, false).values; }, w);
      if (!shipped.ok()) {
        res.shipped_failed = true;
        res.detail = shipped.witness;
      }
    }
  }
  return res;
}

RowOutcome connect_exponent_outcome(const SuiteOptions& o) {
  RowOutcome res;
  int N = 5;
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, 1)) {
    Context ctx = make_context(q, o.max_degree);
    for (int r = 0; r <= 2; ++r)
      for (int l = 0; l <= 2; ++l) {
        BasicDraw sd, td;
        FamilyInstance src = sample_basic(sampler, G(0), r, 1, ctx, N, sd);
        FamilyInstance tgt = sample_basic(sampler, G(0), l, 2, ctx, N, td, [&](const FamilyInstance& t) {
          for (int n = 0; n <= N; ++n) connect_basic(G(0), sd.num, sd.den, G(0), t.group("a"), t.group("b"), n, ctx);
        });
        Rows oracle = oracle_connection_rows(src, tgt, N);
        for (bool printed : {true, false}) {
          auto rep = compare_rows(
              "Eq2.7", oracle,
              [&](int n) { return connect_basic(G(0), sd.num, sd.den, G(0), td.num, td.den, n, ctx, printed).values; },
              basic_witness(q, sd));
          if (!rep.ok()) (printed ? res.printed_failed : res.shipped_failed) = true;
          if (!rep.ok() && !printed) res.detail = rep.witness;
        }
      }
  }
  return res;
}

RowOutcome lemma_outcome(const SuiteOptions& o, bool closed_b) {
  RowOutcome res;
  int N = 8;
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, 1)) {
    Context ctx = make_context(q, o.max_degree);
    for (int r = 0; r <= 2; ++r) {
      BasicDraw d;
      FamilyInstance inst = sample_basic(sampler, G(1, 7), r, 1, ctx, N, d);
      MonicTable A = monic_table(inst, N);
      for (int n = 0; n <= N; ++n) {
        auto b = recursive_invert(A, n).values;
        for (int m = 0; m <= n; ++m) {
          G expected = closed_b ? b[static_cast<size_t>(n - m)] : A[static_cast<size_t>(n)][static_cast<size_t>(m)];
          auto f = closed_b ? lemma_b : lemma_A;
          if (!(f(d.a, d.num, d.den, n, m, *ctx, true) == expected)) res.printed_failed = true;
          if (!(f(d.a, d.num, d.den, n, m, *ctx, false) == expected)) {
            res.shipped_failed = true;
            res.detail = basic_witness(q, d) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
          }
        }
      }
    }
  }
  return res;
}

// The Eq4.2 row read against Askey-Wilson polynomials normalized by (ab, ac, dq;q)_n
// instead of (ab, ac, ad;q)_n. Rescaling P_m by r_m divides its coefficient by r_m.
RowOutcome askey_wilson_normalization_outcome(const SuiteOptions& o) {
  RowOutcome res;
  int N = 6;
  Sampler sampler(o.seed);
  for (const auto& q : q_grid(o, 1)) {
    Context ctx = make_context(q, o.max_degree);
    for (int set = 1; set <= o.parameter_sets; ++set) {
      FamilyInstance inst = sample_instance(sampler, "askey-wilson", ctx, N, [&](const FamilyInstance& f) {
        for (int m = 0; m <= N; ++m)
          if (qpochhammer(f.p("d") * q, q, m).is_zero()) throw Error(ErrorKind::VanishingFactor, "(dq;q)_m");
        for (int n = 0; n <= N; ++n) closed_form_inversion(f, n);
      });
      Rows oracle = oracle_inversion_rows(inst, N), printed = oracle;
      const G& d = inst.p("d");
      const G& a = inst.p("a");
      for (auto& row : printed)
        for (int m = 0; m <= row.n; ++m)
          row.values[static_cast<size_t>(m)] *= qpochhammer(a * d, q, m) / qpochhammer(d * q, q, m);
      auto shipped = [&](int n) { return closed_form_inversion(inst, n).values; };
      std::string w = "q=" + q.str() + " " + describe(inst.bindings());
      if (!compare_rows("Eq4.1", printed, shipped, w).ok()) res.printed_failed = true;
      auto r = compare_rows("Eq4.1", oracle, shipped, w);
      if (!r.ok()) {
        res.shipped_failed = true;
        res.detail = r.witness;
      }
    }
  }
  return res;
}

void ledger_suite(const SuiteOptions& o, Reports& out) {
  for (const auto& entry : corrections_ledger()) {
    std::string id = "ledger:" + entry.location;
    try {
      RowOutcome res;
      const InversionRow* inv = nullptr;
      for (const auto& r : inversion_rows())
        if (r.provenance == entry.location) inv = &r;
      const ConnectionRow* conn = nullptr;
      for (const auto& r : connection_rows())
        if (r.provenance == entry.location) conn = &r;
      if (inv)
        res = inversion_outcome(*inv, o);
      else if (conn)
        res = connection_outcome(*conn, o);
      else if (entry.location == "Eq4.1")
        res = askey_wilson_normalization_outcome(o);
      else if (entry.location == "Eq2.7")
        res = connect_exponent_outcome(o);
      else if (entry.location == "lemma2.2:b" || entry.location == "lemma2.2:A")
        res = lemma_outcome(o, entry.location == "lemma2.2:b");
      else
        throw Error(ErrorKind::UnknownRow, "ledger entry without a checker: " + entry.location);
      VerificationReport r = matched(id, "printed form fails the oracle; corrected form matches");
      if (res.shipped_failed) {
        r.status = VerifyStatus::Mismatch;
        r.witness = "corrected form fails: " + res.detail;
      } else if (!res.printed_failed) {
        r.status = VerifyStatus::Mismatch;
        r.witness = "printed form agrees with the oracle on every sample";
      }
      out.push_back(r);
    } catch (const std::exception& e) {
      out.push_back(failed(id, entry.location, e));
    }
  }
  // Every row whose printed form fails must be covered by a ledger entry.
  for (const auto& row : inversion_rows()) {
    if (row.corrected) continue;
    std::string id = "ledger:" + row.provenance;
    try {
      RowOutcome res = inversion_outcome(row, o);
      if (res.printed_failed)
        out.push_back(VerificationReport{id, VerifyStatus::Mismatch, G(0), "printed form fails and no correction ships"});
    } catch (const std::exception& e) {
      out.push_back(failed(id, row.family, e));
    }
  }
  for (const auto& row : connection_rows()) {
    if (row.corrected) continue;
    std::string id = "ledger:" + row.provenance;
    try {
      RowOutcome res = connection_outcome(row, o);
      if (res.printed_failed)
        out.push_back(VerificationReport{id, VerifyStatus::Mismatch, G(0), "printed form fails and no correction ships"});
    } catch (const std::exception& e) {
      out.push_back(failed(id, row.family, e));
    }
  }
}

using SuiteFn = std::function<void(const SuiteOptions&, Reports&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"table1", table1_suite},
      {"table2", table2_suite},
      {"theorem21", [](const SuiteOptions& o, Reports& r) { basic_grid(o, {true, true, false}, r); }},
      {"classical", classical_suite},
      {"lemma22", lemma_suite},
      {"compose",
       [](const SuiteOptions& o, Reports& r) {
         basic_grid(o, {false, false, true}, r);
         cross_family_compose(o, r);
       }},
      {"delta", delta_suite},
      {"selfinverse", selfinverse_suite},
      {"limits", limits_suite},
      {"hermite", hermite_suite},
      {"ledger", ledger_suite},
  };
  return table;
}

}  // namespace

bool SuiteResult::ok() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
}

int SuiteResult::count(VerifyStatus status) const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(), [status](const auto& r) { return r.status == status; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    out.push_back("all");
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (options.parameter_sets < 1) throw Error(ErrorKind::UsageError, "parameter_sets must be positive");
  if (options.n_max > options.max_degree)
    throw Error(ErrorKind::DegreeExceeded, "n_max " + std::to_string(options.n_max) + " exceeds the degree cap " +
                                               std::to_string(options.max_degree));
  SuiteResult result{name, {}};
  for (const auto& [suite, fn] : suite_table())
    if (name == "all" || name == suite) {
      fn(options, result.reports);
      if (name != "all") return result;
    }
  if (name != "all") throw Error(ErrorKind::UsageError, "unknown suite '" + name + "'");
  return result;
}

VerificationReport check_inversion(const FamilyInstance& inst, int n, bool as_printed) {
  if (inst.id() == "continuous-q-hermite") return hermite_check(inst.ctx(), n, as_printed);
  std::string witness = inst.id() + " " + describe(inst.bindings()) + " q=" + inst.q().str();
  std::string id = inst.id();
  try {
    auto closed = closed_form_inversion(inst, n, as_printed);
    id = closed.provenance;
    return compare_coefficients(id, oracle_inversion(inst, n).values, closed.values, witness + " n=" + std::to_string(n));
  } catch (const std::exception& e) {
    return failed(id, witness, e);
  }
}

VerificationReport check_connection(const FamilyInstance& src, const FamilyInstance& tgt, int n, bool as_printed) {
  std::string witness = "src{" + describe(src.bindings()) + "} tgt{" + describe(tgt.bindings()) + "} q=" + src.q().str();
  std::string id = src.id() + "->" + tgt.id();
  try {
    auto closed = closed_form_connection(src, tgt, n, as_printed);
    id = closed.provenance;
    return compare_coefficients(id, oracle_connection(src, tgt, n).values, closed.values,
                                witness + " n=" + std::to_string(n));
  } catch (const std::exception& e) {
    return failed(id, witness, e);
  }
}

std::vector<LimitSample> limit_samples(const std::vector<long>& num_exp, const std::vector<long>& den_exp,
                                       const std::vector<long>& tgt_num_exp, const std::vector<long>& tgt_den_exp,
                                       int n_max) {
  if (num_exp.size() != den_exp.size() || tgt_num_exp.size() != tgt_den_exp.size())
    throw Error(ErrorKind::UsageError, "the q -> 1 comparison needs r = s on both sides");
  const G coarse(999, 1000), fine(9999, 10000);
  Context cc = make_context(coarse, std::max(16, n_max)), fc = make_context(fine, std::max(16, n_max));
  std::vector<LimitSample> out;
  for (int n = 0; n <= n_max; ++n) {
    auto classical = connect_classical(std::nullopt, integers(num_exp), integers(den_exp), std::nullopt,
                                       integers(tgt_num_exp), integers(tgt_den_exp), n)
                         .values;
    auto at = [&](const G& q, const Context& ctx) {
      return connect_basic(G(0), q_powers(q, num_exp), q_powers(q, den_exp), G(0), q_powers(q, tgt_num_exp),
                           q_powers(q, tgt_den_exp), n, ctx)
          .values;
    };
    auto vc = at(coarse, cc), vf = at(fine, fc);
    for (int m = 0; m <= n; ++m) {
      const G& exact = classical[static_cast<size_t>(m)];
      if (exact.is_zero()) continue;
      LimitSample s;
      s.n = n;
      s.m = m;
      s.classical = exact.re().get_d();
      s.error_coarse = std::abs(Rational(vc[static_cast<size_t>(m)].re() - exact.re()).get_d());
      s.error_fine = std::abs(Rational(vf[static_cast<size_t>(m)].re() - exact.re()).get_d());
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace qconn
