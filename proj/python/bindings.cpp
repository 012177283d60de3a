#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qconn/cli.hpp"
#include "qconn/coeffs.hpp"
#include "qconn/error.hpp"
#include "qconn/literal.hpp"
#include "qconn/suites.hpp"

namespace py = pybind11;
using namespace qconn;

namespace {

Bindings to_bindings(const std::map<std::string, std::string>& params) {
  Bindings b;
  for (const auto& [name, text] : params) b[name] = parse_scalar(text);
  return b;
}

// (m, value, provenance) triples for one degree.
std::vector<std::tuple<int, std::string, std::string>> rows_of(const CoefficientVector& v) {
  std::vector<std::tuple<int, std::string, std::string>> out;
  for (size_t m = 0; m < v.values.size(); ++m)
    out.emplace_back(static_cast<int>(m), format_scalar(v.values[m]), v.provenance);
  return out;
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["identity_id"] = r.identity_id;
  d["status"] = status_name(r.status);
  d["max_defect"] = format_scalar(r.max_defect);
  d["witness"] = r.witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qconn, m) {
  m.doc() = "Exact inversion and connection coefficients for basic hypergeometric polynomial families";

  static py::exception<Error> error_type(m, "QconnError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(kind_name(e.kind()), e.what());
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  m.def("parse_scalar", [](const std::string& text) {
    GaussScalar v = parse_scalar(text);
    return std::make_tuple(v.re().get_str(), v.im().get_str());
  }, py::arg("text"), "Parse a rational or Gaussian-rational literal into (re, im) strings.");

  m.def("format_scalar", [](const std::string& text) { return format_scalar(parse_scalar(text)); },
        py::arg("text"), "Canonical form of a scalar literal.");

  m.def("families", [] {
    std::vector<std::string> ids;
    for (const auto& s : registry()) ids.push_back(s.id);
    return ids;
  });

  m.def(
      "invert",
      [](const std::string& family, const std::map<std::string, std::string>& params, const std::string& q, int n,
         bool oracle, int max_degree) {
        Context ctx = make_context(parse_scalar(q), max_degree);
        FamilyInstance inst = make_instance(family, to_bindings(params), ctx);
        return rows_of(oracle ? oracle_inversion(inst, n) : closed_form_inversion(inst, n));
      },
      py::arg("family"), py::arg("params"), py::arg("q"), py::arg("n"), py::arg("oracle") = false,
      py::arg("max_degree") = 16);

  m.def(
      "connect",
      [](const std::string& src, const std::map<std::string, std::string>& src_params, const std::string& tgt,
         const std::map<std::string, std::string>& tgt_params, const std::string& q, int n, bool oracle,
         int max_degree) {
        Context ctx = make_context(parse_scalar(q), max_degree);
        FamilyInstance a = make_instance(src, to_bindings(src_params), ctx);
        FamilyInstance b = make_instance(tgt, to_bindings(tgt_params), ctx);
        return rows_of(oracle ? oracle_connection(a, b, n) : closed_form_connection(a, b, n));
      },
      py::arg("src"), py::arg("src_params"), py::arg("tgt"), py::arg("tgt_params"), py::arg("q"), py::arg("n"),
      py::arg("oracle") = false, py::arg("max_degree") = 16);

  m.def(
      "verify",
      [](const std::string& suite, std::optional<std::string> q, int n_max, std::uint64_t seed, bool as_printed) {
        SuiteOptions o;
        if (q) o.q = parse_scalar(*q);
        o.n_max = n_max;
        o.seed = seed;
        o.as_printed = as_printed;
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(suite, o);
        }
        py::list reports;
        for (const auto& rep : r.reports) reports.append(report_dict(rep));
        return reports;
      },
      py::arg("suite"), py::arg("q") = std::nullopt, py::arg("n_max") = -1, py::arg("seed") = 1,
      py::arg("as_printed") = false);

  m.def("suite_names", &suite_names);

  m.def("ledger", [] {
    py::list out;
    for (const auto& e : corrections_ledger()) {
      py::dict d;
      d["location"] = e.location;
      d["printed_form"] = e.printed_form;
      d["corrected_form"] = e.corrected_form;
      d["evidence"] = e.evidence;
      out.append(d);
    }
    return out;
  });

  m.def(
      "run_arguments",
      [](const std::vector<std::string>& args, int max_degree) {
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_arguments(args, max_degree);
        }
        return std::make_tuple(r.exit_code, r.output, r.diagnostics);
      },
      py::arg("args"), py::arg("max_degree") = 16, "Run a CLI command line; returns (exit_code, stdout, diagnostics).");
}
