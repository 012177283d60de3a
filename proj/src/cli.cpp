#include "qconn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "qconn/coeffs.hpp"
#include "qconn/error.hpp"
#include "qconn/literal.hpp"
#include "qconn/oracle.hpp"
#include "qconn/suites.hpp"

namespace qconn {

namespace {

using json = nlohmann::json;

const char* kSchemaVersion = "1";

struct RowOut {
  int n;
  int m;
  std::string value;
  std::string provenance;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

json bindings_json(const Bindings& b) {
  json out = json::object();
  for (const auto& [k, v] : b) out[k] = format_scalar(v);
  return out;
}

json family_json(const FamilyRef& f) { return json{{"id", f.id}, {"params", bindings_json(f.bindings)}}; }

json request_json(const CommandRequest& r) {
  json out{{"verb", verb_name(r.verb)},
           {"format", r.format == OutputFormat::Json ? "json" : "csv"},
           {"as_printed", r.as_printed},
           {"oracle", r.oracle},
           {"seed", r.seed},
           {"max_degree", r.max_degree}};
  if (r.family) out["family"] = family_json(*r.family);
  if (r.from) out["from"] = family_json(*r.from);
  if (r.to) out["to"] = family_json(*r.to);
  if (r.q) out["q"] = *r.q;
  if (r.n) out["n"] = *r.n;
  if (r.n_max) out["n_max"] = *r.n_max;
  if (!r.suite.empty()) out["suite"] = r.suite;
  return out;
}

json report_json(const VerificationReport& r) {
  return json{{"identity_id", r.identity_id},
              {"status", status_name(r.status)},
              {"defect", format_scalar(r.max_defect)},
              {"witness", r.witness}};
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::UsageError, message); }

template <typename T>
const T& need(const std::optional<T>& value, const std::string& flag, const char* verb) {
  if (!value) usage(std::string(verb) + " requires " + flag);
  return *value;
}

void add_rows(std::vector<RowOut>& rows, const CoefficientVector& v) {
  for (size_t m = 0; m < v.values.size(); ++m)
    rows.push_back(RowOut{v.n, static_cast<int>(m), format_scalar(v.values[m]), v.provenance});
}

CoefficientVector inversion_vector(const FamilyInstance& inst, int n, const CommandRequest& r) {
  if (r.oracle) return oracle_inversion(inst, n);
  return closed_form_inversion(inst, n, r.as_printed);
}

CoefficientVector connection_vector(const FamilyInstance& src, const FamilyInstance& tgt, int n,
                                    const CommandRequest& r) {
  if (r.oracle) return oracle_connection(src, tgt, n);
  return closed_form_connection(src, tgt, n, r.as_printed);
}

void check_degree(int n, const char* flag) {
  if (n < 0) usage(std::string(flag) + " must be non-negative");
}

struct Outcome {
  std::vector<RowOut> rows;
  std::vector<VerificationReport> reports;
  std::vector<CorrectionEntry> ledger;
  bool has_rows = false;
  bool has_reports = false;
  bool has_ledger = false;
};

Outcome execute(const CommandRequest& r) {
  Outcome out;
  const char* verb = verb_name(r.verb);
  auto context = [&] { return make_context(parse_scalar(need(r.q, "--q", verb)), r.max_degree); };
  switch (r.verb) {
    case Verb::Invert: {
      const FamilyRef& f = need(r.family, "--family", verb);
      int n = need(r.n, "--n", verb);
      check_degree(n, "--n");
      FamilyInstance inst = make_instance(f.id, f.bindings, context());
      add_rows(out.rows, inversion_vector(inst, n, r));
      out.has_rows = true;
      if (r.as_printed && !r.oracle) {
        out.reports.push_back(check_inversion(inst, n, true));
        out.has_reports = true;
      }
      break;
    }
    case Verb::Connect: {
      const FamilyRef& a = need(r.from, "--from", verb);
      const FamilyRef& b = need(r.to, "--to", verb);
      int n = need(r.n, "--n", verb);
      check_degree(n, "--n");
      Context ctx = context();
      FamilyInstance src = make_instance(a.id, a.bindings, ctx);
      FamilyInstance tgt = make_instance(b.id, b.bindings, ctx);
      add_rows(out.rows, connection_vector(src, tgt, n, r));
      out.has_rows = true;
      if (r.as_printed && !r.oracle) {
        out.reports.push_back(check_connection(src, tgt, n, true));
        out.has_reports = true;
      }
      break;
    }
    case Verb::Table: {
      int n_max = need(r.n_max, "--n-max", verb);
      check_degree(n_max, "--n-max");
      Context ctx = context();
      out.has_rows = true;
      out.has_reports = r.as_printed && !r.oracle;
      if (r.family) {
        if (r.from || r.to) usage("table takes either --family or --from/--to");
        FamilyInstance inst = make_instance(r.family->id, r.family->bindings, ctx);
        for (int n = 0; n <= n_max; ++n) {
          add_rows(out.rows, inversion_vector(inst, n, r));
          if (out.has_reports) out.reports.push_back(check_inversion(inst, n, true));
        }
      } else {
        const FamilyRef& a = need(r.from, "--family or --from", verb);
        const FamilyRef& b = need(r.to, "--to", verb);
        FamilyInstance src = make_instance(a.id, a.bindings, ctx);
        FamilyInstance tgt = make_instance(b.id, b.bindings, ctx);
        for (int n = 0; n <= n_max; ++n) {
          add_rows(out.rows, connection_vector(src, tgt, n, r));
          if (out.has_reports) out.reports.push_back(check_connection(src, tgt, n, true));
        }
      }
      break;
    }
    case Verb::Verify: {
      if (r.suite.empty()) usage("verify requires --suite");
      SuiteOptions o;
      if (r.q) o.q = parse_scalar(*r.q);
      if (r.n_max) {
        check_degree(*r.n_max, "--n-max");
        o.n_max = *r.n_max;
      }
      o.seed = r.seed;
      o.as_printed = r.as_printed;
      o.max_degree = r.max_degree;
      out.reports = run_suite(r.suite, o).reports;
      out.has_reports = true;
      break;
    }
    case Verb::Ledger:
      out.ledger = corrections_ledger();
      out.has_ledger = true;
      break;
  }
  return out;
}

std::string render_json(const CommandRequest& r, const Outcome& o, const std::string& status) {
  json doc{{"schema_version", kSchemaVersion}, {"request", request_json(r)}, {"status", status}};
  if (o.has_rows) {
    json rows = json::array();
    for (const auto& row : o.rows)
      rows.push_back(json{{"n", row.n}, {"m", row.m}, {"value", row.value}, {"provenance", row.provenance}});
    doc["rows"] = rows;
  }
  if (o.has_reports) {
    json reports = json::array();
    int counts[3] = {0, 0, 0};
    for (const auto& rep : o.reports) {
      reports.push_back(report_json(rep));
      ++counts[static_cast<int>(rep.status)];
    }
    doc["reports"] = reports;
    doc["summary"] = json{{"match", counts[0]}, {"mismatch", counts[1]}, {"error", counts[2]}};
  }
  if (o.has_ledger) {
    json entries = json::array();
    for (const auto& e : o.ledger)
      entries.push_back(json{{"location", e.location},
                             {"printed_form", e.printed_form},
                             {"corrected_form", e.corrected_form},
                             {"evidence", e.evidence}});
    doc["ledger"] = entries;
  }
  return doc.dump(2) + "\n";
}

std::string render_csv(const Outcome& o) {
  std::string out;
  if (o.has_rows) {
    out += "n,m,value,provenance\n";
    for (const auto& row : o.rows)
      out += std::to_string(row.n) + "," + std::to_string(row.m) + "," + csv_field(row.value) + "," +
             csv_field(row.provenance) + "\n";
  }
  if (o.has_reports) {
    if (!out.empty()) out += "\n";
    out += "identity_id,status,defect,witness\n";
    for (const auto& rep : o.reports)
      out += csv_field(rep.identity_id) + "," + status_name(rep.status) + "," + csv_field(format_scalar(rep.max_defect)) +
             "," + csv_field(rep.witness) + "\n";
  }
  if (o.has_ledger) {
    out += "location,printed_form,corrected_form,evidence\n";
    for (const auto& e : o.ledger)
      out += csv_field(e.location) + "," + csv_field(e.printed_form) + "," + csv_field(e.corrected_form) + "," +
             csv_field(e.evidence) + "\n";
  }
  return out;
}

CommandResult error_result(const std::optional<CommandRequest>& r, OutputFormat format, const std::string& kind,
                           const std::string& message, int code) {
  CommandResult res;
  res.exit_code = code;
  res.diagnostics = "qconn: " + kind + ": " + message;
  if (format == OutputFormat::Csv) {
    res.output = "error_kind,message\n" + csv_field(kind) + "," + csv_field(message) + "\n";
    return res;
  }
  json doc{{"schema_version", kSchemaVersion}, {"status", "error"}, {"error", json{{"kind", kind}, {"message", message}}}};
  if (r) doc["request"] = request_json(*r);
  res.output = doc.dump(2) + "\n";
  return res;
}

int exit_code_for(ErrorKind kind) {
  return (kind == ErrorKind::UsageError || kind == ErrorKind::ParseError) ? kExitUsage : kExitError;
}

}  // namespace

const char* verb_name(Verb verb) {
  switch (verb) {
    case Verb::Invert: return "invert";
    case Verb::Connect: return "connect";
    case Verb::Verify: return "verify";
    case Verb::Table: return "table";
    case Verb::Ledger: return "ledger";
  }
  return "unknown";
}

Bindings parse_bindings(const std::vector<std::string>& items) {
  Bindings out;
  for (const auto& raw : items)
    for (const auto& item : split(raw, ',')) {
      size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(ErrorKind::BindingError, "binding '" + item + "' is not of the form name=value");
      std::string name = trim(item.substr(0, eq));
      if (out.count(name)) throw Error(ErrorKind::BindingError, "parameter '" + name + "' bound twice");
      try {
        out[name] = parse_scalar(trim(item.substr(eq + 1)));
      } catch (const Error& e) {
        throw Error(ErrorKind::BindingError, "parameter '" + name + "': " + e.what());
      }
    }
  return out;
}

FamilyRef parse_family_ref(const std::string& text) {
  FamilyRef ref;
  size_t colon = text.find(':');
  ref.id = trim(text.substr(0, colon));
  if (ref.id.empty()) throw Error(ErrorKind::UsageError, "missing family id in '" + text + "'");
  if (colon != std::string::npos) ref.bindings = parse_bindings({text.substr(colon + 1)});
  registry_lookup(ref.id);
  return ref;
}

int max_degree_from_env() {
  const char* raw = std::getenv("QPOLY_MAX_DEGREE");
  if (!raw || !*raw) return 16;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096)
    throw Error(ErrorKind::UsageError, std::string("QPOLY_MAX_DEGREE must be an integer in [0, 4096], got '") + raw + "'");
  return static_cast<int>(v);
}

CommandResult run(const CommandRequest& request) {
  try {
    Outcome o = execute(request);
    int mismatches = 0, errors = 0;
    for (const auto& rep : o.reports) {
      if (rep.status == VerifyStatus::Mismatch) ++mismatches;
      if (rep.status == VerifyStatus::Error) ++errors;
    }
    std::string status = errors ? "error" : mismatches ? "mismatch" : "ok";
    CommandResult res;
    res.output = request.format == OutputFormat::Json ? render_json(request, o, status) : render_csv(o);
    if (mismatches || errors) {
      res.exit_code = kExitMismatch;
      res.diagnostics = "qconn: " + std::to_string(mismatches) + " mismatch(es), " + std::to_string(errors) +
                        " error(s) in " + std::to_string(o.reports.size()) + " report(s)";
    }
    return res;
  } catch (const Error& e) {
    return error_result(request, request.format, kind_name(e.kind()), e.what(), exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    return error_result(request, request.format, "InternalError", e.what(), kExitError);
  }
}

CommandResult run_arguments(const std::vector<std::string>& args, int default_max_degree) {
  CLI::App app{"Exact inversion and connection coefficients for basic hypergeometric polynomial families", "qconn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every verb");

  CommandRequest req;
  req.max_degree = default_max_degree;
  std::string family, from, to, format = "json";
  std::vector<std::string> params;
  std::string q;
  int n = -1, n_max = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", req.seed, "Seed for sampled parameters");
    sub->add_flag("--as-printed", req.as_printed, "Use the printed forms and report their disagreement");
  };

  auto* inv = app.add_subcommand("invert", "Inversion coefficients I_m(n) of one family");
  inv->add_option("--family", family, "Family id")->required();
  inv->add_option("--param", params, "Binding name=value (repeatable)");
  inv->add_option("--q", q, "Base q as a rational literal")->required();
  inv->add_option("--n", n, "Degree")->required();
  inv->add_flag("--oracle", req.oracle, "Solve the triangular system instead of using the closed form");
  common(inv);

  auto* con = app.add_subcommand("connect", "Connection coefficients C_m(n) between two families");
  con->add_option("--from", from, "Source family, id:name=value,...")->required();
  con->add_option("--to", to, "Target family, id:name=value,...")->required();
  con->add_option("--q", q, "Base q")->required();
  con->add_option("--n", n, "Degree")->required();
  con->add_flag("--oracle", req.oracle, "Solve the triangular system instead of using the closed form");
  common(con);

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", req.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--q", q, "Override the suite's q grid");
  ver->add_option("--n-max", n_max, "Override the suite's maximum degree");
  common(ver);

  auto* tab = app.add_subcommand("table", "Coefficient grid for 0 <= n <= n_max");
  tab->add_option("--family", family, "Family id (inversion table)");
  tab->add_option("--param", params, "Binding name=value for --family (repeatable)");
  tab->add_option("--from", from, "Source family (connection table)");
  tab->add_option("--to", to, "Target family (connection table)");
  tab->add_option("--q", q, "Base q")->required();
  tab->add_option("--n-max", n_max, "Maximum degree")->required();
  tab->add_flag("--oracle", req.oracle, "Solve the triangular systems instead of using closed forms");
  common(tab);

  auto* led = app.add_subcommand("ledger", "List the corrections ledger");
  common(led);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return CommandResult{app.help(), "", kExitOk};
  } catch (const CLI::CallForAllHelp&) {
    return CommandResult{app.help("", CLI::AppFormatMode::All), "", kExitOk};
  } catch (const CLI::ParseError& e) {
    return error_result(std::nullopt, OutputFormat::Json, "UsageError", e.what(), kExitUsage);
  }

  req.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  try {
    if (inv->parsed()) req.verb = Verb::Invert;
    if (con->parsed()) req.verb = Verb::Connect;
    if (ver->parsed()) req.verb = Verb::Verify;
    if (tab->parsed()) req.verb = Verb::Table;
    if (led->parsed()) req.verb = Verb::Ledger;
    if (!q.empty()) req.q = q;
    if (n >= 0 || (inv->parsed() || con->parsed())) req.n = n;
    if (n_max >= 0 || (tab->parsed())) req.n_max = n_max;
    if (ver->parsed() && n_max < 0 && ver->count("--n-max")) req.n_max = n_max;
    if (!family.empty()) {
      FamilyRef ref = parse_family_ref(family);
      Bindings extra = parse_bindings(params);
      for (auto& [k, v] : extra) {
        if (ref.bindings.count(k)) throw Error(ErrorKind::BindingError, "parameter '" + k + "' bound twice");
        ref.bindings[k] = v;
      }
      req.family = ref;
    } else if (!params.empty()) {
      throw Error(ErrorKind::UsageError, "--param needs --family");
    }
    if (!from.empty()) req.from = parse_family_ref(from);
    if (!to.empty()) req.to = parse_family_ref(to);
  } catch (const Error& e) {
    return error_result(std::nullopt, req.format, kind_name(e.kind()), e.what(), exit_code_for(e.kind()));
  }
  return run(req);
}

}  // namespace qconn
