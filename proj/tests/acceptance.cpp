// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qconn/coeffs.hpp"
#include "qconn/error.hpp"
#include "qconn/suites.hpp"

using namespace qconn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Filter = std::function<bool(const std::string&)>;

Outcome summarize(const std::vector<VerificationReport>& reports, const Filter& keep) {
  int total = 0, bad = 0;
  std::string first;
  for (const auto& r : reports) {
    if (!keep(r.identity_id)) continue;
    ++total;
    if (!r.ok()) {
      ++bad;
      if (first.empty()) first = r.identity_id + " " + status_name(r.status) + " " + r.witness;
    }
  }
  Outcome o;
  o.pass = total > 0 && bad == 0;
  o.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " match";
  if (!first.empty()) o.detail += "; first failure: " + first;
  if (total == 0) o.detail = "no reports selected";
  return o;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

bool is_one_of(const std::string& id, std::initializer_list<const char*> ids) {
  for (const char* x : ids)
    if (id == x) return true;
  return false;
}

std::vector<VerificationReport> run_all(std::initializer_list<const char*> names, const SuiteOptions& opts) {
  std::vector<VerificationReport> out;
  for (const char* name : names) {
    auto r = run_suite(name, opts);
    out.insert(out.end(), r.reports.begin(), r.reports.end());
  }
  return out;
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0 for no runtime bound
  std::function<Outcome()> check;
};

// The theorem suite covers criteria 1-3 in one pass; its reports are cached.
std::vector<VerificationReport>& theorem_reports(double& seconds) {
  static std::vector<VerificationReport> reports;
  static double elapsed = 0;
  static bool done = false;
  if (!done) {
    auto t0 = std::chrono::steady_clock::now();
    reports = run_suite("theorem21", SuiteOptions{}).reports;
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    done = true;
  }
  seconds = elapsed;
  return reports;
}

Outcome racah_rejection() {
  Context ctx = make_context(GaussScalar(2, 5));
  auto qr = [&](GaussScalar ga, GaussScalar de) {
    return make_instance("q-racah",
                         {{"alpha", GaussScalar(1, 2)}, {"beta", GaussScalar(1, 7)}, {"gamma", ga}, {"delta", de}},
                         ctx);
  };
  FamilyInstance src = qr(GaussScalar(3, 5), GaussScalar(2, 3));
  FamilyInstance tgt = qr(GaussScalar(2, 9), GaussScalar(1, 5));
  try {
    closed_form_connection(src, tgt, 3);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PreconditionViolated) return {true, "gamma*delta != c*d rejected"};
    return {false, std::string("wrong error kind ") + kind_name(e.kind())};
  }
  return {false, "gamma*delta != c*d accepted"};
}

}  // namespace

int main() {
  SuiteOptions defaults;
  std::vector<Criterion> criteria = {
      {1, "inversion theorem: closed form = oracle, reconstruction exact", 30,
       [] {
         double s;
         auto& r = theorem_reports(s);
         return summarize(r, [](const std::string& id) { return is_one_of(id, {"Eq2.1", "Eq2.1:reconstruction"}); });
       }},
      {2, "connection theorem: closed form = oracle", 60,
       [] {
         double s;
         return summarize(theorem_reports(s), [](const std::string& id) { return id == "Eq2.2"; });
       }},
      {3, "a = c = 0 branch: oracle and a -> 0 specialization", 0,
       [] {
         double s;
         return summarize(theorem_reports(s), [](const std::string& id) { return starts_with(id, "Eq2.6") || id == "Eq2.7"; });
       }},
      {4, "classical inversion and connection = hypergeometric oracle", 0,
       [&] { return summarize(run_suite("classical", defaults).reports, [](const std::string&) { return true; }); }},
      {5, "recursive inversion = closed form and b_m(n,0), n <= 10", 0,
       [&] {
         SuiteOptions o = defaults;
         o.n_max = 10;
         return summarize(run_suite("lemma22", o).reports, [](const std::string&) { return true; });
       }},
      {6, "composition of definition and inversion = connection", 0,
       [&] { return summarize(run_suite("compose", defaults).reports, [](const std::string&) { return true; }); }},
      {7, "registry rows = oracle, printed failures covered by the ledger", 300,
       [&] {
         return summarize(run_all({"table1", "table2", "ledger"}, defaults), [](const std::string&) { return true; });
       }},
      {8, "self connection is the Kronecker delta", 0,
       [&] { return summarize(run_suite("delta", defaults).reports, [](const std::string&) { return true; }); }},
      {9, "self-inverse hypergeometric matrices", 0,
       [&] { return summarize(run_suite("selfinverse", defaults).reports, [](const std::string&) { return true; }); }},
      {10, "q -> 1 limit error ratios in [5, 20]", 0,
       [&] { return summarize(run_suite("limits", defaults).reports, [](const std::string&) { return true; }); }},
      {11, "continuous q-Hermite pointwise on the unit circle", 0,
       [&] { return summarize(run_suite("hermite", defaults).reports, [](const std::string&) { return true; }); }},
      {12, "Askey-Wilson and q-Racah rows, n <= 5, with gamma*delta = c*d enforced", 0,
       [&] {
         SuiteOptions o = defaults;
         o.n_max = 5;
         Outcome rows = summarize(run_all({"table1", "table2"}, o), [](const std::string& id) {
           return is_one_of(id, {"Eq4.2", "Eq4.3", "Eq4.5", "Eq4.6", "Eq4.3:precondition", "Eq4.6:precondition"});
         });
         Outcome rej = racah_rejection();
         return Outcome{rows.pass && rej.pass, rows.detail + "; " + rej.detail};
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.number <= 3) theorem_reports(secs);  // the shared run's duration
    bool in_time = c.limit_seconds <= 0 || secs <= c.limit_seconds;
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%s; %.2fs", pass ? "PASS" : "FAIL", c.number, c.title.c_str(), o.detail.c_str(),
                secs);
    if (c.limit_seconds > 0) std::printf(" of %.0fs", c.limit_seconds);
    std::printf(")\n");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
