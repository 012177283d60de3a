#include <doctest.h>

#include <json.hpp>
#include <regex>
#include <sstream>

#include "qconn/cli.hpp"
#include "qconn/error.hpp"

using namespace qconn;
using nlohmann::json;

namespace {
CommandResult cli(std::vector<std::string> args) { return run_arguments(args); }
}  // namespace

TEST_CASE("invert writes exact rows") {
  auto res = cli({"invert", "--family", "little-q-laguerre", "--param", "a=1/2", "--q", "1/3", "--n", "1", "--format",
                  "json"});
  CHECK(res.exit_code == kExitOk);
  json doc = json::parse(res.output);
  CHECK(doc["schema_version"] == "1");
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["m"] == 0);
  CHECK(doc["rows"][0]["value"] == "5/6");
  CHECK(doc["rows"][1]["value"] == "-5/6");
}

TEST_CASE("oracle flag agrees with the closed form") {
  std::vector<std::string> base{"invert", "--family", "q-charlier", "--param", "a=3/7", "--q", "2/5", "--n", "4"};
  json closed = json::parse(cli(base).output);
  base.push_back("--oracle");
  json solved = json::parse(cli(base).output);
  for (size_t i = 0; i < closed["rows"].size(); ++i)
    CHECK(closed["rows"][i]["value"] == solved["rows"][i]["value"]);
}

TEST_CASE("csv output") {
  auto res = cli({"table", "--family", "little-q-laguerre", "--param", "a=1/2", "--q", "1/3", "--n-max", "2",
                  "--format", "csv"});
  CHECK(res.exit_code == kExitOk);
  CHECK(res.output.rfind("n,m,value,provenance\n", 0) == 0);
  CHECK(std::count(res.output.begin(), res.output.end(), '\n') == 7);
}

TEST_CASE("q-Racah precondition is reported") {
  auto res = cli({"connect", "--from", "q-racah:alpha=1/2,beta=1/7,gamma=3/5,delta=2/3", "--to",
                  "q-racah:alpha=1/2,beta=1/7,gamma=2/9,delta=1/5", "--q", "2/5", "--n", "2"});
  CHECK(res.exit_code == kExitError);
  json doc = json::parse(res.output);
  CHECK(doc["status"] == "error");
  CHECK(doc["error"]["kind"] == "PreconditionViolated");
  CHECK_FALSE(res.diagnostics.empty());
}

TEST_CASE("verify lemma22") {
  auto res = cli({"verify", "--suite", "lemma22", "--n-max", "8", "--q", "2/5"});
  CHECK(res.exit_code == kExitOk);
  json doc = json::parse(res.output);
  CHECK(doc["summary"]["mismatch"] == 0);
  CHECK(doc["summary"]["error"] == 0);
  CHECK(doc["summary"]["match"].get<int>() > 0);
}

TEST_CASE("usage and error exit codes") {
  CHECK(cli({"frobnicate"}).exit_code == kExitUsage);
  CHECK(cli({}).exit_code == kExitUsage);
  CHECK(cli({"verify", "--suite", "nope"}).exit_code == kExitUsage);
  auto unknown = cli({"invert", "--family", "no-such-family", "--q", "1/3", "--n", "1"});
  CHECK(unknown.exit_code == kExitError);
  CHECK(json::parse(unknown.output)["error"]["kind"] == "UnknownFamily");
  auto missing = cli({"invert", "--family", "little-q-laguerre", "--q", "1/3", "--n", "1"});
  CHECK(json::parse(missing.output)["error"]["kind"] == "BindingError");
  auto bad_q = cli({"invert", "--family", "little-q-laguerre", "--param", "a=1/2", "--q", "1/0", "--n", "1"});
  CHECK(bad_q.exit_code == kExitError);
}

TEST_CASE("degree cap") {
  auto res = run_arguments({"invert", "--family", "little-q-laguerre", "--param", "a=1/2", "--q", "1/3", "--n", "5"}, 4);
  CHECK(res.exit_code == kExitError);
  CHECK(json::parse(res.output)["error"]["kind"] == "DegreeExceeded");
}

TEST_CASE("same seed gives identical output") {
  std::vector<std::string> args{"verify", "--suite", "table1", "--n-max", "3", "--seed", "7"};
  auto a = cli(args), b = cli(args);
  CHECK(a.output == b.output);
  CHECK(a.exit_code == kExitOk);
}

TEST_CASE("coefficient output carries no floating-point values") {
  std::regex exact(R"(-?\d+(/\d+)?([+-]\d+(/\d+)?i)?|-?\d+(/\d+)?i)");
  auto json_res = cli({"table", "--family", "askey-wilson", "--param", "a=1/2", "--param", "b=1/3", "--param", "c=1/5",
                       "--param", "d=1/7", "--q", "2/5", "--n-max", "4"});
  REQUIRE(json_res.exit_code == kExitOk);
  json doc = json::parse(json_res.output);
  REQUIRE(doc["rows"].size() == 15);
  for (const auto& row : doc["rows"]) {
    REQUIRE(row["value"].is_string());
    CHECK(std::regex_match(row["value"].get<std::string>(), exact));
  }

  auto csv_res = cli({"connect", "--from", "big-q-laguerre:a=1/3,b=2/7", "--to", "big-q-laguerre:a=1/3,b=5/9", "--q",
                      "2/5", "--n", "5", "--format", "csv"});
  REQUIRE(csv_res.exit_code == kExitOk);
  std::istringstream lines(csv_res.output);
  std::string line;
  std::getline(lines, line);
  int count = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
      cells.push_back(cell);
    }
    REQUIRE(cells.size() == 4);
    CHECK(std::regex_match(cells[2], exact));
    ++count;
  }
  CHECK(count == 6);
}

TEST_CASE("ledger listing") {
  auto res = cli({"ledger"});
  CHECK(res.exit_code == kExitOk);
  json doc = json::parse(res.output);
  bool found = false;
  for (const auto& e : doc["ledger"]) found = found || e["location"] == "Eq4.1";
  CHECK(found);
}

TEST_CASE("family references") {
  FamilyRef ref = parse_family_ref("q-racah:alpha=1/2,beta=-1/3+1/2i");
  CHECK(ref.id == "q-racah");
  CHECK(ref.bindings.at("beta").str() == "-1/3+1/2i");
  CHECK(parse_family_ref("monomial").bindings.empty());
  CHECK_THROWS_AS(parse_bindings({"a"}), Error);
}
