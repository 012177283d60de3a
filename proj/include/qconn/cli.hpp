#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qconn/families.hpp"

namespace qconn {

enum class Verb { Invert, Connect, Verify, Table, Ledger };
enum class OutputFormat { Json, Csv };

const char* verb_name(Verb verb);

// A family id with its parameter bindings, written "id" or "id:name=value,name=value".
struct FamilyRef {
  std::string id;
  Bindings bindings;
};

FamilyRef parse_family_ref(const std::string& text);

// "name=value" items.
Bindings parse_bindings(const std::vector<std::string>& items);

struct CommandRequest {
  Verb verb = Verb::Invert;
  std::optional<FamilyRef> family;  // invert, table
  std::optional<FamilyRef> from;    // connect, table
  std::optional<FamilyRef> to;
  std::optional<std::string> q;
  std::optional<int> n;
  std::optional<int> n_max;
  std::string suite;
  OutputFormat format = OutputFormat::Json;
  bool as_printed = false;
  bool oracle = false;
  std::uint64_t seed = 1;
  int max_degree = 16;
};

struct CommandResult {
  std::string output;  // the document written to stdout
  std::string diagnostics;  // one-line summary for stderr, empty on success
  int exit_code = 0;
};

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

CommandResult run(const CommandRequest& request);

// Parses command-line arguments (without the program name) into a request and runs it.
// default_max_degree is the cap used when QPOLY_MAX_DEGREE is not consulted by the caller.
CommandResult run_arguments(const std::vector<std::string>& args, int default_max_degree = 16);

// QPOLY_MAX_DEGREE, or 16 when unset. Throws UsageError on a malformed value.
int max_degree_from_env();

}  // namespace qconn
