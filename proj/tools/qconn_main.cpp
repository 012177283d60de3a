#include <iostream>
#include <string>
#include <vector>

#include "qconn/cli.hpp"
#include "qconn/error.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  int max_degree = 16;
  try {
    max_degree = qconn::max_degree_from_env();
  } catch (const qconn::Error& e) {
    std::cerr << "qconn: UsageError: " << e.what() << "\n";
    return qconn::kExitUsage;
  }
  qconn::CommandResult result = qconn::run_arguments(args, max_degree);
  std::cout << result.output;
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << "\n";
  return result.exit_code;
}
