#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qconn/oracle.hpp"

namespace qconn {

struct SuiteOptions {
  std::optional<GaussScalar> q;  // replaces the suite's own q grid
  int n_max = -1;                // negative selects the suite default
  std::uint64_t seed = 1;
  bool as_printed = false;       // check printed forms instead of the shipped ones
  int parameter_sets = 3;
  int max_degree = 16;
};

struct SuiteResult {
  std::string suite;
  std::vector<VerificationReport> reports;

  bool ok() const;
  int count(VerifyStatus status) const;
};

// table1, table2, theorem21, classical, lemma22, compose, delta, selfinverse,
// limits, hermite, ledger, all.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

// Closed form against the oracle for one degree (pointwise for continuous q-Hermite).
VerificationReport check_inversion(const FamilyInstance& inst, int n, bool as_printed);
VerificationReport check_connection(const FamilyInstance& src, const FamilyInstance& tgt, int n, bool as_printed);

// Double-precision q -> 1 check on one basic/classical pair with r = s:
// error ratios between q = 1 - 1e-3 and q = 1 - 1e-4 per nonzero coefficient.
struct LimitSample {
  int n = 0;
  int m = 0;
  double classical = 0;
  double error_coarse = 0;
  double error_fine = 0;
  double ratio() const { return error_coarse / error_fine; }
};

std::vector<LimitSample> limit_samples(const std::vector<long>& num_exp, const std::vector<long>& den_exp,
                                       const std::vector<long>& tgt_num_exp, const std::vector<long>& tgt_den_exp,
                                       int n_max);

}  // namespace qconn
