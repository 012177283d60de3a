#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>

#include "qconn/error.hpp"
#include "qconn/families.hpp"

namespace qconn {

// Seeded source of small nonzero rationals: |numerator|, denominator <= 64.
class Sampler {
 public:
  static constexpr int kBound = 64;
  static constexpr int kRetryCap = 100;

  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  Rational rational();
  // Gaussian rational on the unit circle, never +-1.
  GaussScalar unit_point();
  int uniform(int lo, int hi);

  // Full bindings for spec; groups get min_count .. min_count + 1 entries.
  Bindings bindings(const FamilySpec& spec);

 private:
  std::mt19937_64 engine_;
};

// Extra acceptance test applied to each candidate; throwing an Error rejects it.
using Acceptance = std::function<void(const FamilyInstance&)>;

// Draws bindings until make_instance, the non-degeneracy check up to n_max and
// accept all succeed. Throws SamplingExhausted after Sampler::kRetryCap tries.
FamilyInstance sample_instance(Sampler& sampler, const std::string& id, const Context& ctx, int n_max,
                               const Acceptance& accept = {},
                               const std::function<Bindings(Sampler&)>& draw = {});

using PairAcceptance = std::function<void(const FamilyInstance&, const FamilyInstance&)>;
using Align = std::function<void(const Bindings&, Bindings&)>;

std::pair<FamilyInstance, FamilyInstance> sample_pair(Sampler& sampler, const std::string& src_id,
                                                      const std::string& tgt_id, const Context& ctx, int n_max,
                                                      const Align& align = {}, const PairAcceptance& accept = {});

// True for the error kinds that signal an unlucky draw rather than a bug.
bool is_degenerate_draw(ErrorKind kind);

}  // namespace qconn
