#include "qconn/sampling.hpp"

#include "qconn/error.hpp"

namespace qconn {

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Rational Sampler::rational() {
  int num = uniform(1, kBound);
  if (uniform(0, 1)) num = -num;
  Rational r(num, uniform(1, kBound));
  r.canonicalize();
  return r;
}

GaussScalar Sampler::unit_point() {
  Rational t(uniform(1, kBound), uniform(1, kBound));
  t.canonicalize();
  if (uniform(0, 1)) t = -t;
  Rational den = 1 + t * t;
  return GaussScalar(Rational((1 - t * t) / den), Rational(2 * t / den));
}

Bindings Sampler::bindings(const FamilySpec& spec) {
  Bindings b;
  for (const auto& name : spec.parameter_names) b[name] = name == "eiphi" ? unit_point() : GaussScalar(rational());
  int group_size = 0;
  for (const auto& g : spec.groups) {
    int count = uniform(g.min_count, g.min_count + 1);
    group_size = std::max(group_size, count);
    for (int i = 1; i <= count; ++i) b[g.prefix + std::to_string(i)] = GaussScalar(rational());
  }
  for (const auto& name : spec.optional_names)
    if (name == "d") b[name] = GaussScalar(static_cast<long>(group_size + uniform(0, 1)));
  return b;
}

bool is_degenerate_draw(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero:
    case ErrorKind::DenominatorVanishes:
    case ErrorKind::VanishingFactor:
    case ErrorKind::DegenerateLeadingCoefficient:
    case ErrorKind::PreconditionViolated:
      return true;
    default:
      return false;
  }
}

FamilyInstance sample_instance(Sampler& sampler, const std::string& id, const Context& ctx, int n_max,
                               const Acceptance& accept, const std::function<Bindings(Sampler&)>& draw) {
  const FamilySpec& spec = registry_lookup(id);
  std::string last;
  for (int attempt = 0; attempt < Sampler::kRetryCap; ++attempt) {
    Bindings b = draw ? draw(sampler) : sampler.bindings(spec);
    try {
      FamilyInstance inst = make_instance(id, b, ctx);
      if (spec.expansion_capable) check_nondegenerate(inst, n_max);
      if (accept) accept(inst);
      return inst;
    } catch (const Error& e) {
      if (!is_degenerate_draw(e.kind())) throw;
      last = e.what();
    }
  }
  throw Error(ErrorKind::SamplingExhausted,
              id + ": no admissible parameters after " + std::to_string(Sampler::kRetryCap) + " draws (" + last + ")");
}

std::pair<FamilyInstance, FamilyInstance> sample_pair(Sampler& sampler, const std::string& src_id,
                                                      const std::string& tgt_id, const Context& ctx, int n_max,
                                                      const Align& align, const PairAcceptance& accept) {
  const FamilySpec& src_spec = registry_lookup(src_id);
  const FamilySpec& tgt_spec = registry_lookup(tgt_id);
  std::string last;
  for (int attempt = 0; attempt < Sampler::kRetryCap; ++attempt) {
    Bindings sb = sampler.bindings(src_spec);
    Bindings tb = sampler.bindings(tgt_spec);
    try {
      if (align) align(sb, tb);
      FamilyInstance src = make_instance(src_id, sb, ctx);
      FamilyInstance tgt = make_instance(tgt_id, tb, ctx);
      check_nondegenerate(src, n_max);
      check_nondegenerate(tgt, n_max);
      if (accept) accept(src, tgt);
      return {std::move(src), std::move(tgt)};
    } catch (const Error& e) {
      if (!is_degenerate_draw(e.kind())) throw;
      last = e.what();
    }
  }
  throw Error(ErrorKind::SamplingExhausted, src_id + " -> " + tgt_id + ": no admissible pair after " +
                                                std::to_string(Sampler::kRetryCap) + " draws (" + last + ")");
}

}  // namespace qconn
