#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mm1040/money.hpp"
#include "mm1040/relations.hpp"
#include "mm1040/rng.hpp"
#include "mm1040/tax_engine.hpp"

namespace mm1040 {

// Run parameters. A relation run stops at the wall-clock timeout or, when
// max_cases > 0, at the first episode boundary with at least that many cases
// recorded; only the latter stop is deterministic.
struct GeneratorConfig {
  double bayes_factor = 100.0;
  double theta = 0.95;
  Cents delta = 95;  // deviance tolerance
  double timeout_seconds = 600.0;
  std::uint64_t seed = 42;
  std::uint64_t max_cases = 0;  // 0 = no case bound
  SamplingProfile sampling;

  void validate() const;  // throws std::invalid_argument
};

// Consecutive passing follow-ups needed before a source is retired:
// smallest K with theta^K <= 1/B.
int required_consecutive_passes(double bayes_factor, double theta);

enum class Verdict { FALSIFIED, STATISTICALLY_PASSED, INCONCLUSIVE };
const char* to_string(Verdict v);

struct RunResult {
  int relation_id = 0;
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::uint64_t n_pass = 0;
  std::uint64_t n_fail = 0;
  Cents max_deviance = 0;
  std::optional<double> first_failure_seconds;
  double elapsed_seconds = 0.0;
  std::uint64_t sources_retired = 0;
  std::optional<CaseTuple> worst_case;  // the most deviant failing tuple
  std::vector<CaseTuple> cases;         // committed episodes, in order
};

// A relation sampler rejected 10,000 draws in a row; the premise (or the
// configured ranges) cannot be satisfied.
struct UnsatisfiablePremise : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceDraw {
  TaxReturnInput record;
  std::size_t disjunct = 0;
};

// Fresh premise-conforming source, or (with probability 1/2 when a promising
// input exists) that input with one field redrawn.
SourceDraw sample_source(const MetamorphicRelation& rel, Rng& rng,
                         const SamplingProfile& profile,
                         const std::optional<SourceDraw>& promising);

// Full record tuple for one case: (x, y) or (x, x', y, y'). Empty optional
// means the follow-up constraints could not be met for this source and the
// caller should retire it and resample.
std::optional<std::vector<TaxReturnInput>> uniform_perturb(
    const MetamorphicRelation& rel, const TaxReturnInput& source,
    std::size_t disjunct, Rng& rng, const SamplingProfile& profile);

// One field redrawn from its base range (used by the exploit half of
// sample_source).
void redraw_field(TaxReturnInput& r, Field f, Rng& rng, const SamplingProfile& p);

// Evaluate one relation against a system under test until the stop rule hits.
RunResult run_relation(const SutFn& sut, const MetamorphicRelation& rel,
                       const GeneratorConfig& cfg);

}  // namespace mm1040
