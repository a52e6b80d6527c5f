#include "mm1040/generator.hpp"

#include <chrono>
#include <cmath>

namespace mm1040 {
namespace {

constexpr int kSourceRejectionLimit = 10'000;
constexpr int kFollowupRejectionLimit = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void GeneratorConfig::validate() const {
  if (!(bayes_factor >= 1.0)) throw std::invalid_argument("bayes factor must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must be in (0, 1)");
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  if (!(timeout_seconds > 0.0)) throw std::invalid_argument("timeout must be positive");
  if (sampling.max_credit < kCentsPerDollar)
    throw std::invalid_argument("max credit must be at least $1");
  if (sampling.max_agi < dollars(400'000))
    throw std::invalid_argument("max AGI must cover the credit phase-out ranges");
  if (sampling.max_itemized < dollars(30'001))
    throw std::invalid_argument("max itemized must exceed every standard deduction");
  if (sampling.min_age < 0 || sampling.min_age > 64 || sampling.max_age < 65)
    throw std::invalid_argument("age range must span both sides of 65");
}

int required_consecutive_passes(double bayes_factor, double theta) {
  if (!(bayes_factor >= 1.0)) throw std::invalid_argument("bayes factor must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must be in (0, 1)");
  if (bayes_factor == 1.0) return 0;
  return static_cast<int>(std::ceil(-std::log2(bayes_factor) / std::log2(theta)));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::FALSIFIED: return "FALSIFIED";
    case Verdict::STATISTICALLY_PASSED: return "STATISTICALLY_PASSED";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  throw std::logic_error("bad verdict");
}

void redraw_field(TaxReturnInput& r, Field f, Rng& g, const SamplingProfile& p) {
  switch (f) {
    case Field::sts: r.sts = static_cast<FilingStatus>(g.below(4)); break;
    case Field::age: r.age = static_cast<int>(g.range(p.min_age, p.max_age)); break;
    case Field::blind: r.blind = g.coin(); break;
    case Field::s_age: r.s_age = static_cast<int>(g.range(p.min_age, p.max_age)); break;
    case Field::s_blind: r.s_blind = g.coin(); break;
    case Field::agi: r.agi = g.whole_dollars(0, p.max_agi); break;
    case Field::withholding: r.withholding = g.whole_dollars(0, p.max_withholding); break;
    case Field::l27: r.l27 = g.whole_dollars(0, p.max_credit); break;
    case Field::qc: r.qc = static_cast<int>(g.range(0, 10)); break;
    case Field::od: r.od = static_cast<int>(g.range(0, 10)); break;
    case Field::l19: r.l19 = g.whole_dollars(0, p.max_credit); break;
    case Field::l29: r.l29 = g.whole_dollars(0, p.max_credit); break;
    case Field::mde: r.mde = g.whole_dollars(0, p.max_mde); break;
    case Field::other_itemized: r.other_itemized = g.whole_dollars(0, p.max_itemized); break;
    case Field::iz: r.iz = g.coin(); break;
  }
  r.canonicalize();
}

SourceDraw sample_source(const MetamorphicRelation& rel, Rng& rng,
                         const SamplingProfile& profile,
                         const std::optional<SourceDraw>& promising) {
  for (int attempt = 0; attempt < kSourceRejectionLimit; ++attempt) {
    if (promising && rng.coin()) {
      SourceDraw draw = *promising;
      const Field f = all_fields()[rng.below(kFieldCount)];
      redraw_field(draw.record, f, rng, profile);
      if (rel.disjuncts[draw.disjunct].source_ok(draw.record)) return draw;
      continue;
    }
    const std::size_t d =
        rel.disjuncts.size() > 1 ? rng.below(rel.disjuncts.size()) : 0;
    SourceDraw draw{rel.disjuncts[d].draw_source(rng, profile), d};
    if (rel.disjuncts[d].source_ok(draw.record)) return draw;
  }
  throw UnsatisfiablePremise("relation " + std::to_string(rel.id) +
                             ": no premise-conforming source in 10000 draws");
}

std::optional<std::vector<TaxReturnInput>> uniform_perturb(
    const MetamorphicRelation& rel, const TaxReturnInput& source,
    std::size_t disjunct, Rng& rng, const SamplingProfile& profile) {
  const auto& d = rel.disjuncts[disjunct];

  std::optional<TaxReturnInput> followup;
  for (int attempt = 0; attempt < kFollowupRejectionLimit; ++attempt) {
    TaxReturnInput y = d.draw_followup(source, rng, profile);
    if (d.followup_ok(source, y)) {
      followup = std::move(y);
      break;
    }
  }
  if (!followup) return std::nullopt;

  if (rel.arity == 2) return std::vector<TaxReturnInput>{source, *followup};

  std::optional<TaxReturnInput> primed;
  for (int attempt = 0; attempt < kFollowupRejectionLimit; ++attempt) {
    TaxReturnInput xp = rel.pair->draw_primed(source, rng, profile);
    if (rel.pair->pair_ok(source, xp)) {
      primed = std::move(xp);
      break;
    }
  }
  if (!primed) return std::nullopt;

  // y' carries y's exception-label values on top of x'
  TaxReturnInput yp = *primed;
  for (Field f : d.exception_labels) {
    switch (f) {
      case Field::qc: yp.qc = followup->qc; break;
      case Field::od: yp.od = followup->od; break;
      case Field::l29: yp.l29 = followup->l29; break;
      default:
        throw std::logic_error("unsupported exception label for arity-4 relation");
    }
  }
  if (!d.followup_ok(*primed, yp)) return std::nullopt;
  return std::vector<TaxReturnInput>{source, *primed, *followup, yp};
}

RunResult run_relation(const SutFn& sut, const MetamorphicRelation& rel,
                       const GeneratorConfig& cfg) {
  cfg.validate();
  const int K = required_consecutive_passes(cfg.bayes_factor, cfg.theta);
  Rng rng(cfg.seed ^ static_cast<std::uint64_t>(rel.id));
  const auto start = Clock::now();

  RunResult res;
  res.relation_id = rel.id;
  std::optional<SourceDraw> promising;
  int consecutive_skips = 0;

  while (true) {
    if (seconds_since(start) >= cfg.timeout_seconds) break;
    if (cfg.max_cases > 0 && res.cases.size() >= cfg.max_cases) break;

    const SourceDraw src = sample_source(rel, rng, cfg.sampling, promising);

    std::vector<CaseTuple> episode;
    bool episode_failed = false;
    bool timed_out_mid_episode = false;
    bool followup_unsatisfiable = false;
    double failure_time = 0.0;

    int consecutive = 0;
    while (consecutive < K) {
      auto records = uniform_perturb(rel, src.record, src.disjunct, rng, cfg.sampling);
      if (!records) {
        followup_unsatisfiable = true;
        break;
      }

      CaseTuple c;
      c.relation_id = rel.id;
      c.records = std::move(*records);
      c.outputs.reserve(c.records.size());
      bool call_failed = false;
      try {
        for (const auto& r : c.records) c.outputs.push_back(sut(r));
      } catch (const SutCallError&) {
        call_failed = true;  // discard the case, keep the source alive
      }
      const double now = seconds_since(start);
      if (call_failed) {
        if (now >= cfg.timeout_seconds) {
          timed_out_mid_episode = true;
          break;
        }
        continue;
      }
      c.deviance = deviance(rel, c.outputs);
      c.label = c.deviance > cfg.delta ? Label::failed : Label::passed;
      c.t_seconds = static_cast<std::int64_t>(now);
      const bool failed = c.label == Label::failed;
      if (failed) failure_time = now;
      episode.push_back(std::move(c));
      if (failed) {
        episode_failed = true;
        break;  // one failure retires the source
      }
      ++consecutive;
      if (now >= cfg.timeout_seconds && consecutive < K) {
        timed_out_mid_episode = true;
        break;
      }
    }

    if (followup_unsatisfiable) {
      // Skip this source entirely (its partial cases with it) and resample.
      if (++consecutive_skips >= kSourceRejectionLimit)
        throw UnsatisfiablePremise("relation " + std::to_string(rel.id) +
                                   ": follow-up constraints unsatisfiable");
      continue;
    }
    consecutive_skips = 0;
    if (timed_out_mid_episode) break;  // partial episode is discarded

    for (const auto& c : episode) {
      if (c.label == Label::failed) ++res.n_fail;
      else ++res.n_pass;
      if (c.deviance > res.max_deviance) res.max_deviance = c.deviance;
    }
    ++res.sources_retired;
    if (episode_failed) {
      if (!res.first_failure_seconds) res.first_failure_seconds = failure_time;
      const Cents dev = episode.back().deviance;
      if (!res.worst_case || dev > res.worst_case->deviance) {
        res.worst_case = episode.back();
        promising = src;
      }
    }
    res.cases.insert(res.cases.end(), std::make_move_iterator(episode.begin()),
                     std::make_move_iterator(episode.end()));

    if (K == 0) break;  // nothing to observe per source; the claim stands vacuously
  }

  res.elapsed_seconds = seconds_since(start);
  if (res.n_fail > 0) res.verdict = Verdict::FALSIFIED;
  else if (res.sources_retired > 0) res.verdict = Verdict::STATISTICALLY_PASSED;
  else res.verdict = Verdict::INCONCLUSIVE;
  return res;
}

}  // namespace mm1040
