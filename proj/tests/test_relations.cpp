#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mm1040/generator.hpp"
#include "mm1040/relations.hpp"
#include "mm1040/tax_engine.hpp"

using namespace mm1040;

namespace {

const SamplingProfile kProfile;

// Draw one premise-conforming tuple, retrying until the follow-up sticks.
std::vector<TaxReturnInput> draw_tuple(const MetamorphicRelation& rel, Rng& rng) {
  while (true) {
    const SourceDraw src = sample_source(rel, rng, kProfile, std::nullopt);
    auto records = uniform_perturb(rel, src.record, src.disjunct, rng, kProfile);
    if (records) return *records;
  }
}

Cents tuple_deviance(const MetamorphicRelation& rel,
                     const std::vector<TaxReturnInput>& records, const TaxEngine& engine) {
  std::vector<Cents> outputs;
  for (const TaxReturnInput& r : records) outputs.push_back(engine.federal_tax_return(r));
  return deviance(rel, outputs);
}

}  // namespace

TEST_CASE("catalog shape") {
  const auto& rels = catalog();
  REQUIRE(rels.size() == 16);
  for (int i = 0; i < 16; ++i) CHECK(rels[i].id == i + 1);

  auto domain_of = [&](int id) { return relation_by_id(id).domain; };
  for (int id : {1, 2}) CHECK(domain_of(id) == Domain::Disability);
  for (int id : {3, 4, 5, 6}) CHECK(domain_of(id) == Domain::EITC);
  for (int id : {7, 8}) CHECK(domain_of(id) == Domain::CTC);
  for (int id : {9, 10, 11, 12}) CHECK(domain_of(id) == Domain::ETC);
  for (int id : {13, 14, 15, 16}) CHECK(domain_of(id) == Domain::ID);

  for (const auto& rel : rels) {
    if (rel.id == 8 || rel.id == 12) {
      CHECK(rel.arity == 4);
      CHECK(rel.comparator == OutputComparator::DIFF_GEQ);
      CHECK(rel.pair.has_value());
      CHECK(rel.disjuncts.size() == 1);
    } else {
      CHECK(rel.arity == 2);
      CHECK(!rel.pair.has_value());
    }
    CHECK(!rel.disjuncts.empty());
    CHECK(!rel.premise_text.empty());
    for (const auto& d : rel.disjuncts) CHECK(!d.exception_labels.empty());
  }

  CHECK(relation_by_id(1).disjuncts.size() == 2);
  CHECK(relation_by_id(2).disjuncts.size() == 2);
  CHECK(relation_by_id(5).disjuncts.size() == 3);

  auto cmp = [&](int id) { return relation_by_id(id).comparator; };
  for (int id : {3, 4, 9, 10, 13, 14}) CHECK(cmp(id) == OutputComparator::EQ);
  for (int id : {1, 2, 5, 6, 7, 11, 15, 16}) CHECK(cmp(id) == OutputComparator::GEQ);
  for (const auto& rel : rels) CHECK(rel.compare_swapped == (rel.id == 15));

  CHECK_THROWS_AS(relation_by_id(0), std::out_of_range);
  CHECK_THROWS_AS(relation_by_id(17), std::out_of_range);
}

TEST_CASE("catalog_listing names every relation") {
  const std::string listing = catalog_listing();
  for (int id = 1; id <= 16; ++id)
    CHECK(listing.find(std::to_string(id) + ". [") != std::string::npos);
  CHECK(listing.find("DIFF_GEQ") != std::string::npos);
}

TEST_CASE("equal_outside ignores exactly the label set") {
  TaxReturnInput a;
  a.agi = dollars(50'000);
  TaxReturnInput b = a;
  CHECK(equal_outside(a, b, {}));
  b.agi = dollars(60'000);
  CHECK(!equal_outside(a, b, {}));
  CHECK(equal_outside(a, b, {Field::agi}));
  b.l27 = dollars(5);
  CHECK(!equal_outside(a, b, {Field::agi}));
  CHECK(equal_outside(a, b, {Field::agi, Field::l27}));
}

TEST_CASE("deviance per comparator") {
  const auto& eq = relation_by_id(3);
  CHECK(deviance(eq, {100, 150}) == 50);
  CHECK(deviance(eq, {150, 100}) == 50);
  CHECK(deviance(eq, {-20, -20}) == 0);

  const auto& geq = relation_by_id(1);  // claim: F(x) >= F(y)
  CHECK(deviance(geq, {100, 150}) == 50);
  CHECK(deviance(geq, {150, 100}) == 0);
  CHECK(deviance(geq, {100, 100}) == 0);

  const auto& swapped = relation_by_id(15);  // claim: F(y) >= F(x)
  CHECK(deviance(swapped, {200, 100}) == 100);
  CHECK(deviance(swapped, {100, 200}) == 0);

  // outputs ordered (x, x', y, y'); claim: F(x)-F(y) >= F(x')-F(y')
  const auto& diff = relation_by_id(8);
  CHECK(deviance(diff, {100, 50, 120, 90}) == 0);
  CHECK(deviance(diff, {100, 80, 90, 40}) == 30);
  CHECK(deviance(diff, {0, 0, 0, 0}) == 0);

  CHECK_THROWS_AS(deviance(eq, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(deviance(diff, {1, 2}), std::invalid_argument);
}

TEST_CASE("samplers produce tuples the premise re-check accepts") {
  for (const auto& rel : catalog()) {
    Rng rng(1000 + static_cast<std::uint64_t>(rel.id));
    INFO("relation ", rel.id);
    for (int i = 0; i < 300; ++i) {
      const auto records = draw_tuple(rel, rng);
      REQUIRE(static_cast<int>(records.size()) == rel.arity);
      CHECK(premise_holds(rel, records));
    }
  }
}

TEST_CASE("premise re-check rejects tampered tuples") {
  Rng rng(77);
  const auto& rel3 = relation_by_id(3);
  auto records = draw_tuple(rel3, rng);
  CHECK(premise_holds(rel3, records));

  auto off_label = records;
  off_label[1].withholding += 100;  // differs outside the exception labels
  CHECK(!premise_holds(rel3, off_label));

  auto bad_source = records;
  bad_source[0].sts = FilingStatus::Single;
  bad_source[1].sts = FilingStatus::Single;
  CHECK(!premise_holds(rel3, bad_source));

  auto bad_followup = records;
  bad_followup[1].l27 = dollars(3);  // must be zero
  CHECK(!premise_holds(rel3, bad_followup));

  auto wrong_arity = records;
  wrong_arity.push_back(records[0]);
  CHECK(!premise_holds(rel3, wrong_arity));

  const auto& rel8 = relation_by_id(8);
  auto quad = draw_tuple(rel8, rng);
  CHECK(premise_holds(rel8, quad));
  auto unpaired = quad;
  unpaired[3].qc = unpaired[2].qc + 1;  // y' stops mirroring y's label values
  CHECK(!premise_holds(rel8, unpaired));
  auto low_primed = quad;
  low_primed[1].agi = dollars(399'000);  // x' must sit at or above the phase-out
  CHECK(!premise_holds(rel8, low_primed));
}

TEST_CASE("reference engine satisfies every relation exactly") {
  const TaxEngine engine;
  for (const auto& rel : catalog()) {
    Rng rng(9000 + static_cast<std::uint64_t>(rel.id));
    INFO("relation ", rel.id);
    Cents worst = 0;
    for (int i = 0; i < 10'000; ++i)
      worst = std::max(worst, tuple_deviance(rel, draw_tuple(rel, rng), engine));
    CHECK(worst == 0);
  }
}

namespace {

struct MutantProbe {
  MutantId mutant;
  int relation_id;
  bool expect_all_fail;  // every conforming case beyond tolerance
};

const MutantProbe kProbes[] = {
    {MutantId::M1_EITC_MFS, 3, true},
    {MutantId::M2_EITC_AGI_CAP, 4, true},
    {MutantId::M3_ZERO_CROSS, 11, false},
    {MutantId::M4_MDE_FLOOR, 13, false},
    {MutantId::M5_ITEMIZED_ROUND, 16, false},
};

}  // namespace

TEST_CASE("each seeded fault violates its paired relation") {
  constexpr Cents kDelta = 95;
  for (const MutantProbe& probe : kProbes) {
    const TaxEngine victim(TaxConfig::year2020(), probe.mutant);
    const auto& rel = relation_by_id(probe.relation_id);
    Rng rng(500 + static_cast<std::uint64_t>(probe.relation_id));
    INFO("mutant ", to_string(probe.mutant), " on relation ", probe.relation_id);

    int failed = 0, passed = 0;
    const int budget = probe.expect_all_fail ? 2'000 : 20'000;
    for (int i = 0; i < budget; ++i) {
      const Cents dev = tuple_deviance(rel, draw_tuple(rel, rng), victim);
      (dev > kDelta ? failed : passed)++;
      if (!probe.expect_all_fail && failed > 50 && passed > 50) break;
    }
    CHECK(failed > 0);
    if (probe.expect_all_fail)
      CHECK(passed == 0);
    else
      CHECK(passed > 0);
  }
}
