#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mm1040/rng.hpp"
#include "mm1040/tax_engine.hpp"

using namespace mm1040;

namespace {

const TaxEngine& reference() {
  static const TaxEngine engine;
  return engine;
}

TaxEngine mutant(MutantId m) { return TaxEngine(TaxConfig::year2020(), m); }

TaxReturnInput record(FilingStatus sts, std::int64_t agi_dollars) {
  TaxReturnInput r;
  r.sts = sts;
  r.age = 40;
  r.s_age = 40;
  r.agi = dollars(agi_dollars);
  r.canonicalize();
  return r;
}

TaxReturnInput random_record(Rng& g) {
  TaxReturnInput r;
  r.sts = static_cast<FilingStatus>(g.below(4));
  r.age = static_cast<int>(g.range(18, 90));
  r.blind = g.coin();
  r.s_age = static_cast<int>(g.range(18, 90));
  r.s_blind = g.coin();
  r.agi = g.whole_dollars(0, dollars(500'000));
  r.withholding = g.whole_dollars(0, dollars(20'000));
  r.l27 = g.whole_dollars(0, dollars(1'000));
  r.qc = static_cast<int>(g.range(0, 10));
  r.od = static_cast<int>(g.range(0, 10));
  r.l19 = g.whole_dollars(0, dollars(1'000));
  r.l29 = g.whole_dollars(0, dollars(1'000));
  r.mde = g.whole_dollars(0, dollars(20'000));
  r.other_itemized = g.whole_dollars(0, dollars(100'000));
  r.iz = g.coin();
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("bracket tax, frozen values") {
  const TaxEngine& e = reference();
  CHECK(e.tax_before_credits(0, FilingStatus::MFJ) == 0);
  CHECK(e.tax_before_credits(dollars(19'750), FilingStatus::MFJ) == dollars(1'975));
  CHECK(e.tax_before_credits(dollars(5'200), FilingStatus::MFJ) == dollars(520));
  CHECK(e.tax_before_credits(dollars(100'000), FilingStatus::MFJ) == dollars(13'580));
  CHECK(e.tax_before_credits(dollars(75'200), FilingStatus::MFJ) == dollars(8'629));
  CHECK(e.tax_before_credits(dollars(73'900), FilingStatus::MFJ) == dollars(8'473));
  CHECK(e.tax_before_credits(dollars(73'800), FilingStatus::MFJ) == dollars(8'461));
  CHECK(e.tax_before_credits(dollars(200'000), FilingStatus::MFJ) == dollars(36'159));
  CHECK(e.tax_before_credits(dollars(700'000), FilingStatus::MFJ) == 19'614'900);
  CHECK(e.tax_before_credits(dollars(50'000), FilingStatus::Single) == dollars(6'790));
  CHECK(e.tax_before_credits(dollars(9'875), FilingStatus::Single) == 98'750);
  CHECK(e.tax_before_credits(dollars(9'876), FilingStatus::Single) == 98'762);
  CHECK(e.tax_before_credits(dollars(20'000), FilingStatus::HOH) == dollars(2'118));
  CHECK(e.tax_before_credits(4'012'500, FilingStatus::MFS) == 461'750);
}

TEST_CASE("bracket tax rounds once at the end") {
  const TaxEngine& e = reference();
  CHECK(e.tax_before_credits(4, FilingStatus::Single) == 0);   // 0.4 cents
  CHECK(e.tax_before_credits(5, FilingStatus::Single) == 1);   // 0.5 rounds away
  CHECK(e.tax_before_credits(14, FilingStatus::Single) == 1);  // 1.4
  CHECK_THROWS_AS(e.tax_before_credits(-1, FilingStatus::Single), std::invalid_argument);
}

TEST_CASE("bracket tax is monotone in taxable income") {
  const TaxEngine& e = reference();
  Rng g(11);
  for (int i = 0; i < 2000; ++i) {
    const Cents a = g.whole_dollars(0, dollars(800'000));
    const Cents b = a + g.whole_dollars(0, dollars(10'000));
    for (FilingStatus s : {FilingStatus::Single, FilingStatus::MFJ,
                           FilingStatus::MFS, FilingStatus::HOH})
      CHECK(e.tax_before_credits(b, s) >= e.tax_before_credits(a, s));
  }
}

TEST_CASE("standard deduction with age/blind add-ons") {
  const TaxEngine& e = reference();
  TaxReturnInput r = record(FilingStatus::Single, 50'000);
  CHECK(e.deduction_amount(r) == dollars(12'400));
  r.age = 65;
  r.blind = true;
  CHECK(e.deduction_amount(r) == dollars(15'700));

  TaxReturnInput j = record(FilingStatus::MFJ, 50'000);
  CHECK(e.deduction_amount(j) == dollars(24'800));
  j.age = 66;
  CHECK(e.deduction_amount(j) == dollars(26'100));
  j.blind = true;
  j.s_age = 70;
  j.s_blind = true;
  CHECK(e.deduction_amount(j) == dollars(30'000));

  TaxReturnInput h = record(FilingStatus::HOH, 50'000);
  h.blind = true;
  CHECK(e.deduction_amount(h) == dollars(20'300));

  TaxReturnInput m = record(FilingStatus::MFS, 50'000);
  m.age = 67;
  CHECK(e.deduction_amount(m) == dollars(14'050));  // the 1,300 add-on is joint-only
  // spouse flags only count on a joint return
  m.age = 40;
  m.s_age = 70;
  m.s_blind = true;
  CHECK(e.deduction_amount(m) == dollars(12'400));
}

TEST_CASE("itemized deduction applies the 7.5% medical floor") {
  const TaxEngine& e = reference();
  TaxReturnInput r = record(FilingStatus::Single, 100'000);
  r.iz = true;
  r.mde = dollars(10'000);
  r.other_itemized = dollars(5'000);
  CHECK(e.itemized_total(r) == dollars(7'500));
  // itemized amounts are used verbatim, even below the standard deduction
  CHECK(e.deduction_amount(r) == dollars(7'500));

  r.mde = dollars(7'500);
  CHECK(e.itemized_total(r) == dollars(5'000));

  TaxReturnInput odd = record(FilingStatus::Single, 0);
  odd.agi = 1'234'567;  // floor rounds half away: 92592.525 -> 92593
  odd.iz = true;
  odd.mde = 100'000;
  CHECK(e.itemized_total(odd) == 100'000 - 92'593);
}

TEST_CASE("earned income credit gates") {
  const TaxEngine& e = reference();
  TaxReturnInput r = record(FilingStatus::MFJ, 56'844);
  r.l27 = dollars(500);
  CHECK(e.eligible_eitc(r) == dollars(500));
  r.agi = 5'684'401;
  CHECK(e.eligible_eitc(r) == 0);

  TaxReturnInput s = record(FilingStatus::Single, 50'594);
  s.l27 = dollars(321);
  CHECK(e.eligible_eitc(s) == dollars(321));
  s.agi += 100;
  CHECK(e.eligible_eitc(s) == 0);

  TaxReturnInput h = record(FilingStatus::HOH, 50'594);
  h.l27 = dollars(77);
  CHECK(e.eligible_eitc(h) == dollars(77));

  TaxReturnInput m = record(FilingStatus::MFS, 10'000);
  m.l27 = dollars(400);
  CHECK(e.eligible_eitc(m) == 0);
}

TEST_CASE("child tax credit cap and phase-out") {
  const TaxEngine& e = reference();
  TaxReturnInput r = record(FilingStatus::MFJ, 100'000);
  r.qc = 2;
  r.od = 1;
  r.l19 = dollars(600);
  CHECK(e.eligible_ctc(r) == dollars(600));
  r.l19 = dollars(10'000);
  CHECK(e.eligible_ctc(r) == dollars(4'500));

  r.l19 = dollars(4'500);
  r.agi = dollars(400'000);
  CHECK(e.eligible_ctc(r) == dollars(4'500));
  r.agi = dollars(400'001);  // $50 off per started $1,000 over the threshold
  CHECK(e.eligible_ctc(r) == dollars(4'450));
  r.agi = dollars(401'000);
  CHECK(e.eligible_ctc(r) == dollars(4'450));
  r.agi = dollars(401'001);
  CHECK(e.eligible_ctc(r) == dollars(4'400));
  r.agi = dollars(490'000);
  CHECK(e.eligible_ctc(r) == 0);

  TaxReturnInput single = record(FilingStatus::Single, 500'000);
  single.qc = 2;
  single.od = 1;
  single.l19 = dollars(4'500);
  CHECK(e.eligible_ctc(single) == dollars(4'500));

  TaxReturnInput fr = record(FilingStatus::MFJ, 401'000);
  fr.qc = 2;
  fr.l19 = dollars(1'000);
  CHECK(e.eligible_ctc(fr) == dollars(950));
}

TEST_CASE("education credit phase-out") {
  const TaxEngine& e = reference();
  TaxReturnInput r = record(FilingStatus::MFJ, 160'000);
  r.l29 = dollars(800);
  CHECK(e.eligible_etc(r) == dollars(800));
  r.agi = dollars(180'000);
  CHECK(e.eligible_etc(r) == 0);
  r.agi = dollars(170'000);
  CHECK(e.eligible_etc(r) == dollars(400));
  r.agi = dollars(165'000);
  CHECK(e.eligible_etc(r) == dollars(600));
  r.agi = dollars(175'001);
  r.l29 = dollars(999);
  CHECK(e.eligible_etc(r) == 24'970);  // 999 * 4999/20000 = 249.70005

  TaxReturnInput s = record(FilingStatus::Single, 85'000);
  s.l29 = dollars(500);
  CHECK(e.eligible_etc(s) == dollars(250));

  TaxReturnInput m = record(FilingStatus::MFS, 10'000);
  m.l29 = dollars(500);
  CHECK(e.eligible_etc(m) == 0);
}

TEST_CASE("federal tax return, frozen composite") {
  const TaxEngine& e = reference();
  TaxReturnInput r = record(FilingStatus::MFJ, 100'000);
  r.withholding = dollars(5'000);
  r.qc = 1;
  r.l19 = dollars(2'000);
  CHECK(e.federal_tax_return(r) == -dollars(1'629));

  // credits cannot push the tax owed below zero
  TaxReturnInput z = record(FilingStatus::MFJ, 30'000);
  z.withholding = dollars(1'000);
  z.qc = 1;
  z.l19 = dollars(600);
  CHECK(e.federal_tax_return(z) == dollars(1'000));

  // no taxable income at all
  TaxReturnInput low = record(FilingStatus::Single, 10'000);
  low.withholding = dollars(100);
  CHECK(e.federal_tax_return(low) == dollars(100));
}

TEST_CASE("return is linear in withholding and nonincreasing in AGI") {
  const TaxEngine& e = reference();
  Rng g(21);
  for (int i = 0; i < 1000; ++i) {
    TaxReturnInput r = random_record(g);
    const Cents f = e.federal_tax_return(r);

    TaxReturnInput more_wh = r;
    more_wh.withholding += dollars(137);
    CHECK(e.federal_tax_return(more_wh) == f + dollars(137));

    TaxReturnInput more_agi = r;
    more_agi.agi += g.whole_dollars(kCentsPerDollar, dollars(50'000));
    CHECK(e.federal_tax_return(more_agi) <= f);
  }
}

TEST_CASE("config file on disk matches the built-in tables") {
  std::ifstream in(MM1040_CONFIG_FILE);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(nlohmann::json::parse(ss.str()) == nlohmann::json::parse(default_tax_config_text()));

  const TaxConfig from_disk = TaxConfig::from_file(MM1040_CONFIG_FILE);
  const TaxEngine disk_engine(from_disk);
  Rng g(31);
  for (int i = 0; i < 200; ++i) {
    const TaxReturnInput r = random_record(g);
    CHECK(disk_engine.federal_tax_return(r) == reference().federal_tax_return(r));
  }
}

TEST_CASE("config parser rejects malformed tables") {
  CHECK_THROWS(TaxConfig::from_json_text("{}"));
  CHECK_THROWS(TaxConfig::from_json_text("not json"));
  std::string bad_bracket = default_tax_config_text();
  const auto pos = bad_bracket.find("[0, 1000]");
  bad_bracket.replace(pos, 9, "[5, 1000]");
  CHECK_THROWS(TaxConfig::from_json_text(bad_bracket));
}

TEST_CASE("mutant names round-trip") {
  for (MutantId m : all_mutants()) {
    CHECK(mutant_from_string(to_string(m)) == m);
  }
  CHECK(mutant_from_string("M1") == MutantId::M1_EITC_MFS);
  CHECK(mutant_from_string("M3") == MutantId::M3_ZERO_CROSS);
  CHECK(!mutant_from_string("M9").has_value());
  CHECK(!mutant_from_string("").has_value());
}

TEST_CASE("M1 grants the earned income credit to separate filers") {
  const TaxEngine m1 = mutant(MutantId::M1_EITC_MFS);
  TaxReturnInput r = record(FilingStatus::MFS, 20'000);
  r.l27 = dollars(300);
  CHECK(reference().federal_tax_return(r) == -dollars(760));
  CHECK(m1.federal_tax_return(r) == -dollars(460));
  // the cap table has no MFS row, so the grant survives any AGI
  r.agi = dollars(300'000);
  CHECK(m1.eligible_eitc(r) == dollars(300));
  r.l27 = 0;
  CHECK(m1.federal_tax_return(r) == reference().federal_tax_return(r));
}

TEST_CASE("M2 ignores the AGI cap on the earned income credit") {
  const TaxEngine m2 = mutant(MutantId::M2_EITC_AGI_CAP);
  TaxReturnInput r = record(FilingStatus::MFJ, 100'000);
  r.l27 = dollars(400);
  // taxable 75,200 after the standard deduction, bracket tax 8,629
  CHECK(reference().federal_tax_return(r) == -dollars(8'629));
  CHECK(m2.federal_tax_return(r) == -dollars(8'229));
  // still refuses separate filers
  TaxReturnInput m = record(FilingStatus::MFS, 100'000);
  m.l27 = dollars(400);
  CHECK(m2.eligible_eitc(m) == 0);
}

TEST_CASE("M3 drops credits when the post-credit tax is small") {
  const TaxEngine m3 = mutant(MutantId::M3_ZERO_CROSS);
  TaxReturnInput r = record(FilingStatus::MFJ, 30'000);  // tax before credits: 520
  r.withholding = dollars(1'000);
  r.qc = 1;
  r.l19 = dollars(600);
  CHECK(reference().federal_tax_return(r) == dollars(1'000));
  CHECK(m3.federal_tax_return(r) == dollars(480));

  r.l19 = dollars(100);  // 520 - 100 >= 250: no trigger
  CHECK(m3.federal_tax_return(r) == reference().federal_tax_return(r));
}

TEST_CASE("M4 skips the medical floor") {
  const TaxEngine m4 = mutant(MutantId::M4_MDE_FLOOR);
  TaxReturnInput r = record(FilingStatus::Single, 100'000);
  r.iz = true;
  r.mde = dollars(5'000);
  r.other_itemized = dollars(10'000);
  CHECK(reference().deduction_amount(r) == dollars(10'000));
  CHECK(m4.deduction_amount(r) == dollars(15'000));
  CHECK(reference().federal_tax_return(r) == -1'567'950);
  CHECK(m4.federal_tax_return(r) == -1'449'000);
  r.mde = 0;
  CHECK(m4.federal_tax_return(r) == reference().federal_tax_return(r));
}

TEST_CASE("M5 falls back to the base standard amount near the cutover") {
  const TaxEngine m5 = mutant(MutantId::M5_ITEMIZED_ROUND);
  TaxReturnInput r = record(FilingStatus::MFJ, 100'000);
  r.age = 70;  // standard with add-on: 26,100
  r.iz = true;
  r.other_itemized = dollars(26'500);
  CHECK(reference().deduction_amount(r) == dollars(26'500));
  CHECK(m5.deduction_amount(r) == dollars(24'800));
  r.other_itemized = dollars(26'700);  // clear of the $500 window
  CHECK(m5.deduction_amount(r) == dollars(26'700));
  r.iz = false;
  CHECK(m5.deduction_amount(r) == reference().deduction_amount(r));
}

TEST_CASE("every mutant differs from the reference somewhere") {
  Rng g(41);
  std::vector<TaxReturnInput> batch;
  for (int i = 0; i < 4000; ++i) batch.push_back(random_record(g));
  for (MutantId m : all_mutants()) {
    const TaxEngine victim = mutant(m);
    int diffs = 0;
    for (const TaxReturnInput& r : batch)
      if (victim.federal_tax_return(r) != reference().federal_tax_return(r)) ++diffs;
    INFO("mutant ", to_string(m));
    CHECK(diffs > 0);
    CHECK(diffs < static_cast<int>(batch.size()));  // it is a fault, not a rewrite
  }
}
