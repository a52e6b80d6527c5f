#include "mm1040/relations.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace mm1040 {
namespace {

using R = TaxReturnInput;

// Premise constants (2020 values, cents).
constexpr Cents kEitcCapMfj = 5'684'400;
constexpr Cents kEtcFullMfj = dollars(160'000);
constexpr Cents kEtcZeroMfj = dollars(180'000);
constexpr Cents kCtcPhaseStart = dollars(400'000);
constexpr Cents kCtcPerQc = dollars(2'000);
constexpr Cents kCtcPerOd = dollars(500);
constexpr Cents kCtcStep = dollars(50);  // per started $1,000 over the threshold
constexpr Cents kStdMfj = dollars(24'800);
constexpr Cents kAddonMfj = dollars(1'300);
// Arity-4 sources need their pre-credit tax to dominate the credits, else a
// correct engine's zero clamp breaks the difference comparison. AGI at or
// above this (with the standard deduction) guarantees tax > $3,200.
constexpr Cents kArity4AgiFloor = dollars(60'000);

// Itemized claim exactly as the reference deduction computes it.
Cents l12_claim(const R& r) {
  const Cents floor = div_round_half_away(r.agi * 750, 10000);
  return r.other_itemized + std::max<Cents>(0, r.mde - floor);
}

// mde <= 7.5% of AGI, compared exactly (no rounding)
bool mde_below_floor(const R& r) { return r.mde * 40 <= r.agi * 3; }

Cents standard_full_mfj(const R& r) {
  const int flags = (r.age >= 65) + (r.blind ? 1 : 0) + (r.s_age >= 65) + (r.s_blind ? 1 : 0);
  return kStdMfj + flags * kAddonMfj;
}

R draw_base(Rng& g, const SamplingProfile& p) {
  R r;
  r.sts = static_cast<FilingStatus>(g.below(4));
  r.age = static_cast<int>(g.range(p.min_age, p.max_age));
  r.blind = g.coin();
  r.s_age = static_cast<int>(g.range(p.min_age, p.max_age));
  r.s_blind = g.coin();
  r.agi = g.whole_dollars(0, p.max_agi);
  r.withholding = g.whole_dollars(0, p.max_withholding);
  r.l27 = g.whole_dollars(0, p.max_credit);
  r.qc = static_cast<int>(g.range(0, 10));
  r.od = static_cast<int>(g.range(0, 10));
  r.l19 = g.whole_dollars(0, p.max_credit);
  r.l29 = g.whole_dollars(0, p.max_credit);
  r.mde = g.whole_dollars(0, p.max_mde);
  r.other_itemized = g.whole_dollars(0, p.max_itemized);
  r.iz = g.coin();
  r.canonicalize();
  return r;
}

std::vector<MetamorphicRelation> build_catalog() {
  std::vector<MetamorphicRelation> rels;

  // 1: extra standard deduction for age/blindness may only help
  {
    MetamorphicRelation rel;
    rel.id = 1;
    rel.domain = Domain::Disability;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "(x.age >= 65, y = x except y.age < 65) or (x.blind, y = x except "
        "y.blind = false) -> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::age},
        [](const R& x) { return x.age >= 65; },
        [](const R&, const R& y) { return y.age < 65; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.age = static_cast<int>(g.range(65, p.max_age));
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile& p) {
          R y = x;
          y.age = static_cast<int>(g.range(p.min_age, 64));
          return y;
        },
    });
    rel.disjuncts.push_back({
        {Field::blind},
        [](const R& x) { return x.blind; },
        [](const R&, const R& y) { return !y.blind; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.blind = true;
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.blind = false;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 2: same for the spouse flags on a joint return
  {
    MetamorphicRelation rel;
    rel.id = 2;
    rel.domain = Domain::Disability;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "x.sts = MFJ, ((x.s_age >= 65, y = x except y.s_age < 65) or "
        "(x.s_blind, y = x except y.s_blind = false)) -> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::s_age},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.s_age >= 65; },
        [](const R&, const R& y) { return y.s_age < 65; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.s_age = static_cast<int>(g.range(65, p.max_age));
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile& p) {
          R y = x;
          y.s_age = static_cast<int>(g.range(p.min_age, 64));
          return y;
        },
    });
    rel.disjuncts.push_back({
        {Field::s_blind},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.s_blind; },
        [](const R&, const R& y) { return !y.s_blind; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.s_blind = true;
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.s_blind = false;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 3: separate filers get no earned income credit, so the claim is inert
  {
    MetamorphicRelation rel;
    rel.id = 3;
    rel.domain = Domain::EITC;
    rel.comparator = OutputComparator::EQ;
    rel.premise_text = "x.sts = MFS, x.l27 > 0, y = x except y.l27 = 0 -> F(x) = F(y)";
    rel.disjuncts.push_back({
        {Field::l27},
        [](const R& x) { return x.sts == FilingStatus::MFS && x.l27 > 0; },
        [](const R&, const R& y) { return y.l27 == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFS;
          r.l27 = g.whole_dollars(kCentsPerDollar, p.max_credit);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.l27 = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 4: joint filers over the AGI cap get no earned income credit
  {
    MetamorphicRelation rel;
    rel.id = 4;
    rel.domain = Domain::EITC;
    rel.comparator = OutputComparator::EQ;
    rel.premise_text =
        "x.sts = MFJ, x.agi > 56844, x.l27 > 0, y = x except y.l27 = 0 -> F(x) = F(y)";
    rel.disjuncts.push_back({
        {Field::l27},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && x.agi > kEitcCapMfj && x.l27 > 0;
        },
        [](const R&, const R& y) { return y.l27 == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.agi = g.whole_dollars(dollars(56'845), p.max_agi);
          r.l27 = g.whole_dollars(kCentsPerDollar, p.max_credit);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.l27 = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 5: eligibility-improving changes cannot lower the return
  {
    MetamorphicRelation rel;
    rel.id = 5;
    rel.domain = Domain::EITC;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "x.sts = MFJ, ((x.agi <= 56844, y = x except y.agi > 56844) or "
        "(x.l27 > 0, y = x except y.l27 = 0) or (x.qc >= 1, y = x except "
        "y.qc = 0)) -> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::agi},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.agi <= kEitcCapMfj; },
        [](const R&, const R& y) { return y.agi > kEitcCapMfj; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.agi = g.whole_dollars(0, kEitcCapMfj);
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile& p) {
          R y = x;
          y.agi = g.whole_dollars(dollars(56'845), p.max_agi);
          return y;
        },
    });
    rel.disjuncts.push_back({
        {Field::l27},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.l27 > 0; },
        [](const R&, const R& y) { return y.l27 == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.l27 = g.whole_dollars(kCentsPerDollar, p.max_credit);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.l27 = 0;
          return y;
        },
    });
    rel.disjuncts.push_back({
        {Field::qc},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.qc >= 1; },
        [](const R&, const R& y) { return y.qc == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.qc = static_cast<int>(g.range(1, 10));
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.qc = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 6: within eligibility, the credit is monotone in the claim
  {
    MetamorphicRelation rel;
    rel.id = 6;
    rel.domain = Domain::EITC;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "x.sts = MFJ, x.agi <= 56844, x.qc <= 3, y = x except y.l27 <= x.l27 "
        "-> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::l27},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && x.agi <= kEitcCapMfj && x.qc <= 3;
        },
        [](const R& x, const R& y) { return y.l27 <= x.l27; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.agi = g.whole_dollars(0, kEitcCapMfj);
          r.qc = static_cast<int>(g.range(0, 3));
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile&) {
          R y = x;
          y.l27 = g.whole_dollars(0, x.l27);
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 7: child tax credit is monotone in the claim below the phase-out
  {
    MetamorphicRelation rel;
    rel.id = 7;
    rel.domain = Domain::CTC;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "x.sts = MFJ, x.agi <= 200000, y = x except y.l19 <= x.l19 -> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::l19},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.agi <= dollars(200'000); },
        [](const R& x, const R& y) { return y.l19 <= x.l19; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.agi = g.whole_dollars(0, dollars(200'000));
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile&) {
          R y = x;
          y.l19 = g.whole_dollars(0, x.l19);
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 8: dependents are worth at least as much below the phase-out as above it
  {
    MetamorphicRelation rel;
    rel.id = 8;
    rel.domain = Domain::CTC;
    rel.arity = 4;
    rel.comparator = OutputComparator::DIFF_GEQ;
    rel.premise_text =
        "x.sts = x'.sts = MFJ, 60000 <= x.agi < 400000 <= x'.agi, x' = x except "
        "agi, phase-out reduction at x'.agi < 2000*x.qc + 500*x.od, not x.iz, "
        "x.qc >= 1, y = x except y.qc <= x.qc and y.od <= x.od, y' = x' except "
        "same -> F(x) - F(y) >= F(x') - F(y')";
    rel.disjuncts.push_back({
        {Field::qc, Field::od},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && !x.iz && x.qc >= 1 &&
                 x.agi >= kArity4AgiFloor && x.agi < kCtcPhaseStart;
        },
        [](const R& x, const R& y) { return y.qc <= x.qc && y.od <= x.od; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.iz = false;
          r.qc = static_cast<int>(g.range(1, 10));
          r.agi = g.whole_dollars(kArity4AgiFloor, kCtcPhaseStart - kCentsPerDollar);
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile&) {
          R y = x;
          y.qc = static_cast<int>(g.range(0, x.qc));
          y.od = static_cast<int>(g.range(0, x.od));
          return y;
        },
    });
    rel.pair = PairSpec{
        {Field::agi},
        [](const R& x, const R& xp) {
          if (xp.agi < kCtcPhaseStart) return false;
          const Cents steps =
              (xp.agi - kCtcPhaseStart + dollars(1'000) - 1) / dollars(1'000);
          return steps * kCtcStep < x.qc * kCtcPerQc + x.od * kCtcPerOd;
        },
        [](const R& x, Rng& g, const SamplingProfile& p) {
          R xp = x;
          const Cents cap = x.qc * kCtcPerQc + x.od * kCtcPerOd;
          const Cents max_steps = cap / kCtcStep - 1;
          const Cents hi =
              std::min<Cents>(p.max_agi, kCtcPhaseStart + max_steps * dollars(1'000));
          xp.agi = g.whole_dollars(kCtcPhaseStart, hi);
          return xp;
        },
    };
    rels.push_back(std::move(rel));
  }

  // 9: separate filers get no education credit, so the claim is inert
  {
    MetamorphicRelation rel;
    rel.id = 9;
    rel.domain = Domain::ETC;
    rel.comparator = OutputComparator::EQ;
    rel.premise_text = "x.sts = MFS, x.l29 > 0, y = x except y.l29 = 0 -> F(x) = F(y)";
    rel.disjuncts.push_back({
        {Field::l29},
        [](const R& x) { return x.sts == FilingStatus::MFS && x.l29 > 0; },
        [](const R&, const R& y) { return y.l29 == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFS;
          r.l29 = g.whole_dollars(kCentsPerDollar, p.max_credit);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.l29 = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 10: fully phased out above 180k on a joint return
  {
    MetamorphicRelation rel;
    rel.id = 10;
    rel.domain = Domain::ETC;
    rel.comparator = OutputComparator::EQ;
    rel.premise_text =
        "x.sts = MFJ, x.agi > 180000, x.l29 > 0, y = x except y.l29 = 0 -> F(x) = F(y)";
    rel.disjuncts.push_back({
        {Field::l29},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && x.agi > kEtcZeroMfj && x.l29 > 0;
        },
        [](const R&, const R& y) { return y.l29 == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.agi = g.whole_dollars(kEtcZeroMfj + kCentsPerDollar, p.max_agi);
          r.l29 = g.whole_dollars(kCentsPerDollar, p.max_credit);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.l29 = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 11: education credit is monotone in the claim below the phase-out
  {
    MetamorphicRelation rel;
    rel.id = 11;
    rel.domain = Domain::ETC;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "x.sts = MFJ, x.agi < 160000, y = x except y.l29 <= x.l29 -> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::l29},
        [](const R& x) { return x.sts == FilingStatus::MFJ && x.agi < kEtcFullMfj; },
        [](const R& x, const R& y) { return y.l29 <= x.l29; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.agi = g.whole_dollars(0, kEtcFullMfj - kCentsPerDollar);
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile&) {
          R y = x;
          y.l29 = g.whole_dollars(0, x.l29);
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 12: a claim difference is worth at least as much at full credit as in
  // the phase-out window
  {
    MetamorphicRelation rel;
    rel.id = 12;
    rel.domain = Domain::ETC;
    rel.arity = 4;
    rel.comparator = OutputComparator::DIFF_GEQ;
    rel.premise_text =
        "x.sts = x'.sts = MFJ, 60000 <= x.agi <= 160000 <= x'.agi <= 180000, "
        "x' = x except agi, not x.iz, y = x except y.l29 <= x.l29, y' = x' "
        "except same l29 as y -> F(x) - F(y) >= F(x') - F(y')";
    rel.disjuncts.push_back({
        {Field::l29},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && !x.iz && x.agi >= kArity4AgiFloor &&
                 x.agi <= kEtcFullMfj;
        },
        [](const R& x, const R& y) { return y.l29 <= x.l29; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.iz = false;
          r.agi = g.whole_dollars(kArity4AgiFloor, kEtcFullMfj);
          return r;
        },
        [](const R& x, Rng& g, const SamplingProfile&) {
          R y = x;
          y.l29 = g.whole_dollars(0, x.l29);
          return y;
        },
    });
    rel.pair = PairSpec{
        {Field::agi},
        [](const R&, const R& xp) {
          return xp.agi >= kEtcFullMfj && xp.agi <= kEtcZeroMfj;
        },
        [](const R& x, Rng& g, const SamplingProfile&) {
          R xp = x;
          xp.agi = g.whole_dollars(kEtcFullMfj, kEtcZeroMfj);
          return xp;
        },
    };
    rels.push_back(std::move(rel));
  }

  // 13: medical expenses at or under the 7.5% AGI floor deduct nothing
  {
    MetamorphicRelation rel;
    rel.id = 13;
    rel.domain = Domain::ID;
    rel.comparator = OutputComparator::EQ;
    rel.premise_text =
        "x.iz, x.other_itemized = 0, 0 < x.mde <= 7.5% of x.agi, y = x except "
        "y.mde = 0 -> F(x) = F(y)";
    rel.disjuncts.push_back({
        {Field::mde},
        [](const R& x) {
          return x.iz && x.other_itemized == 0 && x.mde > 0 && mde_below_floor(x);
        },
        [](const R&, const R& y) { return y.mde == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.iz = true;
          r.other_itemized = 0;
          r.agi = g.whole_dollars(dollars(1'000), p.max_agi);
          const Cents floor_dollars = (r.agi / kCentsPerDollar) * 3 / 40;
          r.mde = g.whole_dollars(kCentsPerDollar, floor_dollars * kCentsPerDollar);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.mde = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 14: itemized amounts are inert when the standard deduction is taken
  {
    MetamorphicRelation rel;
    rel.id = 14;
    rel.domain = Domain::ID;
    rel.comparator = OutputComparator::EQ;
    rel.premise_text =
        "not x.iz, x.L12 > 0, y = x except y.mde = 0 and y.other_itemized = 0 "
        "-> F(x) = F(y)";
    rel.disjuncts.push_back({
        {Field::mde, Field::other_itemized},
        [](const R& x) { return !x.iz && l12_claim(x) > 0; },
        [](const R&, const R& y) { return y.mde == 0 && y.other_itemized == 0; },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.iz = false;
          r.other_itemized = g.whole_dollars(kCentsPerDollar, p.max_itemized);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.mde = 0;
          y.other_itemized = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 15: itemizing less than the standard deduction cannot beat taking it
  {
    MetamorphicRelation rel;
    rel.id = 15;
    rel.domain = Domain::ID;
    rel.comparator = OutputComparator::GEQ;
    rel.compare_swapped = true;
    rel.premise_text =
        "x.sts = MFJ, x.iz, x.L12 <= 24800, y = x except y.iz = false and "
        "y.L12 = 0 -> F(y) >= F(x)";
    rel.disjuncts.push_back({
        {Field::iz, Field::mde, Field::other_itemized},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && x.iz && l12_claim(x) <= kStdMfj;
        },
        [](const R&, const R& y) {
          return !y.iz && y.mde == 0 && y.other_itemized == 0;
        },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.iz = true;
          r.mde = 0;
          r.other_itemized = g.whole_dollars(0, kStdMfj);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.iz = false;
          y.mde = 0;
          y.other_itemized = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  // 16: itemizing more than the filer's standard deduction (add-ons included)
  // cannot do worse than taking it
  {
    MetamorphicRelation rel;
    rel.id = 16;
    rel.domain = Domain::ID;
    rel.comparator = OutputComparator::GEQ;
    rel.premise_text =
        "x.sts = MFJ, x.iz, x.L12 > 24800 + 1300 per age/blind flag, y = x "
        "except y.iz = false and y.L12 = 0 -> F(x) >= F(y)";
    rel.disjuncts.push_back({
        {Field::iz, Field::mde, Field::other_itemized},
        [](const R& x) {
          return x.sts == FilingStatus::MFJ && x.iz && l12_claim(x) > standard_full_mfj(x);
        },
        [](const R&, const R& y) {
          return !y.iz && y.mde == 0 && y.other_itemized == 0;
        },
        [](Rng& g, const SamplingProfile& p) {
          R r = draw_base(g, p);
          r.sts = FilingStatus::MFJ;
          r.iz = true;
          r.mde = 0;
          r.other_itemized =
              g.whole_dollars(standard_full_mfj(r) + kCentsPerDollar, p.max_itemized);
          return r;
        },
        [](const R& x, Rng&, const SamplingProfile&) {
          R y = x;
          y.iz = false;
          y.mde = 0;
          y.other_itemized = 0;
          return y;
        },
    });
    rels.push_back(std::move(rel));
  }

  return rels;
}

}  // namespace

const char* to_string(Domain d) {
  switch (d) {
    case Domain::Disability: return "Disability";
    case Domain::EITC: return "EITC";
    case Domain::CTC: return "CTC";
    case Domain::ETC: return "ETC";
    case Domain::ID: return "ID";
  }
  throw std::logic_error("bad domain");
}

const char* to_string(OutputComparator c) {
  switch (c) {
    case OutputComparator::EQ: return "EQ";
    case OutputComparator::GEQ: return "GEQ";
    case OutputComparator::DIFF_GEQ: return "DIFF_GEQ";
  }
  throw std::logic_error("bad comparator");
}

const char* to_string(Label l) { return l == Label::failed ? "failed" : "passed"; }

const std::vector<MetamorphicRelation>& catalog() {
  static const std::vector<MetamorphicRelation> rels = build_catalog();
  return rels;
}

const MetamorphicRelation& relation_by_id(int id) {
  const auto& rels = catalog();
  if (id < 1 || id > static_cast<int>(rels.size()))
    throw std::out_of_range("relation id out of range: " + std::to_string(id));
  return rels[static_cast<std::size_t>(id - 1)];
}

bool equal_outside(const TaxReturnInput& a, const TaxReturnInput& b,
                   const std::vector<Field>& labels) {
  for (Field f : all_fields()) {
    if (std::find(labels.begin(), labels.end(), f) != labels.end()) continue;
    if (field_value(a, f) != field_value(b, f)) return false;
  }
  return true;
}

bool premise_holds(const MetamorphicRelation& rel,
                   const std::vector<TaxReturnInput>& records) {
  if (static_cast<int>(records.size()) != rel.arity) return false;
  if (rel.arity == 2) {
    for (const auto& d : rel.disjuncts) {
      if (equal_outside(records[0], records[1], d.exception_labels) &&
          d.source_ok(records[0]) && d.followup_ok(records[0], records[1]))
        return true;
    }
    return false;
  }
  const auto& d = rel.disjuncts.front();
  const auto& pair = *rel.pair;
  const R& x = records[0];
  const R& xp = records[1];
  const R& y = records[2];
  const R& yp = records[3];
  if (!equal_outside(x, xp, pair.pair_labels) || !pair.pair_ok(x, xp)) return false;
  if (!d.source_ok(x)) return false;
  if (!equal_outside(x, y, d.exception_labels) || !d.followup_ok(x, y)) return false;
  if (!equal_outside(xp, yp, d.exception_labels) || !d.followup_ok(xp, yp)) return false;
  for (Field f : d.exception_labels)
    if (field_value(y, f) != field_value(yp, f)) return false;
  return true;
}

Cents deviance(const MetamorphicRelation& rel, const std::vector<Cents>& outputs) {
  if (static_cast<int>(outputs.size()) != rel.arity)
    throw std::invalid_argument("output count does not match relation arity");
  switch (rel.comparator) {
    case OutputComparator::EQ:
      return std::llabs(outputs[0] - outputs[1]);
    case OutputComparator::GEQ: {
      const Cents hi = rel.compare_swapped ? outputs[1] : outputs[0];
      const Cents lo = rel.compare_swapped ? outputs[0] : outputs[1];
      return std::max<Cents>(0, lo - hi);
    }
    case OutputComparator::DIFF_GEQ:
      return std::max<Cents>(0, (outputs[1] - outputs[3]) - (outputs[0] - outputs[2]));
  }
  throw std::logic_error("bad comparator");
}

std::string catalog_listing() {
  std::ostringstream out;
  for (const auto& rel : catalog()) {
    out << rel.id << ". [" << to_string(rel.domain) << ", arity " << rel.arity
        << ", " << to_string(rel.comparator) << "] " << rel.premise_text << "\n";
  }
  return out.str();
}

}  // namespace mm1040
