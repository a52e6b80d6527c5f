#include "mm1040/tax_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace mm1040 {

const char* to_string(MutantId m) {
  switch (m) {
    case MutantId::M1_EITC_MFS: return "M1_EITC_MFS";
    case MutantId::M2_EITC_AGI_CAP: return "M2_EITC_AGI_CAP";
    case MutantId::M3_ZERO_CROSS: return "M3_ZERO_CROSS";
    case MutantId::M4_MDE_FLOOR: return "M4_MDE_FLOOR";
    case MutantId::M5_ITEMIZED_ROUND: return "M5_ITEMIZED_ROUND";
  }
  throw std::logic_error("bad mutant id");
}

std::optional<MutantId> mutant_from_string(const std::string& name) {
  for (MutantId m : all_mutants()) {
    const std::string full = to_string(m);
    if (name == full || name == full.substr(0, 2)) return m;
  }
  return std::nullopt;
}

std::vector<MutantId> all_mutants() {
  return {MutantId::M1_EITC_MFS, MutantId::M2_EITC_AGI_CAP, MutantId::M3_ZERO_CROSS,
          MutantId::M4_MDE_FLOOR, MutantId::M5_ITEMIZED_ROUND};
}

Cents TaxEngine::itemized_total(const TaxReturnInput& r) const {
  Cents deductible_medical;
  if (mutant_ == MutantId::M4_MDE_FLOOR) {
    deductible_medical = r.mde;
  } else {
    const Cents floor = div_round_half_away(r.agi * cfg_.mde_agi_floor_bp, 10000);
    deductible_medical = std::max<Cents>(0, r.mde - floor);
  }
  return r.other_itemized + deductible_medical;
}

Cents TaxEngine::deduction_amount(const TaxReturnInput& r) const {
  const Cents base = cfg_.standard_deduction.at(r.sts);
  const Cents addon = cfg_.aged_blind_addon.at(r.sts);
  int flags = (r.age >= 65) + (r.blind ? 1 : 0);
  if (r.sts == FilingStatus::MFJ) flags += (r.s_age >= 65) + (r.s_blind ? 1 : 0);
  const Cents standard = base + flags * addon;

  if (!r.iz) return standard;
  const Cents itemized = itemized_total(r);
  if (mutant_ == MutantId::M5_ITEMIZED_ROUND && itemized < standard + dollars(500))
    return base;
  return itemized;
}

Cents TaxEngine::tax_before_credits(Cents taxable, FilingStatus sts) const {
  if (taxable < 0) throw std::invalid_argument("taxable income must be nonnegative");
  const auto& rows = cfg_.brackets.at(sts);
  std::int64_t weighted = 0;  // sum of rate_bp * slice, rounded once at the end
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Cents hi = (i + 1 < rows.size()) ? rows[i + 1].lower : taxable;
    const Cents slice = std::min(taxable, hi) - rows[i].lower;
    if (slice <= 0) break;
    weighted += slice * rows[i].rate_bp;
  }
  return div_round_half_away(weighted, 10000);
}

Cents TaxEngine::eligible_eitc(const TaxReturnInput& r) const {
  if (mutant_ != MutantId::M1_EITC_MFS && r.sts == FilingStatus::MFS) return 0;
  if (mutant_ != MutantId::M2_EITC_AGI_CAP) {
    auto cap = cfg_.eitc_agi_cap.find(r.sts);
    if (cap != cfg_.eitc_agi_cap.end() && r.agi > cap->second) return 0;
  }
  return r.l27;
}

Cents TaxEngine::eligible_ctc(const TaxReturnInput& r) const {
  Cents credit = std::min(r.l19, r.qc * cfg_.ctc_per_qc + r.od * cfg_.ctc_per_od);
  if (r.sts == FilingStatus::MFJ && r.agi > cfg_.ctc_phaseout_start) {
    const Cents over = r.agi - cfg_.ctc_phaseout_start;
    const Cents steps = (over + dollars(1000) - 1) / dollars(1000);  // every started $1,000
    credit = std::max<Cents>(0, credit - steps * cfg_.ctc_phaseout_per_1k);
  }
  return credit;
}

Cents TaxEngine::eligible_etc(const TaxReturnInput& r) const {
  if (r.sts == FilingStatus::MFS) return 0;
  const Cents full = cfg_.etc_full_agi.at(r.sts);
  const Cents zero = cfg_.etc_zero_agi.at(r.sts);
  if (r.agi <= full) return r.l29;
  if (r.agi >= zero) return 0;
  return div_round_half_away(r.l29 * (zero - r.agi), zero - full);
}

Cents TaxEngine::federal_tax_return(const TaxReturnInput& r) const {
  const Cents taxable = std::max<Cents>(0, r.agi - deduction_amount(r));
  Cents owed = tax_before_credits(taxable, r.sts);
  const Cents credits = eligible_ctc(r) + eligible_etc(r);
  if (mutant_ == MutantId::M3_ZERO_CROSS && owed - credits < dollars(250)) {
    // credits silently not applied
  } else {
    owed = std::max<Cents>(0, owed - credits);
  }
  return r.withholding + eligible_eitc(r) - owed;
}

}  // namespace mm1040
