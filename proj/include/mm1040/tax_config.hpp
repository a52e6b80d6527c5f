#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mm1040/money.hpp"
#include "mm1040/tax_return.hpp"

namespace mm1040 {

// Bracket: taxable income from `lower` (cents, inclusive) up to the next
// bracket's lower bound is taxed at rate_bp basis points.
struct Bracket {
  Cents lower = 0;
  int rate_bp = 0;
};

// Year-specific constants. Everything here is data loaded from a JSON
// document (see config/tax2020.json); the compiled-in default is the same
// document verbatim.
struct TaxConfig {
  int year = 0;
  std::map<FilingStatus, Cents> standard_deduction;
  std::map<FilingStatus, Cents> aged_blind_addon;
  std::map<FilingStatus, std::vector<Bracket>> brackets;
  // statuses absent from this map are barred from the credit by rule,
  // not by cap
  std::map<FilingStatus, Cents> eitc_agi_cap;
  Cents ctc_per_qc = 0;
  Cents ctc_per_od = 0;
  Cents ctc_phaseout_start = 0;      // MFJ only
  Cents ctc_phaseout_per_1k = 0;     // reduction per started $1,000 over
  std::map<FilingStatus, Cents> etc_full_agi;  // full credit at or below
  std::map<FilingStatus, Cents> etc_zero_agi;  // no credit at or above
  int mde_agi_floor_bp = 0;          // deductible medical floor, basis points of AGI

  static const TaxConfig& year2020();
  static TaxConfig from_json_text(const std::string& text);
  static TaxConfig from_file(const std::string& path);
};

// The embedded default document (also shipped as config/tax2020.json).
const std::string& default_tax_config_text();

}  // namespace mm1040
