#include "mm1040/tax_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mm1040 {
namespace {

using nlohmann::json;

// 2020 Form 1040 constants, all money in cents, rates in basis points.
constexpr const char* kDefaultConfig = R"({
  "schema": "mm1040-taxconfig/1",
  "year": 2020,
  "standard_deduction": {"Single": 1240000, "MFJ": 2480000, "MFS": 1240000, "HOH": 1865000},
  "aged_blind_addon": {"Single": 165000, "MFJ": 130000, "MFS": 165000, "HOH": 165000},
  "brackets": {
    "Single": [[0, 1000], [987500, 1200], [4012500, 2200], [8552500, 2400],
               [16330000, 3200], [20735000, 3500], [51840000, 3700]],
    "MFJ": [[0, 1000], [1975000, 1200], [8025000, 2200], [17105000, 2400],
            [32660000, 3200], [41470000, 3500], [62205000, 3700]],
    "MFS": [[0, 1000], [987500, 1200], [4012500, 2200], [8552500, 2400],
            [16330000, 3200], [20735000, 3500], [31102500, 3700]],
    "HOH": [[0, 1000], [1410000, 1200], [5370000, 2200], [8550000, 2400],
            [16330000, 3200], [20735000, 3500], [51840000, 3700]]
  },
  "eitc_agi_cap": {"MFJ": 5684400, "Single": 5059400, "HOH": 5059400},
  "ctc_per_qc": 200000,
  "ctc_per_od": 50000,
  "ctc_phaseout_start": 40000000,
  "ctc_phaseout_per_1k": 5000,
  "etc_full_agi": {"MFJ": 16000000, "Single": 8000000, "HOH": 8000000},
  "etc_zero_agi": {"MFJ": 18000000, "Single": 9000000, "HOH": 9000000},
  "mde_agi_floor_bp": 750
}
)";

std::map<FilingStatus, Cents> parse_status_map(const json& j) {
  std::map<FilingStatus, Cents> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out[filing_status_from_string(it.key())] = it.value().get<Cents>();
  return out;
}

}  // namespace

const std::string& default_tax_config_text() {
  static const std::string text = kDefaultConfig;
  return text;
}

TaxConfig TaxConfig::from_json_text(const std::string& text) {
  json j = json::parse(text);
  if (j.value("schema", "") != "mm1040-taxconfig/1")
    throw std::runtime_error("unsupported tax config schema");

  TaxConfig cfg;
  cfg.year = j.at("year").get<int>();
  cfg.standard_deduction = parse_status_map(j.at("standard_deduction"));
  cfg.aged_blind_addon = parse_status_map(j.at("aged_blind_addon"));
  for (auto it = j.at("brackets").begin(); it != j.at("brackets").end(); ++it) {
    std::vector<Bracket> rows;
    for (const auto& pair : it.value())
      rows.push_back({pair.at(0).get<Cents>(), pair.at(1).get<int>()});
    if (rows.empty() || rows.front().lower != 0)
      throw std::runtime_error("bracket table must start at 0");
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].lower <= rows[i - 1].lower)
        throw std::runtime_error("bracket bounds must be increasing");
    cfg.brackets[filing_status_from_string(it.key())] = std::move(rows);
  }
  cfg.eitc_agi_cap = parse_status_map(j.at("eitc_agi_cap"));
  cfg.ctc_per_qc = j.at("ctc_per_qc").get<Cents>();
  cfg.ctc_per_od = j.at("ctc_per_od").get<Cents>();
  cfg.ctc_phaseout_start = j.at("ctc_phaseout_start").get<Cents>();
  cfg.ctc_phaseout_per_1k = j.at("ctc_phaseout_per_1k").get<Cents>();
  cfg.etc_full_agi = parse_status_map(j.at("etc_full_agi"));
  cfg.etc_zero_agi = parse_status_map(j.at("etc_zero_agi"));
  cfg.mde_agi_floor_bp = j.at("mde_agi_floor_bp").get<int>();

  for (FilingStatus s : {FilingStatus::Single, FilingStatus::MFJ,
                         FilingStatus::MFS, FilingStatus::HOH}) {
    if (!cfg.standard_deduction.count(s) || !cfg.aged_blind_addon.count(s) ||
        !cfg.brackets.count(s))
      throw std::runtime_error(std::string("missing tables for status ") + to_string(s));
  }
  return cfg;
}

TaxConfig TaxConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tax config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

const TaxConfig& TaxConfig::year2020() {
  static const TaxConfig cfg = from_json_text(default_tax_config_text());
  return cfg;
}

}  // namespace mm1040
