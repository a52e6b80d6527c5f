#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mm1040/money.hpp"
#include "mm1040/tax_config.hpp"
#include "mm1040/tax_return.hpp"

namespace mm1040 {

// Seeded faults. Each variant is the reference computation with exactly one
// localized deviation.
enum class MutantId {
  M1_EITC_MFS,        // grants the earned income credit to MFS filers
  M2_EITC_AGI_CAP,    // ignores the AGI cap on the earned income credit
  M3_ZERO_CROSS,      // drops nonrefundable credits when the post-credit tax is under $250
  M4_MDE_FLOOR,       // deducts medical expenses without the 7.5%-of-AGI floor
  M5_ITEMIZED_ROUND,  // falls back to the base standard deduction when itemized
                      // deductions are within $500 of the filer's standard amount
};

const char* to_string(MutantId m);
std::optional<MutantId> mutant_from_string(const std::string& name);
std::vector<MutantId> all_mutants();

// Simplified 2020 Form 1040. Pure function of the input record; immutable
// after construction. A default-constructed engine is the reference on the
// 2020 tables.
class TaxEngine {
 public:
  explicit TaxEngine(const TaxConfig& cfg = TaxConfig::year2020(),
                     std::optional<MutantId> mutant = std::nullopt)
      : cfg_(cfg), mutant_(mutant) {}

  // overpayment positive, balance due negative
  Cents federal_tax_return(const TaxReturnInput& r) const;

  Cents deduction_amount(const TaxReturnInput& r) const;
  Cents tax_before_credits(Cents taxable, FilingStatus sts) const;
  Cents eligible_eitc(const TaxReturnInput& r) const;
  Cents eligible_ctc(const TaxReturnInput& r) const;
  Cents eligible_etc(const TaxReturnInput& r) const;

  // Schedule A total: other itemized plus medical expenses over the floor
  Cents itemized_total(const TaxReturnInput& r) const;

  const TaxConfig& config() const { return cfg_; }
  std::optional<MutantId> mutant() const { return mutant_; }

 private:
  TaxConfig cfg_;
  std::optional<MutantId> mutant_;
};

// Any system under test: record in, federal tax return in cents out.
using SutFn = std::function<Cents(const TaxReturnInput&)>;

// One SUT invocation failed (timed out, malformed reply, process gone).
// The case being evaluated is discarded; the run keeps going.
struct SutCallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The SUT is considered broken (too many consecutive call failures).
struct SutProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mm1040
