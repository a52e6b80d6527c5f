#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mm1040/money.hpp"

namespace mm1040 {

enum class FilingStatus : std::uint8_t { Single = 0, MFJ = 1, MFS = 2, HOH = 3 };

const char* to_string(FilingStatus s);
FilingStatus filing_status_from_string(const std::string& s);

// One Form 1040 input record. Credits are the amounts claimed on the
// corresponding lines; eligibility is the engine's job. All money in cents.
struct TaxReturnInput {
  FilingStatus sts = FilingStatus::Single;
  int age = 0;
  bool blind = false;
  int s_age = 0;       // spouse fields; meaningful only for MFJ/MFS
  bool s_blind = false;
  Cents agi = 0;
  Cents withholding = 0;
  Cents l27 = 0;            // earned income credit claim
  int qc = 0;               // qualifying children
  int od = 0;               // other dependents
  Cents l19 = 0;            // child tax credit claim
  Cents l29 = 0;            // education credit claim
  Cents mde = 0;            // medical/dental expenses
  Cents other_itemized = 0; // Schedule A total net of the medical part
  bool iz = false;          // itemize instead of standard deduction

  // Spouse fields are carried only for married statuses; every producer
  // (sampler, parser, test fixture) must call this so record equality is
  // well defined.
  void canonicalize() {
    if (sts != FilingStatus::MFJ && sts != FilingStatus::MFS) {
      s_age = 0;
      s_blind = false;
    }
  }

  bool operator==(const TaxReturnInput&) const = default;
};

// Field handles, in serialization/column order.
enum class Field : int {
  sts = 0, age, blind, s_age, s_blind, agi, withholding,
  l27, qc, od, l19, l29, mde, other_itemized, iz,
};
inline constexpr int kFieldCount = 15;

const char* field_name(Field f);

// Uniform numeric view used by record equality-outside-a-label-set checks
// and by feature flattening. Money stays in cents; enums/bools as codes.
std::int64_t field_value(const TaxReturnInput& r, Field f);
void set_field_value(TaxReturnInput& r, Field f, std::int64_t v);

enum class FieldKind { Money, Count, Flag, Code };
FieldKind field_kind(Field f);

constexpr std::array<Field, kFieldCount> all_fields() {
  return {Field::sts, Field::age, Field::blind, Field::s_age, Field::s_blind,
          Field::agi, Field::withholding, Field::l27, Field::qc, Field::od,
          Field::l19, Field::l29, Field::mde, Field::other_itemized, Field::iz};
}

}  // namespace mm1040
