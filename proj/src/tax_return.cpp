#include "mm1040/tax_return.hpp"

#include <stdexcept>

namespace mm1040 {

const char* to_string(FilingStatus s) {
  switch (s) {
    case FilingStatus::Single: return "Single";
    case FilingStatus::MFJ: return "MFJ";
    case FilingStatus::MFS: return "MFS";
    case FilingStatus::HOH: return "HOH";
  }
  throw std::logic_error("bad filing status");
}

FilingStatus filing_status_from_string(const std::string& s) {
  if (s == "Single") return FilingStatus::Single;
  if (s == "MFJ") return FilingStatus::MFJ;
  if (s == "MFS") return FilingStatus::MFS;
  if (s == "HOH") return FilingStatus::HOH;
  throw std::invalid_argument("unknown filing status: " + s);
}

const char* field_name(Field f) {
  switch (f) {
    case Field::sts: return "sts";
    case Field::age: return "age";
    case Field::blind: return "blind";
    case Field::s_age: return "s_age";
    case Field::s_blind: return "s_blind";
    case Field::agi: return "agi";
    case Field::withholding: return "withholding";
    case Field::l27: return "l27";
    case Field::qc: return "qc";
    case Field::od: return "od";
    case Field::l19: return "l19";
    case Field::l29: return "l29";
    case Field::mde: return "mde";
    case Field::other_itemized: return "other_itemized";
    case Field::iz: return "iz";
  }
  throw std::logic_error("bad field");
}

std::int64_t field_value(const TaxReturnInput& r, Field f) {
  switch (f) {
    case Field::sts: return static_cast<std::int64_t>(r.sts);
    case Field::age: return r.age;
    case Field::blind: return r.blind ? 1 : 0;
    case Field::s_age: return r.s_age;
    case Field::s_blind: return r.s_blind ? 1 : 0;
    case Field::agi: return r.agi;
    case Field::withholding: return r.withholding;
    case Field::l27: return r.l27;
    case Field::qc: return r.qc;
    case Field::od: return r.od;
    case Field::l19: return r.l19;
    case Field::l29: return r.l29;
    case Field::mde: return r.mde;
    case Field::other_itemized: return r.other_itemized;
    case Field::iz: return r.iz ? 1 : 0;
  }
  throw std::logic_error("bad field");
}

void set_field_value(TaxReturnInput& r, Field f, std::int64_t v) {
  switch (f) {
    case Field::sts: r.sts = static_cast<FilingStatus>(v); return;
    case Field::age: r.age = static_cast<int>(v); return;
    case Field::blind: r.blind = v != 0; return;
    case Field::s_age: r.s_age = static_cast<int>(v); return;
    case Field::s_blind: r.s_blind = v != 0; return;
    case Field::agi: r.agi = v; return;
    case Field::withholding: r.withholding = v; return;
    case Field::l27: r.l27 = v; return;
    case Field::qc: r.qc = static_cast<int>(v); return;
    case Field::od: r.od = static_cast<int>(v); return;
    case Field::l19: r.l19 = v; return;
    case Field::l29: r.l29 = v; return;
    case Field::mde: r.mde = v; return;
    case Field::other_itemized: r.other_itemized = v; return;
    case Field::iz: r.iz = v != 0; return;
  }
  throw std::logic_error("bad field");
}

FieldKind field_kind(Field f) {
  switch (f) {
    case Field::sts: return FieldKind::Code;
    case Field::age:
    case Field::s_age:
    case Field::qc:
    case Field::od: return FieldKind::Count;
    case Field::blind:
    case Field::s_blind:
    case Field::iz: return FieldKind::Flag;
    default: return FieldKind::Money;
  }
}

}  // namespace mm1040
