#pragma once

#include <cstdint>
#include <string>

namespace mm1040 {

// All money is integer cents. Arithmetic stays exact; division rounds
// half away from zero in one place only.
using Cents = std::int64_t;

inline constexpr Cents kCentsPerDollar = 100;

constexpr Cents dollars(std::int64_t d) { return d * kCentsPerDollar; }

// round(num/den) with ties away from zero. den must be positive.
constexpr Cents div_round_half_away(std::int64_t num, std::int64_t den) {
  const std::int64_t q = num / den;
  const std::int64_t r = num % den;
  if (r == 0) return q;
  if (2 * (r < 0 ? -r : r) >= den) return q + (num < 0 ? -1 : 1);
  return q;
}

// "1234.50", "-0.25". Used in reports and the line protocol.
std::string format_dollars(Cents c);

// Strict decimal-dollar parse: [+-]digits[.digits], no exponent. More than
// two fraction digits rounds half away from zero. Throws std::invalid_argument.
Cents parse_dollars(const std::string& text);

}  // namespace mm1040
