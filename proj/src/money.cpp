#include "mm1040/money.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace mm1040 {

std::string format_dollars(Cents c) {
  const bool neg = c < 0;
  const std::int64_t abs = neg ? -c : c;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg ? "-" : "",
                static_cast<long long>(abs / 100), static_cast<long long>(abs % 100));
  return buf;
}

Cents parse_dollars(const std::string& text) {
  const char* p = text.c_str();
  while (std::isspace(static_cast<unsigned char>(*p))) ++p;
  bool neg = false;
  if (*p == '+' || *p == '-') neg = (*p++ == '-');
  if (!std::isdigit(static_cast<unsigned char>(*p)) && *p != '.')
    throw std::invalid_argument("not a decimal dollar amount: " + text);

  std::int64_t whole = 0;
  bool any_digit = false;
  for (; std::isdigit(static_cast<unsigned char>(*p)); ++p) {
    any_digit = true;
    if (whole > 900'000'000'000'000LL)
      throw std::invalid_argument("dollar amount out of range: " + text);
    whole = whole * 10 + (*p - '0');
  }

  std::int64_t cents = whole * 100;
  if (*p == '.') {
    ++p;
    int frac_digits = 0;
    std::int64_t frac = 0;
    for (; std::isdigit(static_cast<unsigned char>(*p)); ++p) {
      any_digit = true;
      if (frac_digits < 2) {
        frac = frac * 10 + (*p - '0');
        ++frac_digits;
      } else if (frac_digits == 2) {
        // third fraction digit decides the rounding of the cent
        if (*p - '0' >= 5) ++frac;
        ++frac_digits;
      } else {
        ++frac_digits;
      }
    }
    if (frac_digits == 1) frac *= 10;
    cents += frac;
  }
  while (std::isspace(static_cast<unsigned char>(*p))) ++p;
  if (*p != '\0' || !any_digit)
    throw std::invalid_argument("not a decimal dollar amount: " + text);
  return neg ? -cents : cents;
}

}  // namespace mm1040
