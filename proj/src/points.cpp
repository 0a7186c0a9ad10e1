#include "pgg/points.hpp"

#include <cstdlib>

#include "pgg/errors.hpp"

namespace pgg {

std::string format_tenths(std::int64_t tenths) {
  const char* sign = tenths < 0 ? "-" : "";
  std::uint64_t mag = tenths < 0 ? -static_cast<std::uint64_t>(tenths) : tenths;
  return std::string(sign) + std::to_string(mag / 10) + "." + std::to_string(mag % 10);
}

std::string Points::str() const { return format_tenths(tenths_); }

std::int64_t parse_tenths(const std::string& text) {
  auto fail = [&] {
    throw ConfigError("'" + text + "' is not an exact number of tenths (expected e.g. \"1.6\")");
  };
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  std::string digits;
  int frac_digits = -1;  // -1: no decimal point seen yet
  for (char c : s) {
    if (c == '.') {
      if (frac_digits >= 0) fail();
      frac_digits = 0;
      continue;
    }
    if (c < '0' || c > '9') fail();
    digits += c;
    if (frac_digits >= 0) ++frac_digits;
  }
  if (digits.empty()) fail();
  if (frac_digits > 1) {
    // More than one fractional digit is fine only when the extras are zero.
    for (std::size_t i = digits.size() - (frac_digits - 1); i < digits.size(); ++i) {
      if (digits[i] != '0') fail();
    }
    digits.erase(digits.size() - (frac_digits - 1));
    frac_digits = 1;
  }
  if (frac_digits <= 0) digits += '0';  // whole number: shift into tenths
  std::int64_t value = 0;
  for (char c : digits) {
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

}  // namespace pgg
