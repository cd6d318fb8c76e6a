#include "edgeprog/profiles/units.hpp"

#include <cctype>
#include <limits>

namespace edgeprog {

bool parse_fixed(std::string_view text, int decimals, std::int64_t& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) return false;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 100;
  std::int64_t value = 0;
  bool any_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    if (value > kLimit) return false;
    value = value * 10 + (text[i] - '0');
    any_digit = true;
  }
  int frac_digits = 0;
  bool round_up = false;
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      any_digit = true;
      if (frac_digits < decimals) {
        if (value > kLimit) return false;
        value = value * 10 + (text[i] - '0');
        ++frac_digits;
      } else if (frac_digits == decimals) {
        round_up = text[i] >= '5';
        ++frac_digits;  // later digits never matter for half-up rounding
      }
    }
  }
  if (!any_digit || i != text.size()) return false;
  for (int k = std::min(frac_digits, decimals); k < decimals; ++k) {
    if (value > kLimit) return false;
    value *= 10;
  }
  if (round_up) ++value;
  out = negative ? -value : value;
  return true;
}

std::string format_fixed(std::int64_t value, int decimals) {
  std::string sign;
  // Work in unsigned to survive INT64_MIN.
  std::uint64_t v = static_cast<std::uint64_t>(value);
  if (value < 0) {
    sign = "-";
    v = ~v + 1;
  }
  std::uint64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  std::string whole = std::to_string(v / scale);
  if (decimals == 0) return sign + whole;
  std::string frac = std::to_string(v % scale);
  frac.insert(frac.begin(), static_cast<std::size_t>(decimals) - frac.size(), '0');
  return sign + whole + "." + frac;
}

std::string format_ms(Duration d) { return format_fixed(d.us, 3); }

std::string format_mj(Energy e) { return format_fixed(e.pj, 9); }

}  // namespace edgeprog
