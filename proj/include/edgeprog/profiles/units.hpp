#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace edgeprog {

// Exact fixed-point quantities. Every cost the optimizer compares is an
// integer in these units, so optimal values compare with ==, not a tolerance.

struct Duration {
  std::int64_t us = 0;  // microseconds

  static constexpr Duration from_us(std::int64_t v) { return Duration{v}; }
  static constexpr Duration from_ms(std::int64_t v) { return Duration{v * 1000}; }

  constexpr Duration& operator+=(Duration o) {
    us += o.us;
    return *this;
  }
  friend constexpr Duration operator+(Duration a, Duration b) { return Duration{a.us + b.us}; }
  friend constexpr Duration operator*(Duration a, std::int64_t k) { return Duration{a.us * k}; }
  friend constexpr auto operator<=>(Duration, Duration) = default;
};

struct Power {
  std::int64_t uw = 0;  // microwatts

  friend constexpr Power operator+(Power a, Power b) { return Power{a.uw + b.uw}; }
  friend constexpr auto operator<=>(Power, Power) = default;
};

struct Energy {
  std::int64_t pj = 0;  // picojoules (us * uW)

  constexpr Energy& operator+=(Energy o) {
    pj += o.pj;
    return *this;
  }
  friend constexpr Energy operator+(Energy a, Energy b) { return Energy{a.pj + b.pj}; }
  friend constexpr auto operator<=>(Energy, Energy) = default;
};

constexpr Energy operator*(Duration t, Power p) { return Energy{t.us * p.uw}; }

// Parses a non-negative or negative decimal ("12", "0.25", "-3.5") into an
// integer count of 10^-decimals units, rounding half away from zero.
// Returns false on malformed input.
bool parse_fixed(std::string_view text, int decimals, std::int64_t& out);

// 12345 us -> "12.345"
std::string format_ms(Duration d);
// 300000000 pJ -> "0.300000000"
std::string format_mj(Energy e);
// Generic fixed-point formatter: value * 10^-decimals.
std::string format_fixed(std::int64_t value, int decimals);

}  // namespace edgeprog
