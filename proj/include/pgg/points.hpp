#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace pgg {

/// Game points held as an exact count of tenths. The 1.6 multiplier means
/// per-round gains land on tenths, never anything finer, so integer tenths
/// make every payoff, running total, and serialized value bit-exact across
/// platforms. Construction from whole units or raw tenths only; no floats
/// on the way in.
class Points {
 public:
  constexpr Points() = default;

  static constexpr Points from_tenths(std::int64_t tenths) {
    Points p;
    p.tenths_ = tenths;
    return p;
  }

  static constexpr Points whole(std::int64_t units) { return from_tenths(units * 10); }

  constexpr std::int64_t tenths() const { return tenths_; }

  /// Lossy view for statistics; never feed this back into game arithmetic.
  constexpr double value() const { return static_cast<double>(tenths_) / 10.0; }

  /// Canonical decimal rendering with exactly one fractional digit: "16.0",
  /// "-3.4". This is the transcript wire format.
  std::string str() const;

  friend constexpr Points operator+(Points a, Points b) {
    return from_tenths(a.tenths_ + b.tenths_);
  }
  friend constexpr Points operator-(Points a, Points b) {
    return from_tenths(a.tenths_ - b.tenths_);
  }
  Points& operator+=(Points other) {
    tenths_ += other.tenths_;
    return *this;
  }

  auto operator<=>(const Points&) const = default;

 private:
  std::int64_t tenths_ = 0;
};

/// "16" -> "1.6"; shared by Points::str and multiplier rendering.
std::string format_tenths(std::int64_t tenths);

/// Inverse of format_tenths with exactness check: "1.6" -> 16. Throws
/// ConfigError when the text does not denote an exact number of tenths.
std::int64_t parse_tenths(const std::string& text);

}  // namespace pgg
