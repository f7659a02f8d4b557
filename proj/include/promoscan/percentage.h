#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace promoscan {

/// A percentage held exactly in hundredths (75.00% == 7500).
class Percentage {
 public:
  constexpr Percentage() = default;

  static constexpr Percentage from_hundredths(std::int64_t h) { return Percentage(h); }

  /// 100 * part / whole rounded half-up to two decimals; whole must be > 0.
  static constexpr Percentage of(std::uint64_t part, std::uint64_t whole) {
    return Percentage(static_cast<std::int64_t>((20000 * part + whole) / (2 * whole)));
  }

  constexpr std::int64_t hundredths() const { return hundredths_; }
  constexpr double value() const { return static_cast<double>(hundredths_) / 100.0; }

  /// Two-decimal text, e.g. "10.38".
  std::string str() const {
    std::int64_t h = hundredths_ < 0 ? -hundredths_ : hundredths_;
    std::string frac = std::to_string(h % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return (hundredths_ < 0 ? "-" : "") + std::to_string(h / 100) + "." + frac;
  }

  friend constexpr auto operator<=>(Percentage, Percentage) = default;

 private:
  constexpr explicit Percentage(std::int64_t h) : hundredths_(h) {}
  std::int64_t hundredths_ = 0;
};

}  // namespace promoscan
