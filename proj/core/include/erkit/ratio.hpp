#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "erkit/error.hpp"

namespace erkit {

/// Exact rational number for evaluation metrics. Pair universes reach 10^7+
/// pairs, where a 0.1% metric difference is meaningful, so ratios are kept
/// as reduced integer fractions and only rendered to decimal at the edge.
class Ratio {
 public:
  Ratio() = default;  // 0/1
  Ratio(std::int64_t num, std::int64_t den);

  static Ratio from_counts(std::uint64_t num, std::uint64_t den);
  static Ratio one_minus(const Ratio& r);
  /// Harmonic-mean combination 2ab/(a+b); 0 when a + b == 0.
  static Ratio f_measure(const Ratio& a, const Ratio& b);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const;
  /// Fixed-point decimal rendering ("0.800000000000"); 12 places by default,
  /// enough for 10+ significant digits over this toolkit's count ranges.
  std::string to_decimal(int places = 12) const;
  std::string to_fraction() const;  // "4/5"

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;  // always positive, gcd(|num|, den) == 1
};

}  // namespace erkit
