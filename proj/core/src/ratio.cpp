#include "erkit/ratio.hpp"

#include <algorithm>
#include <numeric>

namespace erkit {

namespace {

using i128 = __int128;

Ratio reduce128(i128 num, i128 den) {
  if (den == 0) throw Error("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    num /= a;
    den /= a;
  }
  constexpr i128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax) {
    throw Error("ratio overflows 64-bit representation after reduction");
  }
  return Ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Ratio Ratio::from_counts(std::uint64_t num, std::uint64_t den) {
  if (num > static_cast<std::uint64_t>(INT64_MAX) ||
      den > static_cast<std::uint64_t>(INT64_MAX)) {
    throw Error("count too large for exact ratio arithmetic");
  }
  return Ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Ratio Ratio::one_minus(const Ratio& r) {
  return reduce128(static_cast<i128>(r.den_) - r.num_, r.den_);
}

Ratio Ratio::f_measure(const Ratio& a, const Ratio& b) {
  // 2ab / (a + b) with a = an/ad, b = bn/bd reduces to
  // 2*an*bn / (an*bd + bn*ad).
  i128 num = i128{2} * a.num_ * b.num_;
  i128 den = i128{a.num_} * b.den_ + i128{b.num_} * a.den_;
  if (den == 0) return Ratio(0, 1);
  return reduce128(num, den);
}

double Ratio::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Ratio::to_decimal(int places) const {
  bool negative = num_ < 0;
  unsigned __int128 n = negative ? static_cast<unsigned __int128>(-(i128)num_)
                                 : static_cast<unsigned __int128>(num_);
  unsigned __int128 d = static_cast<unsigned __int128>(den_);
  unsigned __int128 whole = n / d;
  unsigned __int128 rem = n % d;

  std::string digits;
  if (whole == 0) {
    digits = "0";
  } else {
    while (whole > 0) {
      digits.push_back(static_cast<char>('0' + static_cast<int>(whole % 10)));
      whole /= 10;
    }
    std::reverse(digits.begin(), digits.end());
  }

  std::string out = negative && (n != 0) ? "-" : "";
  out += digits;
  if (places > 0) {
    out.push_back('.');
    for (int i = 0; i < places; ++i) {
      rem *= 10;
      out.push_back(static_cast<char>('0' + static_cast<int>(rem / d)));
      rem %= d;
    }
  }
  return out;
}

std::string Ratio::to_fraction() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  i128 lhs = i128{a.num_} * b.den_;
  i128 rhs = i128{b.num_} * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace erkit
