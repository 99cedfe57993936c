#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sovplan {

namespace detail {
__extension__ typedef __int128 Int128;
}  // namespace detail

/// Exact fraction over 64-bit integers, always stored in lowest terms with a
/// positive denominator. Arithmetic throws std::overflow_error instead of
/// wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  /// "7/3", or "2" for integers.
  std::string to_string() const;
  /// Fixed-point decimal rounded half away from zero, e.g. "2.3333".
  std::string to_decimal(int digits = 6) const;

  /// Parses "3", "-2/5", "0.125" or "1e-3" exactly.
  static Rational parse(std::string_view text);
  /// Converts through the shortest round-trip decimal of `value`, so 0.1
  /// becomes 1/10 rather than the binary expansion.
  static Rational from_double(double value);

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(0) - a; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(detail::Int128 num, detail::Int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Least common multiple of 1..n. Used as the shared denominator of all
/// 1/|combo| rewards for n manufacturers.
std::int64_t lcm_upto(std::uint32_t n);

}  // namespace sovplan
