#include "sovplan/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>
#include <system_error>

namespace sovplan {

using detail::Int128;

namespace {

Int128 gcd_wide(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr Int128 kMax = INT64_MAX;
constexpr Int128 kMin = INT64_MIN;

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Int128 num, Int128 den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < kMin || den > kMax) throw std::overflow_error("rational: 64-bit overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(static_cast<Int128>(num_) * rhs.den_ + static_cast<Int128>(rhs.num_) * den_,
                    static_cast<Int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(static_cast<Int128>(num_) * rhs.den_ - static_cast<Int128>(rhs.num_) * den_,
                    static_cast<Int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<Int128>(num_) * rhs.num_, static_cast<Int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational: division by zero");
  *this = from_wide(static_cast<Int128>(num_) * rhs.den_, static_cast<Int128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Int128 lhs = static_cast<Int128>(a.num_) * b.den_;
  Int128 rhs = static_cast<Int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int digits) const {
  if (digits < 0) digits = 0;
  Int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int128 n = num_;
  bool negative = n < 0;
  if (negative) n = -n;
  // round half away from zero
  Int128 scaled = (n * scale * 2 + den_) / (static_cast<Int128>(den_) * 2);
  Int128 whole = scaled / scale;
  Int128 frac = scaled % scale;

  auto wide_to_string = [](Int128 v) {
    if (v == 0) return std::string("0");
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  };

  std::string out = negative && scaled != 0 ? "-" : "";
  out += wide_to_string(whole);
  if (digits > 0) {
    std::string f = wide_to_string(frac);
    out += '.';
    out.append(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = 0, d = 0;
    auto a = std::from_chars(text.data(), text.data() + slash, n);
    auto b = std::from_chars(text.data() + slash + 1, text.data() + text.size(), d);
    if (a.ec != std::errc() || a.ptr != text.data() + slash || b.ec != std::errc() ||
        b.ptr != text.data() + text.size() || d == 0)
      return fail();
    return Rational(n, d);
  }

  // decimal with optional exponent
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  Int128 mantissa = 0;
  int exponent = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa > kMax) return fail();
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    int e = 0;
    const char* begin = text.data() + pos + 1;
    if (begin < text.data() + text.size() && *begin == '+') ++begin;
    auto r = std::from_chars(begin, text.data() + text.size(), e);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) return fail();
    exponent += e;
  }
  if (exponent > 18 || exponent < -18) throw std::overflow_error("rational: exponent out of range");
  Int128 num = negative ? -mantissa : mantissa;
  Int128 den = 1;
  for (; exponent > 0; --exponent) num *= 10;
  for (; exponent < 0; ++exponent) den *= 10;
  return from_wide(num, den);
}

Rational Rational::from_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw std::invalid_argument("rational: cannot format double");
  return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

std::int64_t lcm_upto(std::uint32_t n) {
  std::int64_t l = 1;
  for (std::int64_t i = 2; i <= static_cast<std::int64_t>(n); ++i) l = std::lcm(l, i);
  return l;
}

}  // namespace sovplan
