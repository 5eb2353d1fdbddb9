#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cltlab {

namespace detail {

using int128 = __int128;
using uint128 = unsigned __int128;

inline uint128 abs128(int128 v) {
  return v < 0 ? uint128(-(v + 1)) + 1 : uint128(v);
}

inline uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Reduced fraction with int64 numerator and positive int64 denominator.
// Operations that would overflow report failure instead of wrapping.
class rational {
 public:
  constexpr rational() = default;
  constexpr rational(std::int64_t n) : num_(n), den_(1) {}

  static std::optional<rational> make(std::int64_t num, std::int64_t den) {
    return make128(num, den);
  }

  // Accepts "p", "-p", "p/q" with int64 components.
  static std::optional<rational> parse(std::string_view text) {
    auto split = text.find('/');
    std::int64_t num = 0, den = 1;
    if (!parse_int(text.substr(0, split), num)) return std::nullopt;
    if (split != std::string_view::npos) {
      if (!parse_int(text.substr(split + 1), den)) return std::nullopt;
    }
    return make(num, den);
  }

  // Exact dyadic value of a finite double, when it fits in int64/int64.
  static std::optional<rational> from_double(double x) {
    if (!std::isfinite(x)) return std::nullopt;
    if (x == 0.0) return rational(0);
    int e = 0;
    double m = std::frexp(x, &e);
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    int shift = e - 53;
    while (mant != 0 && (mant & 1) == 0 && shift < 0) {
      mant >>= 1;
      ++shift;
    }
    if (shift >= 0) {
      if (shift > 62) return std::nullopt;
      detail::int128 v = detail::int128(mant) << shift;
      return make128(v, 1);
    }
    if (-shift > 62) return std::nullopt;
    return make(mant, std::int64_t(1) << -shift);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool positive() const { return num_ > 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  rational abs() const {
    rational r = *this;
    if (r.num_ < 0) r.num_ = -r.num_;
    return r;
  }

  std::optional<rational> add(rational o) const {
    using detail::int128;
    return make128(int128(num_) * o.den_ + int128(o.num_) * den_, int128(den_) * o.den_);
  }
  std::optional<rational> sub(rational o) const {
    using detail::int128;
    return make128(int128(num_) * o.den_ - int128(o.num_) * den_, int128(den_) * o.den_);
  }
  std::optional<rational> mul(rational o) const {
    using detail::int128;
    return make128(int128(num_) * o.num_, int128(den_) * o.den_);
  }
  std::optional<rational> div(rational o) const {
    using detail::int128;
    if (o.num_ == 0) return std::nullopt;
    return make128(int128(num_) * o.den_, int128(den_) * o.num_);
  }

  friend bool operator==(const rational&, const rational&) = default;

  std::strong_ordering order(rational o) const {
    using detail::int128;
    int128 l = int128(num_) * o.den_;
    int128 r = int128(o.num_) * den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  // Reduces n/d and range-checks into int64; |num| <= INT64_MAX, den >= 1.
  static std::optional<rational> make128(detail::int128 n, detail::int128 d) {
    using detail::int128;
    using detail::uint128;
    if (d == 0) return std::nullopt;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    uint128 g = detail::gcd128(detail::abs128(n), uint128(d));
    if (g > 1) {
      n /= int128(g);
      d /= int128(g);
    }
    constexpr int128 max64 = int128(INT64_MAX);
    if (n > max64 || n < -max64 || d > max64) return std::nullopt;
    rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

 private:
  static bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// gcd(|a|, |b|) with gcd(x, 0) = |x|; the lattice-refinement step.
inline std::optional<rational> rational_gcd(rational a, rational b) {
  using detail::int128;
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  int128 x = int128(a.num()) * b.den();
  int128 y = int128(b.num()) * a.den();
  detail::uint128 g = detail::gcd128(detail::abs128(x), detail::abs128(y));
  return rational::make128(int128(g), int128(a.den()) * b.den());
}

}  // namespace cltlab
