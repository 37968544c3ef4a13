#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace stackspt {

// Exact rational number extended with +inf and -inf.
//
// Finite values are kept in lowest terms with a positive denominator and
// 64-bit numerator/denominator. Intermediate products are formed in 128 bits;
// a result that does not fit back into 64 bits raises std::overflow_error, so
// a value is either exact or an error, never rounded.
//
// Infinities are encoded with a zero denominator and the sign in the
// numerator. inf - inf (and inf + -inf) raises std::domain_error.
class ExtRational {
 public:
  constexpr ExtRational() noexcept = default;
  constexpr ExtRational(std::int64_t value) noexcept  // NOLINT: implicit by design of numeric literals
      : num_(value) {}

  // num / den in lowest terms; den == 0 throws std::invalid_argument.
  static ExtRational fraction(std::int64_t num, std::int64_t den);

  static constexpr ExtRational infinity() noexcept { return ExtRational(1, 0, Raw{}); }
  static constexpr ExtRational neg_infinity() noexcept { return ExtRational(-1, 0, Raw{}); }

  // Accepts "12", "-3", "2.5", "-0.125", "1/3", "inf", "+inf", "-inf".
  // Throws std::invalid_argument on malformed input, std::overflow_error when
  // the literal does not fit.
  static ExtRational parse(std::string_view text);

  [[nodiscard]] constexpr bool is_finite() const noexcept { return den_ != 0; }
  [[nodiscard]] constexpr bool is_pos_inf() const noexcept { return den_ == 0 && num_ > 0; }
  [[nodiscard]] constexpr bool is_neg_inf() const noexcept { return den_ == 0 && num_ < 0; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return den_ != 0 && num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  [[nodiscard]] constexpr std::int64_t numerator() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t denominator() const noexcept { return den_; }

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] double to_double() const noexcept;

  ExtRational operator-() const noexcept { return ExtRational(-num_, den_, Raw{}); }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b);

  ExtRational& operator+=(const ExtRational& other) { return *this = *this + other; }
  ExtRational& operator-=(const ExtRational& other) { return *this = *this - other; }
  ExtRational& operator*=(const ExtRational& other) { return *this = *this * other; }

  friend constexpr bool operator==(const ExtRational& a, const ExtRational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) noexcept;

 private:
  struct Raw {};
  constexpr ExtRational(std::int64_t num, std::int64_t den, Raw) noexcept : num_(num), den_(den) {}

  __extension__ typedef __int128 Wide;
  static ExtRational from_wide(Wide num, Wide den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& value);

}  // namespace stackspt

template <>
struct std::hash<stackspt::ExtRational> {
  std::size_t operator()(const stackspt::ExtRational& v) const noexcept {
    const auto h = std::hash<std::int64_t>{};
    return h(v.numerator()) * 1000003u ^ h(v.denominator());
  }
};
