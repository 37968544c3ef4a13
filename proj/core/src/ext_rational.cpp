#include "stackspt/ext_rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace stackspt {
namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

[[noreturn]] void overflow() { throw std::overflow_error("rational value exceeds 64-bit range"); }

}  // namespace

ExtRational ExtRational::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return ExtRational{};
  const u128 g = gcd128(abs128(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  // INT64_MIN is excluded so that negation never overflows.
  if (num > kMax || num < -kMax || den > kMax) overflow();
  return ExtRational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den), Raw{});
}

ExtRational ExtRational::fraction(std::int64_t num, std::int64_t den) {
  return from_wide(num, den);
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (!a.is_finite() || !b.is_finite()) {
    if (a.is_finite()) return b;
    if (b.is_finite()) return a;
    if (a.num_ != b.num_) throw std::domain_error("inf - inf is undefined");
    return a;
  }
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t sum = 0;
    if (__builtin_add_overflow(a.num_, b.num_, &sum) || sum == std::numeric_limits<std::int64_t>::min()) {
      overflow();
    }
    return ExtRational(sum);
  }
  const i128 num = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
  const i128 den = static_cast<i128>(a.den_) * b.den_;
  return ExtRational::from_wide(num, den);
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

ExtRational operator*(const ExtRational& a, const ExtRational& b) {
  if (!a.is_finite() || !b.is_finite()) {
    const int s = a.sign() * b.sign();
    if (s == 0) throw std::domain_error("0 * inf is undefined");
    return s > 0 ? ExtRational::infinity() : ExtRational::neg_infinity();
  }
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t prod = 0;
    if (__builtin_mul_overflow(a.num_, b.num_, &prod) || prod == std::numeric_limits<std::int64_t>::min()) {
      overflow();
    }
    return ExtRational(prod);
  }
  return ExtRational::from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) noexcept {
  if (!a.is_finite() || !b.is_finite()) {
    const int ra = a.is_finite() ? 0 : a.sign();
    const int rb = b.is_finite() ? 0 : b.sign();
    return ra <=> rb;
  }
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

ExtRational ExtRational::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("empty numeric literal");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s == "inf") return negative ? neg_infinity() : infinity();

  auto parse_digits = [&](std::string_view digits) -> std::int64_t {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("malformed numeric literal '" + std::string(text) + "'");
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range) overflow();
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed numeric literal '" + std::string(text) + "'");
    }
    return value;
  };

  i128 num = 0;
  i128 den = 1;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num = parse_digits(s.substr(0, slash));
    den = parse_digits(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed numeric literal '" + std::string(text) + "'");
    if (frac.size() > 18) overflow();
    num = whole.empty() ? 0 : parse_digits(whole);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = num * den + (frac.empty() ? 0 : parse_digits(frac));
  } else {
    num = parse_digits(s);
  }
  return from_wide(negative ? -num : num, den);
}

std::string ExtRational::to_string() const {
  if (!is_finite()) return num_ > 0 ? "inf" : "-inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double ExtRational::to_double() const noexcept {
  if (!is_finite()) return num_ > 0 ? HUGE_VAL : -HUGE_VAL;
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::ostream& operator<<(std::ostream& os, const ExtRational& value) { return os << value.to_string(); }

}  // namespace stackspt
