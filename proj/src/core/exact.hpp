#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mwec {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Nearest double (mpq_get_d truncates, which turns 1/10 into 0.0999...).
double to_double(const Rational& r);

// Non-negative fixed-point decimal: mantissa / 10^digits. Parsed from text
// such as "0.25", "3" or ".5"; signs and exponents are rejected.
class Decimal {
 public:
  static constexpr int kMaxDigits = 18;

  Decimal() = default;
  Decimal(std::int64_t mantissa, int digits);

  // Throws mwec::Error(kInvalidArgument) on malformed text.
  static Decimal parse(std::string_view text);

  std::int64_t mantissa() const { return mantissa_; }
  int digits() const { return digits_; }
  std::int64_t denominator() const;

  // Mantissa rescaled to 10^target_digits (target_digits >= digits()).
  std::int64_t scaled_to(int target_digits) const;

  double to_double() const;
  Rational to_rational() const;
  std::string to_string() const;

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.to_rational() == b.to_rational();
  }

 private:
  std::int64_t mantissa_ = 0;
  int digits_ = 0;
};

std::int64_t pow10(int digits);

// Edge activation probability in [0,1], kept as an exact decimal so exact
// enumeration never sees float error.
class Probability {
 public:
  Probability() = default;
  explicit Probability(Decimal d);

  static Probability parse(std::string_view text);
  static Probability one() { return Probability(Decimal(1, 0)); }
  static Probability zero() { return Probability(Decimal(0, 0)); }

  const Decimal& decimal() const { return value_; }
  double value() const { return as_double_; }
  Rational exact() const { return value_.to_rational(); }
  std::string to_string() const { return value_.to_string(); }

  bool is_zero() const { return value_.mantissa() == 0; }
  bool is_one() const { return value_.mantissa() == value_.denominator(); }
  bool is_stochastic() const { return !is_zero() && !is_one(); }

  friend bool operator==(const Probability& a, const Probability& b) {
    return a.value_ == b.value_;
  }

 private:
  Decimal value_;
  double as_double_ = 0.0;
};

}  // namespace mwec
