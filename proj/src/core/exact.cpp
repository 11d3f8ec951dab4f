#include "exact.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

#include "error.hpp"

namespace mwec {

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  // 40 significant decimal digits, then let strtod round once.
  mpz_class num = abs(r.get_num());
  const mpz_class& den = r.get_den();
  long shift = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) -
               static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) + 40;
  mpz_class scaled;
  if (shift >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    scaled = num * p / den;
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    scaled = num / (den * p);
  }
  std::string text = scaled.get_str() + "e" + std::to_string(-shift);
  double d = std::strtod(text.c_str(), nullptr);
  return r < 0 ? -d : d;
}

std::int64_t pow10(int digits) {
  std::int64_t p = 1;
  for (int i = 0; i < digits; ++i) p *= 10;
  return p;
}

Decimal::Decimal(std::int64_t mantissa, int digits)
    : mantissa_(mantissa), digits_(digits) {
  if (mantissa < 0) throw invalid_argument("decimal must be non-negative");
  if (digits < 0 || digits > kMaxDigits)
    throw invalid_argument("decimal has too many fractional digits");
  // Trailing zeros carry no information; normalizing keeps to_string stable.
  while (digits_ > 0 && mantissa_ % 10 == 0) {
    mantissa_ /= 10;
    --digits_;
  }
}

Decimal Decimal::parse(std::string_view text) {
  if (text.empty()) throw invalid_argument("empty number");
  std::int64_t mantissa = 0;
  int digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 10;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_point)
        throw invalid_argument("malformed number '" + std::string(text) + "'");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw invalid_argument("malformed number '" + std::string(text) + "'");
    if (mantissa > kLimit)
      throw invalid_argument("number out of range '" + std::string(text) + "'");
    mantissa = mantissa * 10 + (ch - '0');
    seen_digit = true;
    if (seen_point) ++digits;
  }
  if (!seen_digit)
    throw invalid_argument("malformed number '" + std::string(text) + "'");
  if (digits > kMaxDigits)
    throw invalid_argument("too many fractional digits in '" +
                           std::string(text) + "'");
  return Decimal(mantissa, digits);
}

std::int64_t Decimal::denominator() const { return pow10(digits_); }

std::int64_t Decimal::scaled_to(int target_digits) const {
  if (target_digits < digits_)
    throw Error(ErrorCode::kInternal, "decimal rescale would lose precision");
  std::int64_t factor = pow10(target_digits - digits_);
  if (mantissa_ != 0 &&
      factor > std::numeric_limits<std::int64_t>::max() / mantissa_)
    throw invalid_argument("decimal value out of range after scaling");
  return mantissa_ * factor;
}

double Decimal::to_double() const {
  return static_cast<double>(mantissa_) / static_cast<double>(denominator());
}

Rational Decimal::to_rational() const {
  return make_rational(BigInt(static_cast<long>(mantissa_)),
                       BigInt(static_cast<long>(denominator())));
}

std::string Decimal::to_string() const {
  std::string s = std::to_string(mantissa_);
  if (digits_ == 0) return s;
  if (static_cast<int>(s.size()) <= digits_)
    s.insert(0, static_cast<std::size_t>(digits_ + 1 - s.size()), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits_), ".");
  return s;
}

Probability::Probability(Decimal d) : value_(d), as_double_(d.to_double()) {
  if (d.mantissa() > d.denominator())
    throw invalid_argument("probability " + d.to_string() +
                           " outside [0,1]");
}

Probability Probability::parse(std::string_view text) {
  return Probability(Decimal::parse(text));
}

}  // namespace mwec
