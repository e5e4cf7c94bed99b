#include "dyadic/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace dyadic {

namespace mp = boost::multiprecision;

std::int64_t lowest_set_bit(const BigInt& value) {
  if (value.is_zero()) throw std::domain_error("lowest_set_bit of zero");
  return static_cast<std::int64_t>(mp::lsb(mp::abs(value)));
}

std::int64_t highest_set_bit(const BigInt& value) {
  if (value.is_zero()) throw std::domain_error("highest_set_bit of zero");
  return static_cast<std::int64_t>(mp::msb(mp::abs(value)));
}

DyadicRational::DyadicRational(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

DyadicRational DyadicRational::pow2(std::int64_t exponent) {
  DyadicRational r;
  r.mantissa_ = 1;
  r.exponent_ = exponent;
  return r;
}

void DyadicRational::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const auto shift = lowest_set_bit(mantissa_);
  if (shift > 0) {
    mantissa_ >>= static_cast<unsigned>(shift);
    exponent_ += shift;
  }
}

DyadicRational DyadicRational::scaled(std::int64_t shift) const {
  DyadicRational r = *this;
  if (!r.is_zero()) r.exponent_ += shift;
  return r;
}

DyadicRational DyadicRational::abs() const {
  DyadicRational r = *this;
  if (r.mantissa_.sign() < 0) r.mantissa_ = -r.mantissa_;
  return r;
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  // Right shifts of a negative cpp_int are not floor shifts, so only ever
  // shift left: align both operands to the smaller exponent.
  if (exponent_ == other.exponent_) {
    mantissa_ += other.mantissa_;
  } else if (exponent_ < other.exponent_) {
    mantissa_ += other.mantissa_ << static_cast<unsigned>(other.exponent_ - exponent_);
  } else {
    BigInt aligned = mantissa_ << static_cast<unsigned>(exponent_ - other.exponent_);
    mantissa_ = std::move(aligned) + other.mantissa_;
    exponent_ = other.exponent_;
  }
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& other) { return *this += -other; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& other) {
  if (is_zero() || other.is_zero()) return *this = DyadicRational{};
  // Product of odd mantissas is odd: already canonical.
  mantissa_ *= other.mantissa_;
  exponent_ += other.exponent_;
  return *this;
}

DyadicRational operator-(const DyadicRational& a) {
  DyadicRational r = a;
  r.mantissa_ = -r.mantissa_;
  return r;
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  const BigInt lhs = a.mantissa_ << static_cast<unsigned>(a.exponent_ - e);
  const BigInt rhs = b.mantissa_ << static_cast<unsigned>(b.exponent_ - e);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string DyadicRational::to_fraction_string() const {
  if (exponent_ >= 0) return BigInt(mantissa_ << static_cast<unsigned>(exponent_)).str();
  return mantissa_.str() + "/" + BigInt(BigInt(1) << static_cast<unsigned>(-exponent_)).str();
}

std::string DyadicRational::to_decimal_string() const {
  if (exponent_ >= 0) return to_fraction_string();
  // m / 2^k = m * 5^k / 10^k.
  const auto k = static_cast<unsigned>(-exponent_);
  const BigInt scaled = mp::abs(mantissa_) * mp::pow(BigInt(5), k);
  std::string digits = scaled.str();
  if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
  digits.insert(digits.size() - k, ".");
  if (mantissa_.sign() < 0) digits.insert(0, "-");
  return digits;
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& x) {
  return os << x.to_fraction_string();
}

}  // namespace dyadic
