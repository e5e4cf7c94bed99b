#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dyadic {

using BigInt = boost::multiprecision::cpp_int;

/// Exact value mantissa * 2^exponent.
///
/// Canonical form: the mantissa is odd, or the value is zero and both fields
/// are zero. Every operation returns a canonical value, so structural equality
/// is value equality.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(BigInt mantissa, std::int64_t exponent);
  // Implicit so that Eigen can build Scalar(0) / Scalar(1) and integer
  // literals mix with exact values in formulas.
  DyadicRational(int value) : DyadicRational(BigInt(value), 0) {}
  DyadicRational(std::int64_t value) : DyadicRational(BigInt(value), 0) {}
  explicit DyadicRational(const BigInt& value) : DyadicRational(value, 0) {}

  /// 2^exponent.
  static DyadicRational pow2(std::int64_t exponent);

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  bool is_zero() const { return mantissa_.is_zero(); }
  int sign() const { return mantissa_.sign(); }

  /// Multiplies by 2^shift.
  DyadicRational scaled(std::int64_t shift) const;
  DyadicRational abs() const;

  DyadicRational& operator+=(const DyadicRational& other);
  DyadicRational& operator-=(const DyadicRational& other);
  DyadicRational& operator*=(const DyadicRational& other);

  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }
  friend DyadicRational operator-(const DyadicRational& a);

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  /// "3/4", "-5", "0".
  std::string to_fraction_string() const;
  /// Exact decimal expansion, e.g. "0.125". Dyadic rationals always have one.
  std::string to_decimal_string() const;

 private:
  void normalize();

  BigInt mantissa_{0};
  std::int64_t exponent_{0};
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& x);

// Named entry points matching the arithmetic surface of the library.
inline DyadicRational dr_add(const DyadicRational& a, const DyadicRational& b) { return a + b; }
inline DyadicRational dr_mul(const DyadicRational& a, const DyadicRational& b) { return a * b; }
inline DyadicRational dr_neg(const DyadicRational& a) { return -a; }
inline std::strong_ordering dr_cmp(const DyadicRational& a, const DyadicRational& b) { return a <=> b; }
inline bool dr_is_zero(const DyadicRational& a) { return a.is_zero(); }

/// Number of trailing zero bits of a nonzero integer.
std::int64_t lowest_set_bit(const BigInt& value);
/// Index of the highest set bit of a nonzero integer.
std::int64_t highest_set_bit(const BigInt& value);

}  // namespace dyadic
