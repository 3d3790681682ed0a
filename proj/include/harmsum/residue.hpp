#pragma once

#include <cstdint>
#include <iosfwd>

#include <gmpxx.h>

namespace harmsum {

/// p^e from a process-wide cache. The reference stays valid for the program lifetime.
const mpz_class& prime_power(std::uint32_t p, int e);

/// An element of Z/p^s. Binary operations on operands of different precision
/// yield the smaller precision; mixing primes throws std::invalid_argument.
class ResidueValue {
 public:
  ResidueValue(std::uint32_t p, int precision, const mpz_class& value);
  ResidueValue(std::uint32_t p, int precision, long value);

  static ResidueValue zero(std::uint32_t p, int precision) { return {p, precision, 0L}; }
  static ResidueValue one(std::uint32_t p, int precision) { return {p, precision, 1L}; }

  std::uint32_t prime() const { return p_; }
  int precision() const { return s_; }
  const mpz_class& residue() const { return r_; }
  const mpz_class& modulus() const { return *modulus_; }

  bool is_zero() const { return r_ == 0; }
  bool is_unit() const { return mpz_divisible_ui_p(r_.get_mpz_t(), p_) == 0; }
  /// ν_p of the residue, capped at the precision.
  int valuation() const;

  ResidueValue truncate(int precision) const;

  /// Unit bases reduce the exponent modulo (p−1)p^{s−1}; exponent must be ≥ 0.
  ResidueValue pow(const mpz_class& exponent) const;

  ResidueValue operator-() const;
  friend ResidueValue operator+(const ResidueValue& a, const ResidueValue& b);
  friend ResidueValue operator-(const ResidueValue& a, const ResidueValue& b);
  friend ResidueValue operator*(const ResidueValue& a, const ResidueValue& b);
  ResidueValue& operator+=(const ResidueValue& b) { return *this = *this + b; }
  ResidueValue& operator-=(const ResidueValue& b) { return *this = *this - b; }
  ResidueValue& operator*=(const ResidueValue& b) { return *this = *this * b; }

  friend bool operator==(const ResidueValue& a, const ResidueValue& b) {
    return a.p_ == b.p_ && a.s_ == b.s_ && a.r_ == b.r_;
  }

 private:
  std::uint32_t p_;
  int s_;
  mpz_class r_;
  const mpz_class* modulus_;
};

std::ostream& operator<<(std::ostream& os, const ResidueValue& v);

/// b with a·b ≡ 1 (mod p^s). Throws NonInvertible when p | a.
ResidueValue mod_inverse(const ResidueValue& a);

/// a/p at precision s−1. Throws NotDivisible when p ∤ a, PrecisionExhausted when s < 2.
ResidueValue divide_by_p(const ResidueValue& a);

/// Exponent e reduced modulo the order (p−1)p^{s−1} of (Z/p^s)*.
mpz_class reduce_exponent(const mpz_class& e, std::uint32_t p, int s);

}  // namespace harmsum
