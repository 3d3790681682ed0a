#pragma once

#include <cstdint>
#include <iosfwd>

#include <gmpxx.h>

#include "harmsum/residue.hpp"

namespace harmsum {

/// A p-adic number p^v·u known modulo p^{v+k}: u is a unit modulo p^k and k is
/// the relative precision. Zero is encoded with u = 0 and k = 0, so that v is the
/// absolute precision to which the value is known to vanish.
///
/// Precision only ever decreases through arithmetic, and the loss is always
/// visible through absolute_precision().
class ScaledPAdic {
 public:
  /// Absolute precision used for values that are known exactly.
  static constexpr std::int64_t kExact = std::int64_t{1} << 40;

  static ScaledPAdic zero(std::uint32_t p, std::int64_t absolute_precision = kExact);
  static ScaledPAdic from_integer(std::uint32_t p, const mpz_class& x, std::int64_t absolute_precision);
  /// Rational with the unit part kept to the given relative precision.
  static ScaledPAdic from_rational(std::uint32_t p, const mpq_class& q, int relative_precision);
  static ScaledPAdic from_residue(const ResidueValue& r);

  std::uint32_t prime() const { return p_; }
  std::int64_t valuation() const { return v_; }
  const mpz_class& unit() const { return u_; }
  int relative_precision() const { return k_; }
  std::int64_t absolute_precision() const { return v_ + k_; }
  bool is_zero() const { return k_ == 0; }

  /// Requires a p-integral value known to at least s digits; throws PrecisionLoss otherwise.
  ResidueValue to_residue(int s) const;

  /// p^scale·value modulo p^{s+scale}, for fixed-point evaluation with a common denominator.
  /// Requires valuation + scale ≥ 0 and absolute_precision ≥ s.
  mpz_class scaled_residue(std::int64_t scale, int s) const;

  /// Drops relative digits so that the absolute precision is at most n.
  ScaledPAdic with_absolute_precision(std::int64_t n) const;

  ScaledPAdic inverse() const;
  ScaledPAdic pow(unsigned long e) const;

  ScaledPAdic operator-() const;
  friend ScaledPAdic operator+(const ScaledPAdic& a, const ScaledPAdic& b);
  friend ScaledPAdic operator-(const ScaledPAdic& a, const ScaledPAdic& b);
  friend ScaledPAdic operator*(const ScaledPAdic& a, const ScaledPAdic& b);
  friend ScaledPAdic operator/(const ScaledPAdic& a, const ScaledPAdic& b);
  ScaledPAdic& operator+=(const ScaledPAdic& b) { return *this = *this + b; }
  ScaledPAdic& operator-=(const ScaledPAdic& b) { return *this = *this - b; }
  ScaledPAdic& operator*=(const ScaledPAdic& b) { return *this = *this * b; }

  /// Multiplication by p^e, exact.
  ScaledPAdic shifted(std::int64_t e) const;

 private:
  ScaledPAdic(std::uint32_t p, std::int64_t v, mpz_class u, int k) : p_(p), v_(v), u_(std::move(u)), k_(k) {}
  static ScaledPAdic normalized(std::uint32_t p, std::int64_t v, mpz_class x, std::int64_t absolute);

  std::uint32_t p_;
  std::int64_t v_;
  mpz_class u_;
  int k_;
};

std::ostream& operator<<(std::ostream& os, const ScaledPAdic& x);

}  // namespace harmsum
