#include "harmsum/scaled_padic.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

std::int64_t clamp_exact(std::int64_t n) { return std::min(n, ScaledPAdic::kExact); }

int strip_p(mpz_class& x, std::uint32_t p) {
  int v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++v;
  }
  return v;
}

void require_same_prime(const ScaledPAdic& a, const ScaledPAdic& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("p-adic values over different primes");
}

}  // namespace

ScaledPAdic ScaledPAdic::zero(std::uint32_t p, std::int64_t absolute_precision) {
  return {p, clamp_exact(absolute_precision), mpz_class(0), 0};
}

// x·p^v known modulo p^absolute; x is any integer.
ScaledPAdic ScaledPAdic::normalized(std::uint32_t p, std::int64_t v, mpz_class x, std::int64_t absolute) {
  absolute = clamp_exact(absolute);
  if (v >= absolute || x == 0) return zero(p, absolute);
  const int digits = static_cast<int>(absolute - v);
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), prime_power(p, digits).get_mpz_t());
  if (x == 0) return zero(p, absolute);
  const int t = strip_p(x, p);
  return {p, v + t, std::move(x), digits - t};
}

ScaledPAdic ScaledPAdic::from_integer(std::uint32_t p, const mpz_class& x, std::int64_t absolute_precision) {
  if (absolute_precision >= kExact) throw std::invalid_argument("integer needs a finite precision");
  return normalized(p, 0, x, absolute_precision);
}

ScaledPAdic ScaledPAdic::from_rational(std::uint32_t p, const mpq_class& q, int relative_precision) {
  if (q == 0) return zero(p);
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  const int vn = strip_p(num, p);
  const int vd = strip_p(den, p);
  const mpz_class& mod = prime_power(p, relative_precision);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class u = num * inv;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  return {p, std::int64_t(vn) - vd, std::move(u), relative_precision};
}

ScaledPAdic ScaledPAdic::from_residue(const ResidueValue& r) {
  return normalized(r.prime(), 0, r.residue(), r.precision());
}

ResidueValue ScaledPAdic::to_residue(int s) const {
  if (absolute_precision() < s) {
    throw PrecisionLoss("value known to " + std::to_string(absolute_precision()) + " digits, " +
                        std::to_string(s) + " requested");
  }
  if (is_zero()) return ResidueValue::zero(p_, s);
  if (v_ < 0) throw PrecisionLoss("value has negative valuation " + std::to_string(v_));
  if (v_ >= s) return ResidueValue::zero(p_, s);
  return {p_, s, u_ * prime_power(p_, static_cast<int>(v_))};
}

mpz_class ScaledPAdic::scaled_residue(std::int64_t scale, int s) const {
  if (absolute_precision() < s) throw PrecisionLoss("scaled residue needs more digits than are known");
  const std::int64_t shifted_v = v_ + scale;
  if (is_zero() || shifted_v >= s + scale) return 0;
  if (shifted_v < 0) throw PrecisionLoss("scale too small for negative valuation");
  mpz_class out = u_ * prime_power(p_, static_cast<int>(shifted_v));
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), prime_power(p_, static_cast<int>(s + scale)).get_mpz_t());
  return out;
}

ScaledPAdic ScaledPAdic::with_absolute_precision(std::int64_t n) const {
  if (n >= absolute_precision()) return *this;
  return normalized(p_, v_, u_, n);
}

ScaledPAdic ScaledPAdic::inverse() const {
  if (is_zero()) throw NonInvertible("inverse of a p-adic zero");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), u_.get_mpz_t(), prime_power(p_, k_).get_mpz_t());
  return {p_, -v_, std::move(inv), k_};
}

ScaledPAdic ScaledPAdic::pow(unsigned long e) const {
  if (e == 0) {
    // 0^0 = 1 is taken to carry the precision of the base, at least one digit.
    const int k = is_zero() ? static_cast<int>(std::clamp<std::int64_t>(v_, 1, 1 << 20)) : k_;
    return {p_, 0, mpz_class(1), k};
  }
  if (is_zero()) return zero(p_, v_ * static_cast<std::int64_t>(e));
  mpz_class out;
  mpz_powm_ui(out.get_mpz_t(), u_.get_mpz_t(), e, prime_power(p_, k_).get_mpz_t());
  return {p_, v_ * static_cast<std::int64_t>(e), std::move(out), k_};
}

ScaledPAdic ScaledPAdic::shifted(std::int64_t e) const {
  if (is_zero()) return zero(p_, clamp_exact(v_ + e));
  return {p_, v_ + e, u_, k_};
}

ScaledPAdic ScaledPAdic::operator-() const {
  if (is_zero()) return *this;
  mpz_class neg = prime_power(p_, k_) - u_;
  return {p_, v_, std::move(neg), k_};
}

ScaledPAdic operator+(const ScaledPAdic& a, const ScaledPAdic& b) {
  require_same_prime(a, b);
  const std::uint32_t p = a.p_;
  const std::int64_t absolute = std::min(a.absolute_precision(), b.absolute_precision());
  if (a.is_zero()) return b.with_absolute_precision(absolute);
  if (b.is_zero()) return a.with_absolute_precision(absolute);
  const std::int64_t vmin = std::min(a.v_, b.v_);
  if (vmin >= absolute) return ScaledPAdic::zero(p, absolute);
  mpz_class x = 0;
  for (const ScaledPAdic* t : {&a, &b}) {
    if (t->v_ < absolute) x += t->u_ * prime_power(p, static_cast<int>(t->v_ - vmin));
  }
  return ScaledPAdic::normalized(p, vmin, std::move(x), absolute);
}

ScaledPAdic operator-(const ScaledPAdic& a, const ScaledPAdic& b) { return a + (-b); }

ScaledPAdic operator*(const ScaledPAdic& a, const ScaledPAdic& b) {
  require_same_prime(a, b);
  const std::uint32_t p = a.p_;
  if (a.is_zero() && b.is_zero()) return ScaledPAdic::zero(p, a.v_ + b.v_);
  if (a.is_zero()) return ScaledPAdic::zero(p, a.v_ + b.v_);
  if (b.is_zero()) return ScaledPAdic::zero(p, a.v_ + b.v_);
  const int k = std::min(a.k_, b.k_);
  mpz_class u = a.u_ * b.u_;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), prime_power(p, k).get_mpz_t());
  return {p, a.v_ + b.v_, std::move(u), k};
}

ScaledPAdic operator/(const ScaledPAdic& a, const ScaledPAdic& b) { return a * b.inverse(); }

std::ostream& operator<<(std::ostream& os, const ScaledPAdic& x) {
  if (x.is_zero()) return os << "O(" << x.prime() << "^" << x.valuation() << ")";
  return os << x.prime() << "^" << x.valuation() << "·" << x.unit().get_str() << " + O(" << x.prime() << "^"
            << x.absolute_precision() << ")";
}

}  // namespace harmsum
