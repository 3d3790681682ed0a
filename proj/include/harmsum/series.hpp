#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "harmsum/bignum.hpp"
#include "harmsum/residue.hpp"
#include "harmsum/scaled_padic.hpp"

namespace harmsum {

/// Which closed forms back a coefficient set.
enum class CoefficientRoute {
  Unit,      ///< y ≢ 1 (mod p): polylog closed forms are p-integral.
  NearOne,   ///< y ≡ 1 (mod p), y ≠ 1: closed forms carry negative valuations.
  Harmonic,  ///< y = 1: Faulhaber polynomials, the second piece vanishes.
};

/// Precomputed data for evaluating the descent step
///   Δ(n) = G_{pn}(y^p) − G_n(y^p)/p
///        ≡ [A_0 − y^{p²n} Σ A_i n^i] + [N_0 − y^{pn} Σ N_i n^i]   (mod p^s)
/// for every natural n. Immutable after construction.
class CoefficientSet {
 public:
  std::uint32_t prime() const { return p_; }
  const mpz_class& base() const { return y_; }
  int precision() const { return s_; }
  int working_precision() const { return working_; }
  CoefficientRoute route() const { return route_; }

  const std::vector<ScaledPAdic>& a() const { return a_; }
  const std::vector<ScaledPAdic>& n_coefficients() const { return n_; }
  const ResidueValue& z() const { return z_; }

  /// Common power of p clearing every negative valuation among the coefficients.
  int scale() const { return scale_; }
  /// y^{p²} and y^p modulo p^{s+scale}.
  const mpz_class& x() const { return x_; }
  const mpz_class& w() const { return w_; }

  ResidueValue delta(const BigNatural& n, int precision) const;

  /// Δ(n) mod p^{precision} from n, y^{p²n} and y^{pn}, each given modulo p^{precision+scale()}.
  mpz_class delta_raw(const mpz_class& n_mod, const mpz_class& x_pow_n, const mpz_class& w_pow_n,
                      int precision) const;

 private:
  friend CoefficientSet compute_coefficients(std::uint32_t p, const mpz_class& y, int s);

  std::uint32_t p_ = 0;
  mpz_class y_;
  int s_ = 0;
  int working_ = 0;
  CoefficientRoute route_ = CoefficientRoute::Unit;
  std::vector<ScaledPAdic> a_;
  std::vector<ScaledPAdic> n_;
  ResidueValue z_{3, 1, 0L};

  int scale_ = 0;
  mpz_class x_;
  mpz_class w_;
  // p^scale·A_i modulo p^{s+scale} written as p^{u_i}·ã_i, where u_i is the least
  // valuation among indices ≥ i. Horner then runs with a shrinking modulus.
  struct Scaled {
    mpz_class constant;
    std::vector<mpz_class> reduced;
    std::vector<int> floor;
  };
  Scaled a_scaled_;
  Scaled n_scaled_;

  static Scaled prepare(const std::vector<ScaledPAdic>& coeffs, int scale, int s);
  mpz_class horner(const Scaled& c, const mpz_class& n, int digits) const;
};

/// z = p^{−2} Σ_{j≥1} ((−1)^{j+1}/j)(y^{p(p−1)} − 1)^j modulo p^s.
ResidueValue compute_z(std::uint32_t p, const mpz_class& y, int s);

/// Throws UnsupportedPrime for p = 2, InvalidBase when p | y or y ≤ 0.
CoefficientSet compute_coefficients(std::uint32_t p, const mpz_class& y, int s);

inline ResidueValue delta(const CoefficientSet& coeffs, const BigNatural& n, int precision) {
  return coeffs.delta(n, precision);
}

/// Term budget for direct summation.
inline constexpr std::uint64_t kDirectSumBudget = 10'000'000;

/// G_n(x) = Σ_{j=1}^{n} x^j/j as a p-adic number known to absolute precision s.
/// The value may have negative valuation once n ≥ p.
ScaledPAdic direct_G(std::uint64_t n, const mpz_class& x, std::uint32_t p, int s,
                     std::uint64_t budget = kDirectSumBudget);

/// Same, for x given as a unit residue (well defined modulo p^{x.precision()}).
ScaledPAdic direct_G(std::uint64_t n, const ResidueValue& x, int s, std::uint64_t budget = kDirectSumBudget);

}  // namespace harmsum
