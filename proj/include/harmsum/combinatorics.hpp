#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "harmsum/bignum.hpp"
#include "harmsum/residue.hpp"
#include "harmsum/scaled_padic.hpp"

namespace harmsum {

/// Stirling numbers of the second kind from a memoized exact triangle. Zero outside 0 ≤ j ≤ r.
mpz_class stirling_second(unsigned r, unsigned j);

/// Signed Stirling numbers of the first kind: x(x−1)…(x−k+1) = Σ_m s(k,m) x^m.
mpz_class stirling_first_signed(unsigned k, unsigned m);

/// Bernoulli numbers with B_1 = −1/2, exact and cached.
mpq_class bernoulli(unsigned m);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

/// Coefficients c_0..c_{m+1} with Σ_{r=0}^{n−1} r^m = Σ_i c_i n^i (0^0 = 1).
std::vector<mpq_class> faulhaber_coefficients(unsigned m);

/// Σ_{j≥0} j^r x^j (with 0^0 = 1) for r = 0..max_r, as closed forms in 1/(1−x).
/// Differs from Li_{−r}(x) only at r = 0, where it includes the j = 0 term.
std::vector<ScaledPAdic> geometric_moments(unsigned max_r, const ScaledPAdic& x);

/// Li_{−r}(x) = Σ_{j≥1} j^r x^j. Throws SingularPoint when x ≡ 1 (mod p).
ResidueValue finite_polylog(unsigned r, const ResidueValue& x);

/// Σ_{j=1}^{n} j^r x^j mod p^s for arbitrarily large n.
ResidueValue power_sum(const BigNatural& n, unsigned r, const ResidueValue& x);

/// Σ_{j=1}^{n} j^r mod p^s from the exact Faulhaber polynomial.
ResidueValue faulhaber_sum(const BigNatural& n, unsigned r, std::uint32_t p, int s);

}  // namespace harmsum
