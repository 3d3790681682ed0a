#include "harmsum/oracle.hpp"

#include <functional>
#include <limits>
#include <stdexcept>

#include "harmsum/bignum.hpp"
#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 inverse64(u64 a, u64 m) {
  std::int64_t g = static_cast<std::int64_t>(m), x = 0, x1 = 1, r = static_cast<std::int64_t>(a % m);
  while (r != 0) {
    const std::int64_t q = g / r;
    std::int64_t t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<u64>((x % sm + sm) % sm);
}

// The running sum is kept as p^L·(sum) modulo p^{s+L}, where p^L bounds every denominator.
// `next_numerator(mod)` yields the next numerator (y^j or F_j) reduced mod `mod`.
std::vector<u64> scan(std::uint32_t p, u64 n_max, int s, const std::function<mpz_class(const mpz_class&)>& next_big,
                      const std::function<u64(u64)>& next_small) {
  if (n_max > kScanGuard) throw BudgetExceeded("scan bound above " + std::to_string(kScanGuard));
  if (!is_prime(p)) throw UnsupportedPrime(std::to_string(p) + " is not prime");
  if (s < 1) throw std::invalid_argument("s must be ≥ 1");
  int shift = 0;
  for (u64 t = 1; t <= n_max / p; t *= p) ++shift;

  std::vector<u64> hits;
  const mpz_class mod_big = pow_ui(p, static_cast<unsigned long>(s + shift));
  if (mod_big < mpz_class(static_cast<unsigned long>(std::numeric_limits<std::int64_t>::max() / 4))) {
    const u64 mod = mod_big.get_ui();
    const u64 top = pow_ui(p, static_cast<unsigned long>(shift)).get_ui();
    u64 sum = 0;
    for (u64 j = 1; j <= n_max; ++j) {
      const u64 num = next_small(mod);
      u64 core = j, scale = top;
      while (core % p == 0) {
        core /= p;
        scale /= p;
      }
      const u64 term = static_cast<u64>(static_cast<u128>(num) * inverse64(core, mod) % mod);
      sum = static_cast<u64>((sum + static_cast<u128>(term) * scale) % mod);
      if (sum == 0) hits.push_back(j);
    }
    return hits;
  }
  mpz_class sum = 0, inv, t, core_z;
  for (u64 j = 1; j <= n_max; ++j) {
    const mpz_class num = next_big(mod_big);
    u64 core = j;
    int v = 0;
    while (core % p == 0) {
      core /= p;
      ++v;
    }
    core_z = static_cast<unsigned long>(core);
    mpz_invert(inv.get_mpz_t(), core_z.get_mpz_t(), mod_big.get_mpz_t());
    t = num * inv * pow_ui(p, static_cast<unsigned long>(shift - v));
    sum += t;
    mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), mod_big.get_mpz_t());
    if (sum == 0) hits.push_back(j);
  }
  return hits;
}

void require_budget(u64 n) {
  if (n > kExactBudget) {
    throw BudgetExceeded("exact rational sums are limited to " + std::to_string(kExactBudget) + " terms");
  }
}

}  // namespace

ScanReport brute_scan(std::uint32_t p, const mpz_class& y, std::uint64_t n_max, int s) {
  ScanReport out{p, "y=" + y.get_str(), n_max, s, {}};
  mpz_class big_power = 1;
  u64 small_power = 1;
  bool small_init = false;
  u64 y_small = 0;
  out.hits = scan(
      p, n_max, s,
      [&](const mpz_class& mod) {
        big_power *= y;
        mpz_fdiv_r(big_power.get_mpz_t(), big_power.get_mpz_t(), mod.get_mpz_t());
        return big_power;
      },
      [&](u64 mod) {
        if (!small_init) {
          mpz_class r;
          mpz_fdiv_r_ui(r.get_mpz_t(), y.get_mpz_t(), mod);
          y_small = r.get_ui();
          small_init = true;
        }
        small_power = static_cast<u64>(static_cast<u128>(small_power) * y_small % mod);
        return small_power;
      });
  return out;
}

ScanReport brute_fib_scan(std::uint32_t p, std::uint64_t n_max, int s) {
  ScanReport out{p, "fibonacci", n_max, s, {}};
  mpz_class a = 0, b = 1;
  u64 sa = 0, sb = 1;
  out.hits = scan(
      p, n_max, s,
      [&](const mpz_class& mod) {
        mpz_class c = a + b;
        a = b;
        b = c;
        mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t());
        return a;
      },
      [&](u64 mod) {
        const u64 c = (sa + sb) % mod;
        sa = sb;
        sb = c;
        return sa;
      });
  return out;
}

mpq_class exact_rational_G(std::uint64_t n, const mpq_class& y) {
  require_budget(n);
  mpq_class sum = 0, power = 1;
  for (u64 j = 1; j <= n; ++j) {
    power *= y;
    sum += power / mpq_class(static_cast<unsigned long>(j));
  }
  sum.canonicalize();
  return sum;
}

mpq_class exact_rational_f(std::uint64_t n) {
  require_budget(n);
  mpq_class sum = 0;
  mpz_class a = 0, b = 1;
  for (u64 j = 1; j <= n; ++j) {
    sum += mpq_class(b, mpz_class(static_cast<unsigned long>(j)));
    mpz_class c = a + b;
    a = b;
    b = c;
  }
  sum.canonicalize();
  return sum;
}

bool rational_vanishes(const mpq_class& q, std::uint32_t p, int s) {
  if (q == 0) return true;
  mpz_class num = q.get_num();
  const unsigned long up = mpz_remove(num.get_mpz_t(), num.get_mpz_t(), mpz_class(p).get_mpz_t());
  mpz_class den = q.get_den();
  const unsigned long down = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
  return static_cast<long>(up) - static_cast<long>(down) >= s;
}

}  // namespace harmsum
