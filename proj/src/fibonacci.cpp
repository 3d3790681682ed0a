#include "harmsum/fibonacci.hpp"

#include <cmath>
#include <stdexcept>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 invmod(u64 a, u64 m) {
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
  if (g != 1) throw NonInvertible("no inverse modulo " + std::to_string(m));
  return static_cast<u64>((x % static_cast<std::int64_t>(m) + static_cast<std::int64_t>(m)) %
                          static_cast<std::int64_t>(m));
}

int log_floor(u64 n, std::uint32_t p) {
  int e = 0;
  u64 t = 1;
  while (t <= n / p) {
    t *= p;
    ++e;
  }
  return e;
}

void check_prime(std::uint32_t p) {
  if (!is_prime(p)) throw UnsupportedPrime(std::to_string(p) + " is not prime");
}

// (F_k, F_{k+1}) mod m.
std::pair<mpz_class, mpz_class> fib_pair(const mpz_class& k, const mpz_class& m) {
  mpz_class a = 0, b = 1, c, d;
  for (std::size_t i = mpz_sizeinbase(k.get_mpz_t(), 2); i-- > 0;) {
    c = a * (2 * b - a);
    d = a * a + b * b;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      a = d;
      b = c + d;
      mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
    } else {
      a = c;
      b = d;
    }
  }
  if (k == 0) {
    mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
  }
  return {a, b};
}

u64 fib_small_mod(const mpz_class& k, u64 m) { return fib_pair(k, mpz_class(static_cast<unsigned long>(m))).first.get_ui(); }

// Σ_{j≤n} term(j)/j in fixed point: p^L·(sum) modulo p^{s+L}, L = ⌊log_p n⌋.
template <class Term>
ScaledPAdic fixed_point_sum(std::uint64_t n, std::uint32_t p, int s, Term&& term) {
  const int shift = n >= 1 ? log_floor(n, p) : 0;
  const mpz_class& mod = prime_power(p, s + shift);
  mpz_class sum = 0, inv, t;
  for (std::uint64_t j = 1; j <= n; ++j) {
    std::uint64_t core = j;
    int v = 0;
    while (core % p == 0) {
      core /= p;
      ++v;
    }
    const mpz_class cc(static_cast<unsigned long>(core));
    mpz_invert(inv.get_mpz_t(), cc.get_mpz_t(), mod.get_mpz_t());
    t = term(mod) * inv;
    t *= prime_power(p, shift - v);
    sum += t;
    mpz_tdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), mod.get_mpz_t());
  }
  return ScaledPAdic::from_integer(p, sum, s + shift).shifted(-shift);
}

bool vanishes_mod_p(const ScaledPAdic& x) {
  if (x.absolute_precision() < 1) throw PrecisionLoss("too few digits to decide a congruence mod p");
  return x.valuation() >= 1;
}

// Σ_{k=1}^{j} F_{k+1}/k and f_j = Σ_{k=1}^{j} F_k/k modulo p, for j < p.
struct SmallSums {
  std::vector<u64> shifted;
  std::vector<u64> plain;
};

SmallSums small_sums(std::uint32_t p) {
  SmallSums out{std::vector<u64>(p, 0), std::vector<u64>(p, 0)};
  u64 f0 = 0, f1 = 1;  // F_k, F_{k+1} at k = 0
  for (std::uint32_t k = 1; k < p; ++k) {
    const u64 f2 = (f0 + f1) % p;
    f0 = f1;
    f1 = f2;  // now F_k, F_{k+1}
    const u64 inv = invmod(k, p);
    out.shifted[k] = (out.shifted[k - 1] + mulmod(f1, inv, p)) % p;
    out.plain[k] = (out.plain[k - 1] + mulmod(f0, inv, p)) % p;
  }
  return out;
}

}  // namespace

int legendre_p5(std::uint32_t p) {
  switch (p % 5) {
    case 0:
      return 0;
    case 1:
    case 4:
      return 1;
    default:
      return -1;
  }
}

FibContext::FibContext(std::uint32_t p, int s, std::size_t cached) : p_(p), legendre_(legendre_p5(p)), s_(s) {
  check_prime(p);
  if (s < 1) throw std::invalid_argument("precision must be ≥ 1");
  const mpz_class& mod = prime_power(p, s);
  table_.reserve(cached + 2);
  table_.push_back(0);
  table_.push_back(1);
  while (table_.size() < cached) table_.push_back((table_[table_.size() - 1] + table_[table_.size() - 2]) % mod);
}

ResidueValue FibContext::operator()(const BigNatural& j) const {
  if (j >= 0 && j < table_.size()) return {p_, s_, table_[j.get_ui()]};
  return fib_mod(j, p_, s_);
}

ResidueValue fib_mod(const BigNatural& j, std::uint32_t p, int s) {
  if (j < 0) throw std::invalid_argument("Fibonacci index must be natural");
  return {p, s, fib_pair(j, prime_power(p, s)).first};
}

mpz_class fib_exact(unsigned long j) {
  mpz_class r;
  mpz_fib_ui(r.get_mpz_t(), j);
  return r;
}

ScaledPAdic f_direct(std::uint64_t n, std::uint32_t p, int s, std::uint64_t budget) {
  if (n > budget) throw BudgetExceeded("f_n with n = " + std::to_string(n) + " exceeds the summation budget");
  check_prime(p);
  mpz_class a = 0, b = 1;  // F_{j−1}, F_j
  return fixed_point_sum(n, p, s, [&](const mpz_class& mod) {
    mpz_class c = a + b;
    a = b;
    b = c;
    mpz_tdiv_r(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    mpz_tdiv_r(b.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t());
    return a;
  });
}

ScaledPAdic f1_direct(std::uint64_t n, std::uint32_t p, int s, std::uint64_t budget) {
  if (n > budget) throw BudgetExceeded("f1_n with n = " + std::to_string(n) + " exceeds the summation budget");
  check_prime(p);
  const mpz_class fp = fib_exact(p), fp1 = fib_exact(p + 1), fpm1 = fib_exact(p - 1);
  mpz_class a = 0, b = 1;  // F_{pk}, F_{pk−1} at k = 0
  return fixed_point_sum(n, p, s, [&](const mpz_class& mod) {
    mpz_class na = a * fp1 + b * fp;
    mpz_class nb = a * fp + b * fpm1;
    mpz_tdiv_r(a.get_mpz_t(), na.get_mpz_t(), mod.get_mpz_t());
    mpz_tdiv_r(b.get_mpz_t(), nb.get_mpz_t(), mod.get_mpz_t());
    return a;
  });
}

bool f1_recurrence_check(std::uint32_t p, std::uint64_t n, std::uint32_t j, RecurrenceForm form,
                         std::uint64_t budget) {
  check_prime(p);
  if (p == 5) throw UnsupportedPrime("the descent recurrence needs (p/5) ≠ 0");
  if (j >= p) throw std::invalid_argument("j must be below p");
  const std::uint64_t m = static_cast<std::uint64_t>(p) * n + j;
  const int e = legendre_p5(p);
  const int prec = 3;
  const ScaledPAdic lhs = f1_direct(m, p, prec, budget);
  const ScaledPAdic quotient = f1_direct(n, p, prec + 1, budget).shifted(-1);

  // the quotient can carry valuation down to −log_p(n), which eats relative digits
  const int rel = prec + 2 + static_cast<int>(std::log(static_cast<double>(m) + 1) / std::log(p)) + 1;
  auto rational = [&](const mpq_class& q) { return ScaledPAdic::from_rational(p, q, rel); };
  mpq_class partial = 0, full = 0, fj = 0;
  for (std::uint32_t k = 1; k < p; ++k) {
    const mpq_class term(fib_exact(k + 1), k);
    if (k <= j) partial += term;
    full += term;
    if (k <= j) fj += mpq_class(fib_exact(k), k);
  }
  const mpz_class fn = fib_exact(n);
  const mpz_class fn1 = fib_exact(n + 1);
  ScaledPAdic rhs = rational(e) * quotient + rational(mpq_class(fn) * partial) +
                    rational(mpq_class(fn1 - 1) * full);
  if (form == RecurrenceForm::Corrected) {
    // F_{n−e}, with F_{−1} = 1.
    const mpz_class back = (n == 0 && e == 1) ? mpz_class(1) : fib_exact(static_cast<unsigned long>(n - e));
    rhs += rational(mpq_class(back * e) * fj);
  }
  return vanishes_mod_p(lhs - rhs);
}

bool fib_congruence_check(std::uint32_t p, int s, const BigNatural& j) {
  check_prime(p);
  if (s < 1) throw std::invalid_argument("s must be ≥ 1");
  const mpz_class outer = pow_ui(p, static_cast<unsigned long>(s)) * j;
  const mpz_class inner = pow_ui(p, static_cast<unsigned long>(s - 1)) * j;
  const ResidueValue lhs = fib_mod(outer, p, s);
  const ResidueValue rhs = ResidueValue(p, s, static_cast<long>(legendre_p5(p))) * fib_mod(inner, p, s);
  return lhs == rhs;
}

SearchResult fib_search(std::uint32_t p, const FibSearchConfig& config) {
  check_prime(p);
  if (p == 2) throw UnsupportedPrime("p = 2 is not supported");
  if (p == 5) throw UnsupportedPrime("p = 5 is covered by conjecture2_scan");
  if (p > 100'000) throw UnsupportedPrime("fib_search keeps its running sum in 64 bits and needs p ≤ 100000");
  const u64 e_mod = legendre_p5(p) == 1 ? 1 : p - 1;

  // The running sum p^L·f^{(1)}_k mod p^{L+2} must fit in 64 bits.
  int shift = log_floor(std::max<u64>(config.budget, 1), p);
  auto modulus = [&](int l) {
    u64 m = 1;
    for (int i = 0; i < l + 2; ++i) m *= p;
    return m;
  };
  while (shift > 0 && static_cast<double>(p) * p * std::pow(static_cast<double>(p), shift) > 4.0e18) --shift;
  const u64 mod = modulus(shift);
  u64 reach = 1;
  for (int i = 0; i <= shift; ++i) reach *= p;
  const u64 budget = std::min<u64>(config.budget, reach - 1);
  u64 top_scale = 1;
  for (int i = 0; i < shift; ++i) top_scale *= p;

  const u64 fp = fib_small_mod(p, mod), fp1 = fib_small_mod(p + 1, mod), fpm1 = fib_small_mod(p - 1, mod);
  u64 cur_k = 0, fa = 0, fb = 1, running = 0;  // F_{pk}, F_{pk−1}, p^L f^{(1)}_k
  auto advance_to = [&](u64 n) {
    while (cur_k < n) {
      ++cur_k;
      const u64 na = (mulmod(fa, fp1, mod) + mulmod(fb, fp, mod)) % mod;
      const u64 nb = (mulmod(fa, fp, mod) + mulmod(fb, fpm1, mod)) % mod;
      fa = na;
      fb = nb;
      u64 core = cur_k, scale = top_scale;
      while (core % p == 0) {
        core /= p;
        scale /= p;
      }
      running = (running + mulmod(mulmod(fa, invmod(core, mod), mod), scale, mod)) % mod;
    }
  };

  const SmallSums sums = small_sums(p);
  SearchResult r;
  r.p = p;
  r.y = 0;
  r.base = 0;
  r.precision_used = 2;

  std::vector<u64> level;
  for (std::uint32_t k = 1; k < p; ++k) {
    if (sums.plain[k] == 0) level.push_back(k);
  }
  while (!level.empty()) {
    r.level_profile.push_back(level.size());
    for (u64 n : level) {
      r.elements.emplace_back(static_cast<unsigned long>(n));
      r.residues.emplace_back(p, 1, 0L);
    }
    if (r.elements.size() > config.max_elements) {
      r.status = SearchStatus::NodeBudgetExceeded;
      break;
    }
    std::vector<u64> next;
    for (u64 n : level) {
      if (n > budget) {
        r.status = SearchStatus::PrecisionExhausted;
        break;
      }
      advance_to(n);
      if (running % (top_scale * p) != 0) {
        throw std::logic_error("fib_search node " + std::to_string(n) + " is not a zero of f^(1) mod p");
      }
      const u64 q = running / (top_scale * p) % p;
      const mpz_class nz(static_cast<unsigned long>(n));
      const u64 fn = fib_small_mod(nz, p);
      const u64 fn1 = fib_small_mod(nz + 1, p);
      const u64 fne = e_mod == 1 ? fib_small_mod(nz - 1, p) : fib_small_mod(nz + 1, p);
      const u64 base = (e_mod * q + mulmod((fn1 + p - 1) % p, sums.shifted[p - 1], p)) % p;
      for (std::uint32_t j = 0; j < p; ++j) {
        const u64 v = (base + mulmod(fn, sums.shifted[j], p) + mulmod(mulmod(e_mod, fne, p), sums.plain[j], p)) % p;
        if (v == 0) next.push_back(n * p + j);
      }
      ++r.nodes_expanded;
    }
    if (r.status != SearchStatus::Complete) break;
    level = std::move(next);
  }
  r.m_p = r.level_profile.size() + 1;
  return r;
}

Conjecture2Report conjecture2_scan(std::uint64_t n_max) {
  Conjecture2Report out;
  if (n_max == 0) return out;
  if (n_max > kDirectSumBudget) throw BudgetExceeded("conjecture 2 scan beyond the summation budget");
  const std::uint32_t p = 5;
  const u64 last = 4 * n_max;
  const int shift = log_floor(last, p);
  u64 scale = 1;
  for (int i = 0; i < shift; ++i) scale *= p;
  const u64 mod = scale * p;
  u64 a = 0, b = 1, sum = 0;  // F_{j−1}, F_j
  for (u64 j = 1; j <= last; ++j) {
    const u64 c = (a + b) % mod;
    a = b;
    b = c;
    u64 core = j, sc = scale;
    while (core % p == 0) {
      core /= p;
      sc /= p;
    }
    sum = (sum + mulmod(mulmod(a, invmod(core, mod), mod), sc, mod)) % mod;
    if (j % 4 == 0) {
      ++out.checked;
      if (sum != 0) {
        out.holds = false;
        out.counterexample = j / 4;
        return out;
      }
    }
  }
  return out;
}

}  // namespace harmsum
