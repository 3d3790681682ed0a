#include "harmsum/combinatorics.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

// Rows are appended under the lock and never modified afterwards.
struct Triangle {
  std::mutex mu;
  std::deque<std::vector<mpz_class>> rows;
};

const std::vector<mpz_class>& stirling_second_row(unsigned r) {
  static Triangle t;
  std::lock_guard lock(t.mu);
  if (t.rows.empty()) t.rows.push_back({mpz_class(1)});
  while (t.rows.size() <= r) {
    const auto& prev = t.rows.back();
    const unsigned n = static_cast<unsigned>(t.rows.size());
    std::vector<mpz_class> row(n + 1);
    row[0] = 0;
    for (unsigned j = 1; j <= n; ++j) {
      mpz_class left = j < prev.size() ? mpz_class(prev[j] * j) : mpz_class(0);
      row[j] = left + prev[j - 1];
    }
    t.rows.push_back(std::move(row));
  }
  return t.rows[r];
}

const std::vector<mpz_class>& stirling_first_row(unsigned k) {
  static Triangle t;
  std::lock_guard lock(t.mu);
  if (t.rows.empty()) t.rows.push_back({mpz_class(1)});
  while (t.rows.size() <= k) {
    const auto& prev = t.rows.back();
    const unsigned n = static_cast<unsigned>(t.rows.size());  // building row n from row n−1
    std::vector<mpz_class> row(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
      mpz_class v = 0;
      if (m >= 1) v += prev[m - 1];
      if (m < prev.size()) v -= prev[m] * (n - 1);
      row[m] = v;
    }
    t.rows.push_back(std::move(row));
  }
  return t.rows[k];
}

}  // namespace

mpz_class stirling_second(unsigned r, unsigned j) {
  if (j > r) return 0;
  return stirling_second_row(r)[j];
}

mpz_class stirling_first_signed(unsigned k, unsigned m) {
  if (m > k) return 0;
  return stirling_first_row(k)[m];
}

mpq_class bernoulli(unsigned m) {
  static std::mutex mu;
  static std::vector<mpq_class> cache{mpq_class(1)};
  std::lock_guard lock(mu);
  while (cache.size() <= m) {
    const unsigned n = static_cast<unsigned>(cache.size());
    mpq_class acc = 0;
    for (unsigned j = 0; j < n; ++j) acc += mpq_class(binomial(n + 1, j)) * cache[j];
    mpq_class b = -acc / (n + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[m];
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::vector<mpq_class> faulhaber_coefficients(unsigned m) {
  // Σ_{r<n} r^m = (1/(m+1)) Σ_{k=0}^{m} C(m+1,k) B_k n^{m+1−k}
  std::vector<mpq_class> c(m + 2, mpq_class(0));
  for (unsigned k = 0; k <= m; ++k) {
    mpq_class term = mpq_class(binomial(m + 1, k)) * bernoulli(k) / (m + 1);
    term.canonicalize();
    c[m + 1 - k] += term;
  }
  return c;
}

std::vector<ScaledPAdic> geometric_moments(unsigned max_r, const ScaledPAdic& x) {
  const std::uint32_t p = x.prime();
  if (x.absolute_precision() >= ScaledPAdic::kExact) throw std::invalid_argument("x needs a finite precision");
  const int known = static_cast<int>(std::max<std::int64_t>(x.absolute_precision(), 1));
  const ScaledPAdic one_minus_x = ScaledPAdic::from_rational(p, mpq_class(1), known) - x;
  if (one_minus_x.is_zero()) throw SingularPoint("geometric moments at x ≡ 1 to working precision");
  const ScaledPAdic inv = one_minus_x.inverse();
  const ScaledPAdic ratio = x * inv;
  const int digits = inv.relative_precision();

  // ratio^j / (1−x) for j = 0..max_r
  std::vector<ScaledPAdic> powers;
  powers.reserve(max_r + 1);
  powers.push_back(inv);
  for (unsigned j = 1; j <= max_r; ++j) powers.push_back(powers.back() * ratio);

  std::vector<ScaledPAdic> out;
  out.reserve(max_r + 1);
  mpz_class fact;
  for (unsigned r = 0; r <= max_r; ++r) {
    const auto& row = stirling_second_row(r);
    ScaledPAdic acc = ScaledPAdic::zero(p);
    fact = 1;
    for (unsigned j = 0; j <= r; ++j) {
      if (j > 0) fact *= j;
      if (row[j] == 0) continue;
      const mpz_class c = fact * row[j];
      acc += ScaledPAdic::from_rational(p, mpq_class(c), digits) * powers[j];
    }
    out.push_back(acc);
  }
  return out;
}

ResidueValue finite_polylog(unsigned r, const ResidueValue& x) {
  const std::uint32_t p = x.prime();
  const int s = x.precision();
  const ResidueValue one = ResidueValue::one(p, s);
  const ResidueValue denom = one - x;
  if (!denom.is_unit()) throw SingularPoint("Li_{-r}(x) has a pole at x ≡ 1 (mod p)");
  const ResidueValue inv = mod_inverse(denom);
  const ResidueValue ratio = x * inv;
  const auto& row = stirling_second_row(r);
  ResidueValue acc = ResidueValue::zero(p, s);
  ResidueValue power = inv;
  mpz_class fact = 1;
  for (unsigned j = 0; j <= r; ++j) {
    if (j > 0) {
      fact *= j;
      power *= ratio;
    }
    acc += ResidueValue(p, s, fact * row[j]) * power;
  }
  if (r == 0) acc -= one;
  return acc;
}

ResidueValue faulhaber_sum(const BigNatural& n, unsigned r, std::uint32_t p, int s) {
  if (n == 0) return ResidueValue::zero(p, s);
  const auto coeffs = faulhaber_coefficients(r);
  const mpz_class top = n + 1;
  mpq_class total = 0;
  mpz_class power = 1;
  for (const auto& c : coeffs) {
    total += c * mpq_class(power);
    power *= top;
  }
  total.canonicalize();
  if (total.get_den() != 1) throw std::logic_error("Faulhaber sum is not an integer");
  mpz_class value = total.get_num();
  if (r == 0) value -= 1;  // drop the 0^0 term
  return {p, s, value};
}

namespace {

ResidueValue power_sum_near_one(const BigNatural& n, unsigned r, const ResidueValue& x) {
  const std::uint32_t p = x.prime();
  const int s = x.precision();
  const mpz_class lift = x.residue();
  const int nu = static_cast<int>(valuation(mpz_class(1 - lift), p));
  int working = s + static_cast<int>(r + 2) * nu + 4;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const ScaledPAdic xs = ScaledPAdic::from_integer(p, lift, working);
    const auto moments = geometric_moments(r, xs);
    const ResidueValue xw(p, working, lift);
    const ScaledPAdic x_pow_n = ScaledPAdic::from_residue(xw.pow(n));
    const ScaledPAdic n_w = ScaledPAdic::from_integer(p, n, working);
    const ScaledPAdic one = ScaledPAdic::from_integer(p, 1, working);

    // Σ_{j=1}^{n} j^r x^j = Li_{−r}(x) − x^n Σ_m C(r,m) n^m Li_{−(r−m)}(x)
    auto li = [&](unsigned k) { return k == 0 ? moments[0] - one : moments[k]; };
    ScaledPAdic tail = ScaledPAdic::zero(p);
    ScaledPAdic n_pow = one;
    for (unsigned m = 0; m <= r; ++m) {
      if (m > 0) n_pow *= n_w;
      tail += ScaledPAdic::from_rational(p, mpq_class(binomial(r, m)), working) * n_pow * li(r - m);
    }
    const ScaledPAdic total = li(r) - x_pow_n * tail;
    if (total.absolute_precision() >= s) return total.to_residue(s);
    working += 2 * (s - static_cast<int>(total.absolute_precision())) + 4;
  }
  throw PrecisionLoss("power_sum could not reach the requested precision");
}

}  // namespace

ResidueValue power_sum(const BigNatural& n, unsigned r, const ResidueValue& x) {
  const std::uint32_t p = x.prime();
  const int s = x.precision();
  if (n == 0) return ResidueValue::zero(p, s);
  if (x.residue() == 1) return faulhaber_sum(n, r, p, s);
  const ResidueValue one = ResidueValue::one(p, s);
  if (!(one - x).is_unit()) return power_sum_near_one(n, r, x);

  const ResidueValue n_res(p, s, n);
  const ResidueValue x_pow_n = x.pow(n);
  ResidueValue tail = ResidueValue::zero(p, s);
  ResidueValue n_pow = one;
  for (unsigned m = 0; m <= r; ++m) {
    if (m > 0) n_pow *= n_res;
    tail += ResidueValue(p, s, binomial(r, m)) * n_pow * finite_polylog(r - m, x);
  }
  return finite_polylog(r, x) - x_pow_n * tail;
}

}  // namespace harmsum
