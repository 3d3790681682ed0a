#include "harmsum/bignum.hpp"

#include <algorithm>
#include <stdexcept>

namespace harmsum {

std::string to_decimal(const BigNatural& n) { return n.get_str(10); }

BigNatural from_decimal(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a decimal natural: '" + std::string(text) + "'");
  }
  return BigNatural(std::string(text), 10);
}

std::size_t decimal_digits(const BigNatural& n) {
  if (n == 0) return 1;
  return to_decimal(n).size();
}

std::vector<std::uint32_t> to_base_digits(const BigNatural& n, std::uint32_t base) {
  std::vector<std::uint32_t> digits;
  mpz_class rest = n;
  while (rest > 0) {
    digits.push_back(static_cast<std::uint32_t>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base)));
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigNatural from_base_digits(std::span<const std::uint32_t> digits, std::uint32_t base) {
  BigNatural n = 0;
  for (auto d : digits) {
    n *= base;
    n += d;
  }
  return n;
}

unsigned valuation(const mpz_class& x, std::uint32_t p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  mpz_class t = x;
  unsigned v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 3) return out;
  std::vector<bool> composite(bound, false);
  for (std::uint32_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

mpz_class pow_ui(std::uint32_t p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

}  // namespace harmsum
