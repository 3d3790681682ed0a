#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace harmsum {

/// Arbitrary-precision natural number. Solutions reach several hundred digits.
using BigNatural = mpz_class;

std::string to_decimal(const BigNatural& n);

/// Parses a non-negative decimal string; throws std::invalid_argument otherwise.
BigNatural from_decimal(std::string_view text);

std::size_t decimal_digits(const BigNatural& n);

/// Base-p digits, most significant first. Zero yields an empty vector.
std::vector<std::uint32_t> to_base_digits(const BigNatural& n, std::uint32_t base);
BigNatural from_base_digits(std::span<const std::uint32_t> digits, std::uint32_t base);

/// ν_p(x) for x ≠ 0.
unsigned valuation(const mpz_class& x, std::uint32_t p);

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> primes_below(std::uint32_t bound);

/// Exact integer power p^e.
mpz_class pow_ui(std::uint32_t p, unsigned long e);

}  // namespace harmsum
