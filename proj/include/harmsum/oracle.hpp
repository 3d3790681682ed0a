#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace harmsum {

/// Brute-force references. Nothing here touches the series or tree code.
struct ScanReport {
  std::uint32_t p = 0;
  /// "y=<value>" or "fibonacci".
  std::string subject;
  std::uint64_t n_max = 0;
  int s = 1;
  /// Sorted n ≤ n_max with the partial sum ≡ 0 (mod p^s).
  std::vector<std::uint64_t> hits;
};

inline constexpr std::uint64_t kScanGuard = 100'000'000;
inline constexpr std::uint64_t kExactBudget = 10'000;

/// n ≤ n_max with G_n(y) ≡ 0 (mod p^s), by one running sum. Any prime p, including 2.
ScanReport brute_scan(std::uint32_t p, const mpz_class& y, std::uint64_t n_max, int s = 1);

/// n ≤ n_max with f_n = Σ F_j/j ≡ 0 (mod p^s).
ScanReport brute_fib_scan(std::uint32_t p, std::uint64_t n_max, int s = 1);

/// Σ_{j≤n} y^j/j in lowest terms. Throws BudgetExceeded above kExactBudget terms.
mpq_class exact_rational_G(std::uint64_t n, const mpq_class& y);

/// Σ_{j≤n} F_j/j in lowest terms, same budget.
mpq_class exact_rational_f(std::uint64_t n);

/// ν_p(q) ≥ s for a rational q (true for q = 0).
bool rational_vanishes(const mpq_class& q, std::uint32_t p, int s);

}  // namespace harmsum
