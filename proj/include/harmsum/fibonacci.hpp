#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "harmsum/bignum.hpp"
#include "harmsum/residue.hpp"
#include "harmsum/scaled_padic.hpp"
#include "harmsum/series.hpp"
#include "harmsum/tree_search.hpp"

namespace harmsum {

/// (p/5): 0 for p = 5, +1 for p ≡ ±1 (mod 5), −1 otherwise.
int legendre_p5(std::uint32_t p);

/// Fibonacci residues modulo p^s with a table of the first few values.
class FibContext {
 public:
  FibContext(std::uint32_t p, int s, std::size_t cached = 1024);

  std::uint32_t prime() const { return p_; }
  int legendre() const { return legendre_; }
  int precision() const { return s_; }
  /// F_j mod p^s, from the table when j is small.
  ResidueValue operator()(const BigNatural& j) const;

 private:
  std::uint32_t p_;
  int legendre_;
  int s_;
  std::vector<mpz_class> table_;
};

/// F_j mod p^s by fast doubling.
ResidueValue fib_mod(const BigNatural& j, std::uint32_t p, int s);

/// F_j exactly, for small j.
mpz_class fib_exact(unsigned long j);

/// f_n = Σ_{j≤n} F_j/j known to absolute precision s.
ScaledPAdic f_direct(std::uint64_t n, std::uint32_t p, int s, std::uint64_t budget = kDirectSumBudget);

/// f^{(1)}_n = Σ_{k≤n} F_{pk}/k known to absolute precision s.
ScaledPAdic f1_direct(std::uint64_t n, std::uint32_t p, int s, std::uint64_t budget = kDirectSumBudget);

enum class RecurrenceForm {
  /// f^{(1)}_{pn+j} ≡ e f^{(1)}_n/p + e² F_n Σ_{k≤j} F_{k+1}/k + e² (F_{n+1}−1) Σ_{k<p} F_{k+1}/k, as published.
  Published,
  /// The published right side plus e·F_{n−e}·f_j, which the published form drops.
  Corrected,
};

/// Compares both sides of the descent congruence mod p by direct summation. Throws UnsupportedPrime for p = 5.
bool f1_recurrence_check(std::uint32_t p, std::uint64_t n, std::uint32_t j,
                         RecurrenceForm form = RecurrenceForm::Published, std::uint64_t budget = kDirectSumBudget);

/// F_{p^s j} ≡ (p/5) F_{p^{s−1} j} (mod p^s).
bool fib_congruence_check(std::uint32_t p, int s, const BigNatural& j);

struct FibSearchConfig {
  /// Nodes above this index cannot be expanded: f^{(1)}_n/p then needs more terms than allowed.
  std::uint64_t budget = kDirectSumBudget;
  std::uint64_t max_elements = 10'000'000;
};

/// {n : f_n ≡ 0 (mod p)} by descent with the corrected recurrence. Each expanded node takes
/// f^{(1)}_n mod p² from one running direct sum, so the status is PrecisionExhausted as soon
/// as a member lies beyond the budget. The result carries y = base = 0.
SearchResult fib_search(std::uint32_t p, const FibSearchConfig& config = {});

struct Conjecture2Report {
  bool holds = true;
  std::optional<std::uint64_t> counterexample;
  std::uint64_t checked = 0;
};

/// f_{4n} ≡ 0 (mod 5) for n = 1..n_max, with one running sum.
Conjecture2Report conjecture2_scan(std::uint64_t n_max);

}  // namespace harmsum
