#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "harmsum/bignum.hpp"
#include "harmsum/tree_search.hpp"

namespace harmsum {

/// J_{p^s}(w) for w = base^p, read off the residues stored by a completed search.
struct PrimePowerResult {
  std::uint32_t p = 0;
  int s = 1;
  /// The class base^p mod p^s the set belongs to.
  mpz_class base_residue;
  std::string base_description;
  std::vector<BigNatural> elements;
  bool complete = true;
  /// Parent elements whose stored residue had too few digits to decide.
  std::vector<BigNatural> undecided;
};

PrimePowerResult prime_power_filter(const SearchResult& result, int s);

/// Some u ≡ x (mod p) with u^p ≡ x (mod p^s), if x is a p-th power modulo p^s.
std::optional<mpz_class> pth_root_mod(std::uint32_t p, const mpz_class& x, int s);

/// J_{p^s}(x) for a unit x. Searches J_p(u) for a p-th root u of x modulo p^s and filters it.
/// Throws UnreachableBase when x is not a p-th power modulo p^s.
PrimePowerResult prime_power_set(std::uint32_t p, const mpz_class& x, int s, const SearchConfig& config = {});

/// One factor J_{p^s}(y) of a composite intersection.
struct FactorSet {
  mpz_class modulus;
  std::vector<BigNatural> elements;
  bool complete = true;
};

FactorSet as_factor(const SearchResult& result);
FactorSet as_factor(const PrimePowerResult& result);

/// J_N(y) = ∩ J_{p_i^{s_i}}(y) for N = Π p_i^{s_i}. Throws IncompleteFactor if any factor is incomplete.
std::vector<BigNatural> intersect_composite(std::span<const FactorSet> factors);

/// 2^{p−1} ≡ 1 (mod p²). Below kWieferichCrossCheckBound the answer is also checked against
/// G_{p−1}(2) ≡ −(2^p − 2)/p (mod p), and a disagreement throws std::logic_error.
bool wieferich_check(std::uint32_t p);
inline constexpr std::uint32_t kWieferichCrossCheckBound = 5000;

/// Odd primes below pmax passing wieferich_check.
std::vector<std::uint32_t> wieferich_scan(std::uint32_t pmax);

struct DensityStats {
  std::uint64_t empty = 0;
  std::uint64_t total = 0;
  double ratio = 0.0;
};

/// Share of empty sets. Every input must be complete (std::invalid_argument otherwise).
DensityStats density_stats(std::span<const SearchResult> results);

}  // namespace harmsum
