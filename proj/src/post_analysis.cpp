#include "harmsum/post_analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "harmsum/errors.hpp"
#include "harmsum/series.hpp"

namespace harmsum {

PrimePowerResult prime_power_filter(const SearchResult& result, int s) {
  if (s < 1) throw std::invalid_argument("prime power exponent must be ≥ 1");
  const std::uint32_t p = result.p;
  const mpz_class& mod = prime_power(p, s);
  PrimePowerResult out;
  out.p = p;
  out.s = s;
  mpz_powm(out.base_residue.get_mpz_t(), result.base.get_mpz_t(), mpz_class(p).get_mpz_t(), mod.get_mpz_t());
  out.base_description = result.base.get_str() + "^" + std::to_string(p) + " ≡ " + out.base_residue.get_str() +
                         " (mod " + mod.get_str() + ")";
  out.complete = result.complete();
  for (std::size_t i = 0; i < result.elements.size(); ++i) {
    const ResidueValue& r = result.residues[i];
    const int known = std::min(r.precision(), s);
    if (!mpz_divisible_p(r.residue().get_mpz_t(), prime_power(p, known).get_mpz_t())) continue;
    if (known < s) {
      out.complete = false;
      out.undecided.push_back(result.elements[i]);
      continue;
    }
    out.elements.push_back(result.elements[i]);
  }
  return out;
}

std::optional<mpz_class> pth_root_mod(std::uint32_t p, const mpz_class& x, int s) {
  if (s < 1) throw std::invalid_argument("prime power exponent must be ≥ 1");
  mpz_class u;
  mpz_fdiv_r_ui(u.get_mpz_t(), x.get_mpz_t(), p);
  if (u == 0) return std::nullopt;
  const mpz_class pp(p);
  mpz_class power, target;
  // Digit j of u fixes digit j+1 of u^p, so u is settled one digit at a time.
  for (int j = 1; j + 1 < s; ++j) {
    const mpz_class& mod = prime_power(p, j + 2);
    mpz_fdiv_r(target.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    bool found = false;
    for (std::uint32_t t = 0; t < p && !found; ++t) {
      const mpz_class candidate = u + prime_power(p, j) * t;
      mpz_powm(power.get_mpz_t(), candidate.get_mpz_t(), pp.get_mpz_t(), mod.get_mpz_t());
      if (power == target) {
        u = candidate;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  const mpz_class& mod = prime_power(p, s);
  mpz_powm(power.get_mpz_t(), u.get_mpz_t(), pp.get_mpz_t(), mod.get_mpz_t());
  mpz_fdiv_r(target.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  if (power != target) return std::nullopt;
  return u;
}

PrimePowerResult prime_power_set(std::uint32_t p, const mpz_class& x, int s, const SearchConfig& config) {
  const auto root = pth_root_mod(p, x, s);
  if (!root) {
    throw UnreachableBase(x.get_str() + " is not a " + std::to_string(p) + "-th power modulo " +
                          prime_power(p, s).get_str() + "; J_{p^s}(x) is out of reach of the tree search");
  }
  return prime_power_filter(search_base(p, *root, config), s);
}

FactorSet as_factor(const SearchResult& result) {
  return {mpz_class(result.p), result.elements, result.complete()};
}

FactorSet as_factor(const PrimePowerResult& result) {
  return {prime_power(result.p, result.s), result.elements, result.complete};
}

std::vector<BigNatural> intersect_composite(std::span<const FactorSet> factors) {
  if (factors.empty()) throw std::invalid_argument("intersection of no factors");
  for (const auto& f : factors) {
    if (!f.complete) throw IncompleteFactor("factor modulo " + f.modulus.get_str() + " is incomplete");
  }
  std::vector<BigNatural> acc = factors.front().elements;
  std::sort(acc.begin(), acc.end());
  for (std::size_t i = 1; i < factors.size(); ++i) {
    std::vector<BigNatural> other = factors[i].elements;
    std::sort(other.begin(), other.end());
    std::vector<BigNatural> next;
    std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(next));
    acc = std::move(next);
  }
  return acc;
}

bool wieferich_check(std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw UnsupportedPrime(std::to_string(p) + " is not an odd prime");
  const mpz_class& p2 = prime_power(p, 2);
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), mpz_class(2).get_mpz_t(), p - 1, p2.get_mpz_t());
  const bool wieferich = r == 1;
  if (p < kWieferichCrossCheckBound) {
    const ScaledPAdic g = direct_G(p - 1, mpz_class(2), p, 2);
    const mpz_class g_mod_p = g.scaled_residue(0, 2) % p;
    mpz_class q;
    mpz_powm_ui(q.get_mpz_t(), mpz_class(2).get_mpz_t(), p, p2.get_mpz_t());
    q = (q + p2 - 2) % p2 / p;
    const bool identity = (g_mod_p + q) % p == 0;
    const bool via_sum = mpz_divisible_ui_p(g.scaled_residue(0, 2).get_mpz_t(), p) != 0;
    if (!identity || via_sum != wieferich) {
      throw std::logic_error("Wieferich criterion disagrees with G_{p-1}(2) at p = " + std::to_string(p));
    }
  }
  return wieferich;
}

std::vector<std::uint32_t> wieferich_scan(std::uint32_t pmax) {
  std::vector<std::uint32_t> out;
  for (auto p : primes_below(pmax)) {
    if (p != 2 && wieferich_check(p)) out.push_back(p);
  }
  return out;
}

DensityStats density_stats(std::span<const SearchResult> results) {
  DensityStats out;
  for (const auto& r : results) {
    if (!r.complete()) throw std::invalid_argument("density statistics need complete searches");
    ++out.total;
    if (r.elements.empty()) ++out.empty;
  }
  out.ratio = out.total == 0 ? 0.0 : static_cast<double>(out.empty) / static_cast<double>(out.total);
  return out;
}

}  // namespace harmsum
