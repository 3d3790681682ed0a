#include "harmsum/residue.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

struct PowerCache {
  std::mutex mu;
  std::map<std::uint32_t, std::deque<mpz_class>> powers;
};

PowerCache& power_cache() {
  static PowerCache cache;
  return cache;
}

void require_same_prime(const ResidueValue& a, const ResidueValue& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("residues over different primes");
}

}  // namespace

const mpz_class& prime_power(std::uint32_t p, int e) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  auto& cache = power_cache();
  std::lock_guard lock(cache.mu);
  auto& table = cache.powers[p];
  if (table.empty()) table.emplace_back(1);
  while (static_cast<int>(table.size()) <= e) {
    mpz_class next = table.back() * p;
    table.push_back(std::move(next));
  }
  return table[static_cast<std::size_t>(e)];
}

ResidueValue::ResidueValue(std::uint32_t p, int precision, const mpz_class& value)
    : p_(p), s_(precision), modulus_(nullptr) {
  if (p < 2) throw std::invalid_argument("modulus prime must be ≥ 2");
  if (precision < 1) throw std::invalid_argument("precision must be ≥ 1");
  modulus_ = &prime_power(p, precision);
  mpz_fdiv_r(r_.get_mpz_t(), value.get_mpz_t(), modulus_->get_mpz_t());
}

ResidueValue::ResidueValue(std::uint32_t p, int precision, long value)
    : ResidueValue(p, precision, mpz_class(value)) {}

int ResidueValue::valuation() const {
  if (r_ == 0) return s_;
  int v = 0;
  mpz_class t = r_;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p_)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p_);
    ++v;
  }
  return v;
}

ResidueValue ResidueValue::truncate(int precision) const {
  if (precision > s_) throw PrecisionLoss("cannot raise residue precision by truncation");
  return {p_, precision, r_};
}

ResidueValue ResidueValue::pow(const mpz_class& exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  mpz_class out;
  if (is_unit()) {
    mpz_class e = reduce_exponent(exponent, p_, s_);
    mpz_powm(out.get_mpz_t(), r_.get_mpz_t(), e.get_mpz_t(), modulus_->get_mpz_t());
  } else if (exponent >= s_) {
    // p | r and e ≥ s, so r^e ≡ 0.
    out = 0;
  } else {
    mpz_powm(out.get_mpz_t(), r_.get_mpz_t(), exponent.get_mpz_t(), modulus_->get_mpz_t());
  }
  return {p_, s_, out};
}

ResidueValue ResidueValue::operator-() const { return {p_, s_, -r_}; }

ResidueValue operator+(const ResidueValue& a, const ResidueValue& b) {
  require_same_prime(a, b);
  return {a.p_, std::min(a.s_, b.s_), a.r_ + b.r_};
}

ResidueValue operator-(const ResidueValue& a, const ResidueValue& b) {
  require_same_prime(a, b);
  return {a.p_, std::min(a.s_, b.s_), a.r_ - b.r_};
}

ResidueValue operator*(const ResidueValue& a, const ResidueValue& b) {
  require_same_prime(a, b);
  return {a.p_, std::min(a.s_, b.s_), a.r_ * b.r_};
}

std::ostream& operator<<(std::ostream& os, const ResidueValue& v) {
  return os << v.residue().get_str() << " (mod " << v.prime() << "^" << v.precision() << ")";
}

ResidueValue mod_inverse(const ResidueValue& a) {
  if (!a.is_unit()) {
    throw NonInvertible(a.residue().get_str() + " is not invertible mod " + std::to_string(a.prime()) + "^" +
                        std::to_string(a.precision()));
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), a.residue().get_mpz_t(), a.modulus().get_mpz_t());
  return {a.prime(), a.precision(), inv};
}

ResidueValue divide_by_p(const ResidueValue& a) {
  if (a.is_unit()) {
    throw NotDivisible(a.residue().get_str() + " is not divisible by " + std::to_string(a.prime()));
  }
  if (a.precision() < 2) throw PrecisionExhausted("dividing by p would leave no digits");
  mpz_class q;
  mpz_divexact_ui(q.get_mpz_t(), a.residue().get_mpz_t(), a.prime());
  return {a.prime(), a.precision() - 1, q};
}

mpz_class reduce_exponent(const mpz_class& e, std::uint32_t p, int s) {
  mpz_class order = prime_power(p, s - 1) * (p - 1);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), e.get_mpz_t(), order.get_mpz_t());
  return r;
}

}  // namespace harmsum
