#include "harmsum/series.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "harmsum/combinatorics.hpp"
#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

int log_floor(std::uint64_t n, std::uint32_t p) {
  int e = 0;
  std::uint64_t t = 1;
  while (t <= n / p) {
    t *= p;
    ++e;
  }
  return e;
}

mpz_class powm(const mpz_class& base, const mpz_class& e, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

void validate(std::uint32_t p, const mpz_class& y) {
  if (p == 2) throw UnsupportedPrime("p = 2 is not supported by the series expansions");
  if (!is_prime(p)) throw UnsupportedPrime(std::to_string(p) + " is not prime");
  if (y <= 0 || mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    throw InvalidBase("base " + y.get_str() + " is not a p-adic unit for p = " + std::to_string(p));
  }
}

// z to absolute precision `target`. The series is cut where every omitted term
// (valuation ≥ 2j − ν_p(j) − 2) vanishes modulo p^target.
ScaledPAdic z_series(std::uint32_t p, const mpz_class& y, int target) {
  if (y == 1) return ScaledPAdic::zero(p);
  const int terms = target / 2 + log_floor(static_cast<std::uint64_t>(target) + 1, p) + 3;
  const int known = target + 2 + log_floor(static_cast<std::uint64_t>(terms), p);
  const mpz_class& mod = prime_power(p, known);
  const mpz_class a = powm(y, mpz_class(std::uint64_t(p) * (p - 1)), mod) - 1;
  const ScaledPAdic as = ScaledPAdic::from_integer(p, a, known);
  ScaledPAdic sum = ScaledPAdic::zero(p);
  ScaledPAdic power = as;
  for (int j = 1; j <= terms; ++j) {
    const mpq_class coeff(j % 2 == 1 ? 1 : -1, j);
    sum += power * ScaledPAdic::from_rational(p, coeff, known);
    power *= as;
  }
  return sum.shifted(-2).with_absolute_precision(target);
}

struct RawCoefficients {
  std::vector<ScaledPAdic> a;
  std::vector<ScaledPAdic> n;
  ScaledPAdic z = ScaledPAdic::zero(3);
};

// Σ_{k=1}^{p−1} w^k / k^{m+1} modulo p^working, for m = 0..count−1.
std::vector<mpz_class> inverse_power_sums(std::uint32_t p, const mpz_class& w, int count, int working) {
  const mpz_class& mod = prime_power(p, working);
  std::vector<mpz_class> c(static_cast<std::size_t>(count), mpz_class(0));
  mpz_class wk = 1;
  mpz_class inv, term;
  for (std::uint32_t k = 1; k < p; ++k) {
    wk = wk * w;
    mpz_tdiv_r(wk.get_mpz_t(), wk.get_mpz_t(), mod.get_mpz_t());
    const mpz_class kk(k);
    mpz_invert(inv.get_mpz_t(), kk.get_mpz_t(), mod.get_mpz_t());
    term = wk * inv;
    for (int m = 0; m < count; ++m) {
      mpz_tdiv_r(term.get_mpz_t(), term.get_mpz_t(), mod.get_mpz_t());
      c[m] += term;
      term *= inv;
    }
  }
  for (auto& v : c) mpz_tdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return c;
}

RawCoefficients build_polylog(std::uint32_t p, const mpz_class& y, int s, int working) {
  const mpz_class& mod = prime_power(p, working);
  const mpz_class w = powm(y, mpz_class(p), mod);
  const mpz_class x = powm(w, mpz_class(p), mod);
  const auto c = inverse_power_sums(p, w, s, working);

  RawCoefficients out;

  // First piece: A_i = Σ_{m=i}^{s−1} (−p)^m C(m,i) C_m L_{m−i}(y^{p²}).
  const auto lx = geometric_moments(static_cast<unsigned>(s - 1), ScaledPAdic::from_integer(p, x, working));
  std::vector<ScaledPAdic> weighted;
  weighted.reserve(static_cast<std::size_t>(s));
  for (int m = 0; m < s; ++m) {
    const mpz_class signed_c = (m % 2 == 0) ? c[m] : mpz_class(-c[m]);
    weighted.push_back(ScaledPAdic::from_integer(p, signed_c, working).shifted(m));
  }
  for (int i = 0; i < s; ++i) {
    ScaledPAdic acc = ScaledPAdic::zero(p);
    for (int m = i; m < s; ++m) {
      const auto b = ScaledPAdic::from_rational(p, mpq_class(binomial(m, i)), working);
      acc += b * weighted[m] * lx[m - i];
    }
    out.a.push_back(acc);
  }

  // Second piece: c_m = p^{2m+1} z^{m+1}/(m+1)!,
  // N_i = −c_i + Σ_{m=i}^{s−2} c_m C(m,i) L_{m−i}(y^p).
  out.z = z_series(p, y, working);
  std::vector<ScaledPAdic> cm;
  cm.reserve(static_cast<std::size_t>(s));
  ScaledPAdic zpow = out.z;
  for (int m = 0; m < s; ++m) {
    if (m > 0) zpow *= out.z;
    const mpq_class scale(mpz_class(1), factorial(static_cast<unsigned long>(m + 1)));
    cm.push_back((zpow * ScaledPAdic::from_rational(p, scale, working)).shifted(2 * m + 1));
  }
  std::vector<ScaledPAdic> lw;
  if (s >= 2) lw = geometric_moments(static_cast<unsigned>(s - 2), ScaledPAdic::from_integer(p, w, working));
  for (int i = 0; i < s; ++i) {
    ScaledPAdic acc = -cm[i];
    for (int m = i; m <= s - 2; ++m) {
      const auto b = ScaledPAdic::from_rational(p, mpq_class(binomial(m, i)), working);
      acc += b * cm[m] * lw[m - i];
    }
    out.n.push_back(acc);
  }
  return out;
}

// L_r(x) = Σ_{j≥0} j^r x^j for r < count, modulo p^working, when 1−x is a unit.
// Uses (1−x)L_r = [r=0] + Σ_{k<r} C(r,k)(−1)^{r−k+1}(L_k − [k=0]).
std::vector<mpz_class> unit_moments(std::uint32_t p, const mpz_class& x, int count, int working) {
  const mpz_class& mod = prime_power(p, working);
  mpz_class inv = 1 - x;
  if (mpz_invert(inv.get_mpz_t(), inv.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw SingularPoint("1 − x is not a unit");
  }
  std::vector<mpz_class> l(static_cast<std::size_t>(count));
  if (count == 0) return l;
  l[0] = inv;
  mpz_class acc, b, term;
  for (int r = 1; r < count; ++r) {
    acc = 0;
    b = 1;
    for (int k = 0; k < r; ++k) {
      if (k > 0) {
        b *= r - k + 1;
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k));
      }
      term = b * (k == 0 ? mpz_class(l[0] - 1) : l[k]);
      if ((r - k) % 2 == 1) acc += term;
      else acc -= term;
    }
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    l[r] = acc * inv % mod;
  }
  return l;
}

// out[i] = Σ_{m=i}^{count−1} C(m,i)·weight[m]·moment[m−i] mod p^working.
std::vector<mpz_class> binomial_convolve(const std::vector<mpz_class>& weight, const std::vector<mpz_class>& moment,
                                         int count, const mpz_class& mod) {
  std::vector<mpz_class> out(static_cast<std::size_t>(std::max(count, 0)), mpz_class(0));
  mpz_class b, t;
  for (int m = 0; m < count; ++m) {
    if (weight[m] == 0) continue;
    b = 1;
    for (int i = 0; i <= m; ++i) {
      if (i > 0) {
        b *= m - i + 1;
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(i));
      }
      t = b * weight[m];
      out[i] += t * moment[m - i];
    }
  }
  for (auto& v : out) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return out;
}

// Same expansions as build_polylog, carried out in Z/p^working. Valid when y ≢ 1 (mod p),
// where every intermediate quantity is p-integral.
RawCoefficients build_unit(std::uint32_t p, const mpz_class& y, int s, int working) {
  const mpz_class& mod = prime_power(p, working);
  const mpz_class w = powm(y, mpz_class(p), mod);
  const mpz_class x = powm(w, mpz_class(p), mod);
  const auto c = inverse_power_sums(p, w, s, working);

  std::vector<mpz_class> weight(static_cast<std::size_t>(s));
  for (int m = 0; m < s; ++m) {
    weight[m] = c[m] * prime_power(p, std::min(m, working));
    if (m % 2 == 1) weight[m] = -weight[m];
  }
  const auto a = binomial_convolve(weight, unit_moments(p, x, s, working), s, mod);

  RawCoefficients out;
  out.z = z_series(p, y, working);
  const mpz_class z = out.z.is_zero() ? mpz_class(0) : out.z.scaled_residue(0, working);
  std::vector<mpz_class> cm(static_cast<std::size_t>(s), mpz_class(0));
  mpz_class zpow = 1, fact = 1, unit, inv;
  for (int m = 0; m < s; ++m) {
    zpow = zpow * z % mod;
    fact *= m + 1;
    const int shift = 2 * m + 1 - static_cast<int>(mpz_remove(unit.get_mpz_t(), fact.get_mpz_t(), mpz_class(p).get_mpz_t()));
    if (shift >= working) continue;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    cm[m] = zpow * inv % mod * prime_power(p, shift) % mod;
  }
  std::vector<mpz_class> nsum(static_cast<std::size_t>(s), mpz_class(0));
  if (s >= 2) nsum = binomial_convolve(cm, unit_moments(p, w, s - 1, working), s - 1, mod);
  nsum.resize(static_cast<std::size_t>(s), mpz_class(0));

  for (int i = 0; i < s; ++i) {
    out.a.push_back(ScaledPAdic::from_integer(p, a[i], working));
    out.n.push_back(ScaledPAdic::from_integer(p, nsum[i] - cm[i], working));
  }
  return out;
}

// y = 1: Δ(n) = Σ_{m<s} (−p)^m C_m Σ_{r<n} r^m with the inner sums as Faulhaber polynomials.
RawCoefficients build_harmonic(std::uint32_t p, int s, int working) {
  const auto c = inverse_power_sums(p, mpz_class(1), s, working);
  std::vector<ScaledPAdic> d(static_cast<std::size_t>(s) + 1, ScaledPAdic::zero(p));
  for (int m = 0; m < s; ++m) {
    const auto poly = faulhaber_coefficients(static_cast<unsigned>(m));
    const mpz_class signed_c = (m % 2 == 0) ? c[m] : mpz_class(-c[m]);
    const ScaledPAdic weight = ScaledPAdic::from_integer(p, signed_c, working).shifted(m);
    for (std::size_t i = 1; i < poly.size(); ++i) {
      if (poly[i] == 0) continue;
      d[i] += weight * ScaledPAdic::from_rational(p, poly[i], working);
    }
  }
  RawCoefficients out;
  out.a.push_back(ScaledPAdic::zero(p));
  for (int i = 1; i <= s; ++i) out.a.push_back(-d[i]);
  out.n.assign(static_cast<std::size_t>(s), ScaledPAdic::zero(p));
  out.z = ScaledPAdic::zero(p);
  return out;
}

std::int64_t min_absolute_precision(const RawCoefficients& raw) {
  std::int64_t m = ScaledPAdic::kExact;
  for (const auto& v : raw.a) m = std::min(m, v.absolute_precision());
  for (const auto& v : raw.n) m = std::min(m, v.absolute_precision());
  return m;
}

}  // namespace

ResidueValue compute_z(std::uint32_t p, const mpz_class& y, int s) {
  validate(p, y);
  return z_series(p, y, s).to_residue(s);
}

CoefficientSet compute_coefficients(std::uint32_t p, const mpz_class& y, int s) {
  validate(p, y);
  if (s < 1) throw std::invalid_argument("precision must be ≥ 1");

  CoefficientSet out;
  out.p_ = p;
  out.y_ = y;
  out.s_ = s;
  const mpz_class y_minus_one = y - 1;
  if (y == 1) {
    out.route_ = CoefficientRoute::Harmonic;
  } else if (mpz_divisible_ui_p(y_minus_one.get_mpz_t(), p)) {
    out.route_ = CoefficientRoute::NearOne;
  } else {
    out.route_ = CoefficientRoute::Unit;
  }

  const int headroom = 2 * log_floor(static_cast<std::uint64_t>(s), p) + 4;
  int working = s + headroom;
  if (out.route_ == CoefficientRoute::NearOne) {
    const int nu = static_cast<int>(valuation(y_minus_one, p));
    working = s + (nu + 2) * (s + 1);
  }

  RawCoefficients raw;
  for (int attempt = 0;; ++attempt) {
    switch (out.route_) {
      case CoefficientRoute::Unit:
        raw = build_unit(p, y, s, working);
        break;
      case CoefficientRoute::NearOne:
        raw = build_polylog(p, y, s, working);
        break;
      case CoefficientRoute::Harmonic:
        raw = build_harmonic(p, s, working);
        break;
    }
    const std::int64_t reached = min_absolute_precision(raw);
    if (reached >= s) break;
    if (attempt >= 6) throw PrecisionLoss("coefficient construction could not reach the requested precision");
    working += static_cast<int>(s - reached) + headroom;
  }
  out.working_ = working;

  std::int64_t lowest = 0;
  for (const auto* list : {&raw.a, &raw.n}) {
    for (const auto& v : *list) {
      if (!v.is_zero()) lowest = std::min(lowest, v.valuation());
    }
  }
  out.scale_ = static_cast<int>(-lowest);
  out.a_scaled_ = CoefficientSet::prepare(raw.a, out.scale_, s);
  out.n_scaled_ = CoefficientSet::prepare(raw.n, out.scale_, s);

  const mpz_class& mod = prime_power(p, s + out.scale_);
  if (out.route_ == CoefficientRoute::Harmonic) {
    out.x_ = 1;
    out.w_ = 1;
  } else {
    out.w_ = powm(y, mpz_class(p), mod);
    out.x_ = powm(out.w_, mpz_class(p), mod);
  }
  out.a_ = std::move(raw.a);
  out.n_ = std::move(raw.n);
  out.z_ = raw.z.to_residue(s);
  return out;
}

CoefficientSet::Scaled CoefficientSet::prepare(const std::vector<ScaledPAdic>& coeffs, int scale, int s) {
  const std::uint32_t p = coeffs.empty() ? 3 : coeffs.front().prime();
  const int none = std::numeric_limits<int>::max() / 2;
  Scaled out;
  std::vector<mpz_class> values;
  std::vector<int> vals;
  for (const auto& c : coeffs) {
    values.push_back(c.scaled_residue(scale, s));
    vals.push_back(values.back() == 0 ? none : static_cast<int>(valuation(values.back(), p)));
  }
  out.constant = values.empty() ? mpz_class(0) : values.front();
  out.floor.assign(values.size(), none);
  for (std::size_t i = values.size(); i-- > 0;) {
    out.floor[i] = std::min(vals[i], i + 1 < values.size() ? out.floor[i + 1] : none);
  }
  out.reduced.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (out.floor[i] >= none) continue;
    mpz_divexact(out.reduced[i].get_mpz_t(), values[i].get_mpz_t(), prime_power(p, out.floor[i]).get_mpz_t());
  }
  return out;
}

mpz_class CoefficientSet::horner(const Scaled& c, const mpz_class& n, int digits) const {
  int top = static_cast<int>(c.floor.size()) - 1;
  while (top >= 0 && c.floor[top] >= digits) --top;
  mpz_class k = 0;
  for (int i = top; i >= 0; --i) {
    if (i < top) {
      k *= n;
      const int gap = c.floor[i + 1] - c.floor[i];
      if (gap > 0) k *= prime_power(p_, gap);
    }
    k += c.reduced[i];
    const mpz_class& mod = prime_power(p_, digits - c.floor[i]);
    mpz_tdiv_r(k.get_mpz_t(), k.get_mpz_t(), mod.get_mpz_t());
  }
  if (top >= 0 && c.floor[0] > 0) k *= prime_power(p_, c.floor[0]);
  return k;
}

mpz_class CoefficientSet::delta_raw(const mpz_class& n_mod, const mpz_class& x_pow_n, const mpz_class& w_pow_n,
                                    int precision) const {
  const int digits = precision + scale_;
  const mpz_class& mod = prime_power(p_, digits);
  mpz_class acc = a_scaled_.constant + n_scaled_.constant;
  acc -= horner(a_scaled_, n_mod, digits) * x_pow_n;
  acc -= horner(n_scaled_, n_mod, digits) * w_pow_n;
  mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
  if (scale_ > 0) {
    const mpz_class& shift = prime_power(p_, scale_);
    if (!mpz_divisible_p(acc.get_mpz_t(), shift.get_mpz_t())) {
      throw std::logic_error("descent step lost its p-adic cancellation");
    }
    mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), shift.get_mpz_t());
  }
  return acc;
}

ResidueValue CoefficientSet::delta(const BigNatural& n, int precision) const {
  if (precision < 1 || precision > s_) {
    throw std::invalid_argument("delta precision must lie in [1, " + std::to_string(s_) + "]");
  }
  if (n < 0) throw std::invalid_argument("n must be natural");
  const int digits = precision + scale_;
  const mpz_class& mod = prime_power(p_, digits);
  mpz_class n_mod;
  mpz_fdiv_r(n_mod.get_mpz_t(), n.get_mpz_t(), mod.get_mpz_t());
  const mpz_class e = reduce_exponent(n, p_, digits);
  mpz_class xr, wr;
  mpz_fdiv_r(xr.get_mpz_t(), x_.get_mpz_t(), mod.get_mpz_t());
  mpz_fdiv_r(wr.get_mpz_t(), w_.get_mpz_t(), mod.get_mpz_t());
  const mpz_class xn = powm(xr, e, mod);
  const mpz_class wn = powm(wr, e, mod);
  return {p_, precision, delta_raw(n_mod, xn, wn, precision)};
}

ScaledPAdic direct_G(std::uint64_t n, const mpz_class& x, std::uint32_t p, int s, std::uint64_t budget) {
  if (n > budget) {
    throw BudgetExceeded("direct summation of " + std::to_string(n) + " terms exceeds the budget of " +
                         std::to_string(budget));
  }
  if (!is_prime(p)) throw UnsupportedPrime(std::to_string(p) + " is not prime");
  if (s < 1) throw std::invalid_argument("precision must be ≥ 1");
  const int shift = n >= 1 ? log_floor(n, p) : 0;
  const mpz_class& mod = prime_power(p, s + shift);
  mpz_class xr;
  mpz_fdiv_r(xr.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  mpz_class sum = 0, xp = 1, inv, term;
  for (std::uint64_t j = 1; j <= n; ++j) {
    xp *= xr;
    mpz_tdiv_r(xp.get_mpz_t(), xp.get_mpz_t(), mod.get_mpz_t());
    std::uint64_t core = j;
    int t = 0;
    while (core % p == 0) {
      core /= p;
      ++t;
    }
    const mpz_class cc(static_cast<unsigned long>(core));
    mpz_invert(inv.get_mpz_t(), cc.get_mpz_t(), mod.get_mpz_t());
    term = xp * inv;
    term *= prime_power(p, shift - t);
    sum += term;
    mpz_tdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), mod.get_mpz_t());
  }
  return ScaledPAdic::from_integer(p, sum, s + shift).shifted(-shift);
}

ScaledPAdic direct_G(std::uint64_t n, const ResidueValue& x, int s, std::uint64_t budget) {
  if (!x.is_unit()) throw InvalidBase("direct_G on a residue needs a unit base");
  if (x.precision() < s) throw PrecisionLoss("base residue is known to fewer digits than requested");
  return direct_G(n, x.residue(), x.prime(), s, budget);
}

}  // namespace harmsum
