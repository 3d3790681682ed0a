// Acceptance run: one verdict line per criterion, plus detail lines.
// Exit status is the number of failed criteria (capped at 100).

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "harmsum/combinatorics.hpp"
#include "harmsum/fibonacci.hpp"
#include "harmsum/oracle.hpp"
#include "harmsum/post_analysis.hpp"
#include "harmsum/reference_tables.hpp"
#include "harmsum/series.hpp"
#include "harmsum/tree_search.hpp"

using namespace harmsum;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << s << " s";
  return out.str();
}

template <class Range>
std::string braces(const Range& xs) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& x : xs) {
    out << (first ? "" : ", ") << x;
    first = false;
  }
  out << "}";
  return out.str();
}

class Report {
 public:
  void verdict(int ac, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " AC" << ac << "  " << what << std::endl;
    if (!ok) ++failed_;
  }
  void detail(int ac, const std::string& tag, bool ok, const std::string& what) {
    std::cout << "  " << (ok ? "pass" : "fail") << " AC" << ac << "." << tag << "  " << what << std::endl;
  }
  void note(const std::string& what) { std::cout << "       " << what << std::endl; }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

// exact-rational helpers, independent of the library's p-adic types

long qval(const mpq_class& q, std::uint32_t p) {
  if (q == 0) return 1L << 30;
  long v = 0;
  mpz_class n = q.get_num(), d = q.get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
    d /= p;
    --v;
  }
  return v;
}

mpz_class qmod(const mpq_class& q, std::uint32_t p, int s) {
  mpz_class m, inv, r;
  mpz_ui_pow_ui(m.get_mpz_t(), p, s);
  mpz_class d = q.get_den();
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  r = q.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpq_class qpow(const mpq_class& x, unsigned e) {
  mpq_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

std::vector<mpq_class> running_G(unsigned upto, const mpq_class& x) {
  std::vector<mpq_class> g(upto + 1, 0);
  mpq_class t = 1;
  for (unsigned j = 1; j <= upto; ++j) {
    t *= x;
    g[j] = g[j - 1] + t / j;
  }
  return g;
}

std::vector<std::uint32_t> odd_primes_below(std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  for (auto p : primes_below(bound))
    if (p != 2) out.push_back(p);
  return out;
}

struct Grid {
  std::vector<SearchResult> results;  // p = 2 first, then (p, y) ordered
  GridCells cells;
  double seconds = 0;
};

Grid run_grid(unsigned jobs) {
  Grid g;
  const auto start = Clock::now();
  g.results = compute_grid(50, {}, jobs);
  g.results.insert(g.results.begin(), p2_oracle_result());
  g.cells = cells_of(g.results);
  g.seconds = since(start);
  return g;
}

// criteria

void ac1(Report& rep, const Grid& g) {
  const auto diffs = diff_grid(table1_reference(), g.cells);
  const std::size_t total = table1_reference().size();
  bool all_complete = true;
  for (const auto& r : g.results) all_complete = all_complete && r.complete();
  rep.verdict(1, diffs.empty() && all_complete && g.cells.size() == total,
              "Table 1 grid: " + std::to_string(total - diffs.size()) + " of " + std::to_string(total) +
                  " cells equal the published values");
  for (const auto& d : diffs) {
    rep.detail(1, "cell", false,
               "p=" + std::to_string(d.p) + " y=" + std::to_string(d.y) + ": published " +
                   (d.expected ? std::to_string(*d.expected) : "-") + ", computed " +
                   (d.actual ? std::to_string(*d.actual) : "-"));
  }
  const std::pair<std::uint32_t, std::uint32_t> extremes[] = {{47, 12}, {47, 8}, {13, 9}, {31, 10},
                                                              {43, 42}, {41, 32}, {29, 21}};
  for (auto [p, y] : extremes) {
    const auto it = g.cells.find({p, y});
    const std::uint64_t want = table1_reference().at({p, y});
    const bool ok = it != g.cells.end() && it->second == want;
    rep.detail(1, "extreme", ok,
               "|J_" + std::to_string(p) + "(" + std::to_string(y) + ")| = " +
                   (it == g.cells.end() ? "-" : std::to_string(it->second)) + ", published " + std::to_string(want));
  }
  rep.detail(1, "complete", all_complete, "every cell finished with status Complete");
  rep.detail(1, "runtime", g.seconds < 900, "grid time " + fmt_seconds(g.seconds) + " (limit 900 s)");
}

void ac2(Report& rep) {
  static const char* listing[] = {
      "3",         "17",        "19",         "86",         "97",         "99",         "485",       "488",
      "497",       "499",       "2486",       "2496",       "12431",      "12482",      "12484",     "62157",
      "62159",     "62421",     "310787",     "310789",     "312107",     "312109",     "1553936",   "1560537",
      "1560539",   "7802685",   "7802688",    "39013425",   "39013428",   "39013442",   "39013444",  "195067126",
      "975335630", "975335633", "4876678152", "4876678154", "4876678166"};
  const auto t = Clock::now();
  const SearchResult r = search(5, 2);
  std::vector<BigNatural> want;
  for (const char* s : listing) want.push_back(from_decimal(s));
  const std::vector<std::uint64_t> profile{1, 2, 3, 4, 2, 3, 3, 4, 3, 2, 4, 1, 2, 3};
  const bool set_ok = r.complete() && r.elements == want;
  const bool meta_ok = r.m_p == 15 && r.level_profile == profile;
  rep.verdict(2, set_ok && meta_ok,
              "J_5(2) has " + std::to_string(r.count()) + " elements, M_5(2) = " + std::to_string(r.m_p) + ", " +
                  fmt_seconds(since(t)));
  rep.detail(2, "set", set_ok, "element list equals the published 37-element listing");
  rep.detail(2, "levels", meta_ok, "profile " + braces(r.level_profile));
}

void ac3(Report& rep) {
  const SearchResult parent = search(5, 2);
  const PrimePowerResult f2 = prime_power_filter(parent, 2);
  const PrimePowerResult f3 = prime_power_filter(parent, 3);
  const std::vector<BigNatural> published{3, 19, 499, 2486, 12431, 312107};
  const bool ok25 = f2.complete && f2.elements == published;
  const bool ok125 = f3.complete && f3.elements.empty();
  rep.verdict(3, ok25 && ok125, "prime-power sets J_25(7) and J_125(32)");
  rep.detail(3, "J_25(7)", ok25, "computed " + braces(f2.elements) + ", published " + braces(published));
  rep.detail(3, "J_125(32)", ok125, "computed " + braces(f3.elements) + ", published {}");

  // the exact sums are the tie-breaker for the disputed element
  const ScanReport scan = brute_scan(5, 7, 400000, 2);
  std::vector<BigNatural> below;
  for (const auto& n : f2.elements)
    if (n <= 400000) below.push_back(n);
  const bool oracle_ok = below == std::vector<BigNatural>(scan.hits.begin(), scan.hits.end());
  rep.detail(3, "oracle", oracle_ok, "brute-force hits of G_n(7) mod 25 up to 400000: " + braces(scan.hits));
  const bool v99 = rational_vanishes(exact_rational_G(99, 7), 5, 2);
  const bool v499 = rational_vanishes(exact_rational_G(499, 7), 5, 2);
  rep.detail(3, "exact", v99 && !v499,
             std::string("exact rationals: 25 | G_99(7) is ") + (v99 ? "true" : "false") + ", 25 | G_499(7) is " +
                 (v499 ? "true" : "false"));
}

void ac4(Report& rep) {
  const auto t = Clock::now();
  const SearchResult r = search(13, 9);
  if (!r.complete() || r.elements.empty()) {
    rep.verdict(4, false, "J_13(9) search did not complete (" + to_string(r.status) + ")");
    return;
  }
  const std::string largest = to_decimal(r.elements.back());
  const bool digits = largest.size() == 419;
  const bool lead = largest.substr(0, 4) == "2385";
  const bool smallest = r.elements.front() == 3;
  rep.verdict(4, digits && lead && smallest,
              "J_13(9): " + std::to_string(r.count()) + " elements, " + fmt_seconds(since(t)));
  rep.detail(4, "digits", digits, "largest element has " + std::to_string(largest.size()) + " digits, expected 419");
  rep.detail(4, "leading", lead, "largest element starts " + largest.substr(0, 4) + ", expected 2385");
  rep.detail(4, "smallest", smallest, "smallest element " + to_decimal(r.elements.front()) + ", expected 3");
}

void ac5(Report& rep) {
  const auto t = Clock::now();
  bool all = true;
  for (std::uint32_t p : {5u, 19u, 41u, 89u, 113u, 131u}) {
    const auto ref = table2_row(p);
    const SearchResult r = search(p, 2);
    const bool ok = ref && r.complete() && ref->m_p == r.m_p && ref->count == r.count() && ref->profile == r.level_profile;
    all = all && ok;
    std::ostringstream what;
    what << "p=" << p << ": M=" << r.m_p << " |J|=" << r.count() << " levels " << r.level_profile.size()
         << ", precision " << r.precision_used;
    if (ref) what << "; published M=" << ref->m_p << " |J|=" << ref->count;
    rep.detail(5, "row", ok, what.str());
  }
  const double secs = since(t);
  rep.detail(5, "runtime", secs < 600, "rows took " + fmt_seconds(secs) + " (limit 600 s)");
  rep.verdict(5, all && secs < 600, "Table 2 spot rows p = 5, 19, 41, 89, 113, 131");
}

void ac6(Report& rep, const Grid& g, bool evidence) {
  std::size_t agree = 0, total = 0;
  std::vector<std::uint32_t> bad;
  for (auto p : odd_primes_below(50)) {
    ++total;
    const auto it = g.cells.find({p, 1});
    if (it != g.cells.end() && it->second == table1_reference().at({p, 1})) {
      ++agree;
    } else {
      bad.push_back(p);
    }
  }
  rep.verdict(6, agree == total,
              "row y=1 via base 1+p: " + std::to_string(agree) + " of " + std::to_string(total) + " cells equal");
  rep.detail(6, "J_11(1)", g.cells.at({11, 1}) == 638, "|J_11(1)| = " + std::to_string(g.cells.at({11, 1})));
  rep.detail(6, "J_7(1)", g.cells.at({7, 1}) == 13, "|J_7(1)| = " + std::to_string(g.cells.at({7, 1})));
  for (auto p : bad) {
    rep.detail(6, "cell", false,
               "|J_" + std::to_string(p) + "(1)| computed " + std::to_string(g.cells.at({p, 1})) + ", published " +
                   std::to_string(table1_reference().at({p, 1})));
    // the harmonic route is a second, independent path to the same set
    const SearchResult h = search_base(p, 1);
    rep.note("harmonic route (base 1) gives " + std::to_string(h.count()) + " elements, " + to_string(h.status));
    if (evidence) {
      const std::uint64_t bound = kScanGuard;
      const ScanReport scan = brute_scan(p, 1, bound, 1);
      rep.note("brute force finds " + std::to_string(scan.hits.size()) + " elements of J_" + std::to_string(p) +
               "(1) below " + std::to_string(bound));
    }
  }
}

void ac7(Report& rep, const Grid& g, unsigned jobs) {
  const std::uint64_t bound = 1'000'000;
  std::vector<std::string> problems(g.results.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < g.results.size(); i = next++) {
      const SearchResult& r = g.results[i];
      const mpz_class y = r.p == 2 ? mpz_class(1) : r.y;
      const ScanReport scan = brute_scan(r.p, y, bound, 1);
      std::vector<std::uint64_t> tree;
      for (const auto& n : r.elements)
        if (n <= bound) tree.push_back(n.get_ui());
      if (tree != scan.hits) {
        problems[i] = "p=" + std::to_string(r.p) + " y=" + r.y.get_str() + ": tree " + std::to_string(tree.size()) +
                      " vs oracle " + std::to_string(scan.hits.size());
      }
    }
  };
  const auto t = Clock::now();
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
  }
  std::size_t bad = 0;
  for (const auto& s : problems) {
    if (s.empty()) continue;
    ++bad;
    rep.detail(7, "cell", false, s);
  }
  rep.verdict(7, bad == 0,
              "tree vs brute force below 10^6 on " + std::to_string(g.results.size()) + " cells (incl. p=2): " +
                  std::to_string(bad) + " discrepancies, " + fmt_seconds(since(t)));
}

// identity families

bool recurrence_family(std::string& why) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (long y = 1; y < long(p); ++y) {
      const mpq_class x = qpow(y, p);
      const auto g = running_G(p * 40 + p, x);
      const auto gy = running_G(p, y);
      for (unsigned n = 0; n <= 40; ++n) {
        const mpq_class geometric = y == 1 ? mpq_class(n) : (qpow(y, n) - 1) / (y - 1);
        for (unsigned k = 0; k < p; ++k) {
          const mpq_class rhs = g[n] / p + qpow(y, n) * gy[k] + geometric * gy[p - 1];
          if (qval(g[p * n + k] - rhs, p) < 1) {
            why = "p=" + std::to_string(p) + " y=" + std::to_string(y) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool split_family(std::string& why) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (long y = 1; y < long(p); ++y) {
      const mpq_class x = qpow(y, p);
      const auto g = running_G(p * 30, x);
      mpq_class first = 0, second = 0, xp = 1;
      for (unsigned n = 0; n <= 30; ++n) {
        if (n > 0) {
          for (unsigned j = p * (n - 1) + 1; j <= p * n; ++j) {
            if (j % p) first += qpow(x, j) / j;
          }
          second += (qpow(x, p * n) - qpow(x, n)) / (p * n);
        }
        if (g[p * n] - g[n] / p != first + second) {
          why = "p=" + std::to_string(p) + " y=" + std::to_string(y) + " n=" + std::to_string(n);
          return false;
        }
      }
    }
  }
  return true;
}

bool delta_family(std::string& why, std::size_t& checks) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (long y = 1; y < long(p); ++y) {
      const mpq_class x = qpow(y, p);
      const auto g = running_G(p * 50, x);
      const CoefficientSet c = compute_coefficients(p, y, 5);
      for (unsigned n = 0; n <= 50; ++n) {
        const mpq_class d = g[p * n] - g[n] / p;
        for (int s = 1; s <= 5; ++s) {
          ++checks;
          if (qval(d, p) < 0 || c.delta(n, s).residue() != qmod(d, p, s)) {
            why = "p=" + std::to_string(p) + " y=" + std::to_string(y) + " n=" + std::to_string(n) + " s=" + std::to_string(s);
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool stirling_family(std::string& why) {
  for (std::uint32_t p : {3u, 5u}) {
    for (long y : {2L, 3L}) {
      if (y % long(p) == 0) continue;
      const mpq_class alpha = (qpow(y, p * (p - 1)) - 1) / (p * p);
      for (int s = 1; s <= 5; ++s) {
        const mpq_class z(compute_z(p, y, s).residue());
        for (unsigned m = 1; m <= 3; ++m) {
          mpq_class lhs = 0;
          for (unsigned j = m; j + 1 <= unsigned(s); ++j) {
            lhs += mpq_class(stirling_first_signed(j, m)) * qpow(alpha, j) * qpow(p, 2 * j - 1) / mpq_class(factorial(j));
          }
          const mpq_class rhs = qpow(p, 2 * m - 1) / mpq_class(factorial(m)) * qpow(z, m);
          if (qval(lhs - rhs, p) < s) {
            why = "p=" + std::to_string(p) + " y=" + std::to_string(y) + " s=" + std::to_string(s) + " m=" + std::to_string(m);
            return false;
          }
        }
      }
    }
  }
  return true;
}

// p^K·G_n(y) mod p^{K+s} for all n ≤ nmax, K covering every 1/j
std::vector<mpz_class> scaled_G(std::uint32_t p, const mpz_class& y, unsigned nmax, int s) {
  int K = 0;
  for (unsigned q = p; q <= nmax; q *= p) ++K;
  mpz_class mod, t = 1, acc = 0;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, K + s);
  std::vector<mpz_class> out(nmax + 1, 0);
  for (unsigned j = 1; j <= nmax; ++j) {
    t = t * y % mod;
    unsigned u = j;
    int v = 0;
    while (u % p == 0) {
      u /= p;
      ++v;
    }
    mpz_class inv, scale;
    mpz_invert(inv.get_mpz_t(), mpz_class(u).get_mpz_t(), mod.get_mpz_t());
    mpz_ui_pow_ui(scale.get_mpz_t(), p, K - v);
    acc = (acc + t * inv % mod * scale) % mod;
    out[j] = acc;
  }
  return out;
}

bool stability_family(std::string& why) {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int s = 1; s <= 3; ++s) {
      mpz_class ps;
      mpz_ui_pow_ui(ps.get_mpz_t(), p, s);
      for (int trial = 0; trial < 5; ++trial) {
        mpz_class y = 1 + rng() % 100000;
        if (y % p == 0) y += 1;
        const mpz_class ybar = y + ps * mpz_class(1 + rng() % 1000);
        const auto a = scaled_G(p, y, 500, s), b = scaled_G(p, ybar, 500, s);
        if (a != b) {
          why = "p=" + std::to_string(p) + " s=" + std::to_string(s) + " y=" + y.get_str();
          return false;
        }
        // the library's direct evaluation must see the same thing
        for (unsigned n : {p - 1, p, p * p + 1, 500u}) {
          const ScaledPAdic d = direct_G(n, y, p, s) - direct_G(n, ybar, p, s);
          if (!(d.is_zero() || d.valuation() >= s)) {
            why = "direct_G p=" + std::to_string(p) + " s=" + std::to_string(s) + " n=" + std::to_string(n);
            return false;
          }
        }
      }
    }
  }
  return true;
}

mpq_class polylog_closed(unsigned r, const mpq_class& x) {
  mpq_class sum = r == 0 ? mpq_class(-1) : mpq_class(0);
  for (unsigned j = 0; j <= r; ++j)
    sum += mpq_class(factorial(j) * stirling_second(r, j)) * qpow(x, j) / qpow(1 - x, j + 1);
  return sum;
}

bool polylog_family(std::string& why) {
  for (long xi : {2L, 3L, 5L, -1L}) {
    const mpq_class x = xi;
    for (unsigned r = 0; r <= 6; ++r) {
      mpq_class direct = 0;
      for (unsigned long n = 0; n <= 30; ++n) {
        if (n > 0) {
          mpz_class nr;
          mpz_ui_pow_ui(nr.get_mpz_t(), n, r);
          direct += mpq_class(nr) * qpow(x, unsigned(n));
        }
        mpq_class tail = 0;
        for (unsigned m = 0; m <= r; ++m) {
          mpz_class nm;
          mpz_ui_pow_ui(nm.get_mpz_t(), n, m);
          tail += mpq_class(binomial(r, m) * nm) * polylog_closed(r - m, x);
        }
        if (direct != polylog_closed(r, x) - qpow(x, unsigned(n)) * tail) {
          why = "x=" + std::to_string(xi) + " r=" + std::to_string(r) + " n=" + std::to_string(n);
          return false;
        }
      }
    }
  }
  return true;
}

void ac8(Report& rep) {
  const auto t = Clock::now();
  bool all = true;
  auto family = [&](const std::string& tag, const std::string& what, bool ok, const std::string& why) {
    all = all && ok;
    rep.detail(8, tag, ok, what + (ok ? "" : " (first failure " + why + ")"));
  };
  std::string why;
  bool ok = recurrence_family(why);
  family("recurrence", "G_{pn+k}(y^p) mod p descent, p ≤ 13, n ≤ 40, all k, y", ok, why);
  ok = split_family(why);
  family("split", "two-piece split of G_{pn}(y^p) − G_n(y^p)/p over Q, p ≤ 7, n ≤ 30", ok, why);
  std::size_t checks = 0;
  ok = delta_family(why, checks);
  family("delta", "Δ(n) from the coefficients vs exact sums, " + std::to_string(checks) + " cases", ok, why);
  ok = stirling_family(why);
  family("stirling", "Stirling-sum reduction to p^{2m−1} z^m/m!, p ∈ {3,5}, m ≤ 3, s ≤ 5", ok, why);
  ok = stability_family(why);
  family("stability", "G_n(y) mod p^s unchanged by y → y + t·p^s, n ≤ 500, p ≤ 7, s ≤ 3", ok, why);
  ok = polylog_family(why);
  family("polylog", "truncated polylog summation over Q, r ≤ 6, n ≤ 30, x ∈ {2,3,5,−1}", ok, why);
  rep.verdict(8, all, "identity suite, " + fmt_seconds(since(t)));
}

void ac9(Report& rep) {
  const auto t = Clock::now();
  const auto found = wieferich_scan(4000);
  rep.verdict(9, found == std::vector<std::uint32_t>{1093, 3511},
              "Wieferich primes below 4000: " + braces(found) + ", " + fmt_seconds(since(t)));
}

void ac10(Report& rep) {
  const auto t = Clock::now();
  bool congruence = true;
  for (std::uint32_t p : {3u, 7u, 11u, 13u, 17u})
    for (int s = 1; s <= 3; ++s)
      for (unsigned j = 0; j <= 50; ++j) congruence = congruence && fib_congruence_check(p, s, j);
  rep.detail(10, "congruence", congruence, "F_{p^s j} ≡ (p/5) F_{p^{s−1} j} for p ≤ 17, s ≤ 3, j ≤ 50");

  std::mt19937_64 rng(2024);
  const std::vector<std::uint32_t> primes{3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  int published = 0, corrected = 0;
  std::optional<std::string> first_bad;
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t p = primes[rng() % primes.size()];
    const std::uint64_t n = rng() % 5001;
    const std::uint32_t j = std::uint32_t(rng() % p);
    const bool pub = f1_recurrence_check(p, n, j, RecurrenceForm::Published);
    published += pub;
    corrected += f1_recurrence_check(p, n, j, RecurrenceForm::Corrected);
    if (!pub && !first_bad)
      first_bad = "(p, n, j) = (" + std::to_string(p) + ", " + std::to_string(n) + ", " + std::to_string(j) + ")";
  }
  rep.detail(10, "recurrence", published == 200,
             "published descent congruence holds on " + std::to_string(published) + " of 200 random triples" +
                 (first_bad ? ", first failure " + *first_bad : ""));
  rep.detail(10, "corrected", corrected == 200,
             "with the missing (p/5)·F_{n−(p/5)}·f_j term: " + std::to_string(corrected) + " of 200");

  const Conjecture2Report c2 = conjecture2_scan(10000);
  rep.detail(10, "conjecture2", c2.holds && c2.checked == 10000,
             "f_{4n} ≡ 0 (mod 5) for n ≤ 10^4" +
                 (c2.counterexample ? ": counterexample n = " + std::to_string(*c2.counterexample) : std::string()));

  bool search_ok = true;
  for (std::uint32_t p : {3u, 7u, 11u, 13u}) {
    const SearchResult r = fib_search(p);
    const ScanReport scan = brute_fib_scan(p, 100000);
    std::vector<std::uint64_t> below;
    for (const auto& n : r.elements)
      if (n <= 100000) below.push_back(n.get_ui());
    const bool ok = below == scan.hits && verify_tree_property(r);
    search_ok = search_ok && ok;
    rep.detail(10, "search", ok,
               "p=" + std::to_string(p) + ": " + std::to_string(below.size()) + " elements below 10^5 (" +
                   to_string(r.status) + "), oracle " + std::to_string(scan.hits.size()));
  }
  rep.verdict(10, congruence && published == 200 && c2.holds && search_ok,
              "Fibonacci suite, " + fmt_seconds(since(t)));
}

void ac11(Report& rep, const Grid& g) {
  bool complete = true;
  for (const auto& r : g.results) complete = complete && r.complete();
  if (!complete) {
    rep.verdict(11, false, "density needs every cell complete");
    return;
  }
  const DensityStats d = density_stats(g.results);
  std::ostringstream what;
  what.precision(3);
  what << "empty sets: " << d.empty << " of " << d.total << " (ratio " << d.ratio << ")";
  rep.verdict(11, d.empty == 104 && d.total == 313, what.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> criteria;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool evidence = false;
  app.add_option("--criteria", criteria, "comma separated criterion numbers (default: all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 11));
  app.add_option("--jobs", jobs, "worker threads for the grid")->check(CLI::Range(1u, 256u));
  app.add_flag("--evidence", evidence, "scan the disputed y=1 cells up to 10^8");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  const std::set<int> want(criteria.begin(), criteria.end());

  Report rep;
  std::optional<Grid> grid;
  if (want.count(1) || want.count(6) || want.count(7) || want.count(11)) {
    std::cout << "computing the p < 50 grid with " << jobs << " worker(s)" << std::endl;
    grid = run_grid(jobs);
  }
  try {
    for (int ac : want) {
      switch (ac) {
        case 1: ac1(rep, *grid); break;
        case 2: ac2(rep); break;
        case 3: ac3(rep); break;
        case 4: ac4(rep); break;
        case 5: ac5(rep); break;
        case 6: ac6(rep, *grid, evidence); break;
        case 7: ac7(rep, *grid, jobs); break;
        case 8: ac8(rep); break;
        case 9: ac9(rep); break;
        case 10: ac10(rep); break;
        case 11: ac11(rep, *grid); break;
      }
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL  aborted: " << e.what() << std::endl;
    return 100;
  }
  std::cout << (rep.failed() == 0 ? "all requested criteria pass" : std::to_string(rep.failed()) + " criteria fail")
            << std::endl;
  return std::min(rep.failed(), 100);
}
