#include <gtest/gtest.h>

#include "harmsum/errors.hpp"
#include "harmsum/fibonacci.hpp"
#include "harmsum/oracle.hpp"
#include "test_util.hpp"

using namespace harmsum;
using testutil::expect_matches;
using testutil::qval;

namespace {

mpz_class F(long j) {
  mpz_class r;
  if (j >= 0) {
    mpz_fib_ui(r.get_mpz_t(), j);
  } else {
    mpz_fib_ui(r.get_mpz_t(), -j);
    if (j % 2 == 0) r = -r;
  }
  return r;
}

mpq_class f_exact(long n) {
  mpq_class s = 0;
  for (long j = 1; j <= n; ++j) s += mpq_class(F(j), j);
  return s;
}

mpq_class f1_exact(long n, long p) {
  mpq_class s = 0;
  for (long k = 1; k <= n; ++k) s += mpq_class(F(p * k), k);
  return s;
}

// both sides of the descent congruence; corrected adds e·F_{n−e}·f_j
bool recurrence_holds(long p, long n, long j, bool corrected) {
  const int e = legendre_p5(std::uint32_t(p));
  mpq_class partial = 0, full = 0;
  for (long k = 1; k <= p - 1; ++k) {
    const mpq_class t(F(k + 1), k);
    if (k <= j) partial += t;
    full += t;
  }
  mpq_class rhs = e * f1_exact(n, p) / p + mpq_class(e * e) * F(n) * partial + mpq_class(e * e) * (F(n + 1) - 1) * full;
  if (corrected) rhs += e * F(n - e) * f_exact(j);
  return qval(f1_exact(p * n + j, p) - rhs, std::uint32_t(p)) >= 1;
}

}  // namespace

TEST(Fibonacci, Legendre) {
  EXPECT_EQ(legendre_p5(5), 0);
  EXPECT_EQ(legendre_p5(11), 1);
  EXPECT_EQ(legendre_p5(19), 1);
  EXPECT_EQ(legendre_p5(3), -1);
  EXPECT_EQ(legendre_p5(7), -1);
  EXPECT_EQ(legendre_p5(13), -1);
  FibContext c(13, 2);
  EXPECT_EQ(c.legendre(), -1);
}

TEST(Fibonacci, FibModExamples) {
  EXPECT_EQ(fib_mod(10, 7, 3).residue(), 55);
  EXPECT_EQ(fib_mod(0, 7, 3).residue(), 0);
  const std::uint64_t m = 13 * 13 * 13;
  std::uint64_t a = 0, b = 1;
  for (int j = 0; j < 1000000; ++j) {
    const std::uint64_t t = (a + b) % m;
    a = b;
    b = t;
  }
  EXPECT_EQ(fib_mod(1000000, 13, 3).residue(), a);
  EXPECT_EQ(fib_exact(10), 55);
}

TEST(Fibonacci, FastDoublingMatchesIteration) {
  for (std::uint32_t p : {3u, 7u, 11u, 13u}) {
    for (int s = 1; s <= 3; ++s) {
      const std::uint64_t m = testutil::ppow(p, s).get_ui();
      FibContext ctx(p, s, 64);
      std::uint64_t a = 0, b = 1;
      for (std::uint64_t j = 0; j <= 10000; ++j) {
        EXPECT_EQ(fib_mod(j, p, s).residue(), a);
        EXPECT_EQ(ctx(j).residue(), a);
        const std::uint64_t t = (a + b) % m;
        a = b;
        b = t;
      }
      for (int i = 0; i < 20; ++i) {
        const unsigned long j = testutil::uniform(10000, 300000);
        EXPECT_EQ(fib_mod(j, p, s).residue(), F(long(j)) % m);
      }
      mpz_class huge = testutil::ppow(p, 300) + 17;
      EXPECT_EQ(fib_mod(huge, p, s), ctx(huge));
    }
  }
}

TEST(Fibonacci, DirectSums) {
  EXPECT_EQ(f_direct(1, 7, 3).to_residue(3).residue(), 1);
  EXPECT_EQ(f_exact(4), mpq_class(35, 12));
  EXPECT_TRUE(f_direct(4, 5, 1).to_residue(1).is_zero());
  expect_matches(f_direct(100, 7, 2), f_exact(100));
  for (std::uint32_t p : {3u, 7u, 11u}) {
    for (long n : {0L, 1L, 9L, 30L, 77L}) {
      expect_matches(f_direct(std::uint64_t(n), p, 3), f_exact(n));
      expect_matches(f1_direct(std::uint64_t(n), p, 3), f1_exact(n, p));
    }
  }
  EXPECT_THROW(f_direct(100, 7, 2, 10), BudgetExceeded);
}

TEST(Fibonacci, CongruenceExamples) {
  EXPECT_TRUE(fib_congruence_check(3, 1, 1));
  EXPECT_TRUE(fib_congruence_check(11, 1, 1));
  EXPECT_TRUE(fib_congruence_check(7, 3, 5));
}

TEST(Fibonacci, CongruenceGrid) {
  for (std::uint32_t p : {3u, 7u, 11u, 13u, 17u})
    for (int s = 1; s <= 3; ++s)
      for (unsigned j = 0; j <= 50; ++j) EXPECT_TRUE(fib_congruence_check(p, s, j)) << p << " " << s << " " << j;
}

TEST(Fibonacci, ShiftedSumTracksPlainSum) {
  for (std::uint32_t p : {3u, 7u, 11u, 13u}) {
    const int e = legendre_p5(p);
    for (std::uint64_t n = 1; n <= 500; ++n) {
      auto d = f1_direct(n, p, 2) - f_direct(n, p, 2) * ScaledPAdic::from_integer(p, e, 4);
      EXPECT_TRUE(d.is_zero() || d.valuation() >= 1) << p << " " << n;
    }
  }
}

TEST(Fibonacci, RecurrenceExamples) {
  EXPECT_TRUE(f1_recurrence_check(3, 0, 2));
  EXPECT_TRUE(f1_recurrence_check(7, 3, 4));
  EXPECT_TRUE(f1_recurrence_check(11, 10, 0));
  EXPECT_THROW(f1_recurrence_check(5, 1, 1), UnsupportedPrime);
}

TEST(Fibonacci, RecurrenceFormsMatchExactOracle) {
  int published_failures = 0;
  for (long p : {3L, 7L, 11L, 13L}) {
    for (long n = 0; n <= 12; ++n) {
      for (long j = 0; j < p; ++j) {
        const bool pub = recurrence_holds(p, n, j, false);
        EXPECT_EQ(f1_recurrence_check(std::uint32_t(p), n, std::uint32_t(j), RecurrenceForm::Published), pub);
        EXPECT_TRUE(recurrence_holds(p, n, j, true));
        EXPECT_TRUE(f1_recurrence_check(std::uint32_t(p), n, std::uint32_t(j), RecurrenceForm::Corrected))
            << p << " " << n << " " << j;
        published_failures += !pub;
      }
    }
  }
  // the published form drops a term, so it cannot hold everywhere
  EXPECT_GT(published_failures, 0);
}

TEST(Fibonacci, CorrectedRecurrenceRandomTriples) {
  const std::uint32_t primes[] = {3, 7, 11, 13, 17, 19, 23, 29};
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t p = primes[testutil::uniform(0, 7)];
    const std::uint64_t n = testutil::uniform(0, 2000);
    const std::uint32_t j = std::uint32_t(testutil::uniform(0, p - 1));
    EXPECT_TRUE(f1_recurrence_check(p, n, j, RecurrenceForm::Corrected)) << p << " " << n << " " << j;
  }
}

TEST(Fibonacci, SearchMatchesOracle) {
  for (std::uint32_t p : {3u, 7u, 11u, 13u, 17u, 19u}) {
    auto r = fib_search(p);
    EXPECT_TRUE(verify_tree_property(r));
    EXPECT_EQ(r.y, 0);
    auto scan = brute_fib_scan(p, 100000);
    std::vector<BigNatural> below;
    for (auto& n : r.elements)
      if (n <= 100000) below.push_back(n);
    EXPECT_EQ(below, std::vector<BigNatural>(scan.hits.begin(), scan.hits.end())) << p;
  }
  auto three = fib_search(3);
  EXPECT_TRUE(three.complete());
  EXPECT_EQ(three.elements.front(), 2);
  EXPECT_EQ(three.level_profile.front(), 1u);
}

TEST(Fibonacci, SearchBudget) {
  FibSearchConfig c;
  c.budget = 1000;
  auto r = fib_search(11, c);
  EXPECT_EQ(r.status, SearchStatus::PrecisionExhausted);
  for (auto& n : r.elements) EXPECT_TRUE(n / 11 <= 1000);
  EXPECT_THROW(fib_search(5), UnsupportedPrime);
  EXPECT_THROW(fib_search(2), UnsupportedPrime);
}

TEST(Fibonacci, ConjectureTwo) {
  auto one = conjecture2_scan(1);
  EXPECT_TRUE(one.holds);
  EXPECT_EQ(one.checked, 1u);
  auto none = conjecture2_scan(0);
  EXPECT_TRUE(none.holds);
  EXPECT_EQ(none.checked, 0u);
  auto big = conjecture2_scan(10000);
  EXPECT_TRUE(big.holds);
  EXPECT_FALSE(big.counterexample.has_value());
  EXPECT_EQ(big.checked, 10000u);
}
