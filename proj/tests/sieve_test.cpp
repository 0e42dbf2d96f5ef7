#include "chowla/sieve.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "chowla/errors.hpp"
#include "oracles.hpp"

namespace chowla {
namespace {

TEST(NumTheoryTest, PrimalityKnownValues) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(561));                    // Carmichael
  EXPECT_FALSE(is_prime(3215031751ull));          // strong pseudoprime to 2,3,5,7
  EXPECT_TRUE(is_prime(2305843009213693951ull));  // 2^61 - 1
  EXPECT_TRUE(is_prime(18446744073709551557ull)); // largest 64-bit prime
  EXPECT_FALSE(is_prime(18446744073709551555ull));
}

TEST(NumTheoryTest, PrimalityMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(n), oracle::trial_is_prime(n)) << n;
  }
}

TEST(NumTheoryTest, FactorsLargeSemiprimes) {
  const std::uint64_t p = 4294967291ull, q = 4294967279ull;
  auto f = factor(p * q);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], (PrimePower{q, 1}));
  EXPECT_EQ(f[1], (PrimePower{p, 1}));

  auto g = factor(1000003ull * 1000003ull * 6);
  EXPECT_EQ(g, (std::vector<PrimePower>{{2, 1}, {3, 1}, {1000003, 2}}));
}

TEST(NumTheoryTest, RandomFactorizationsMultiplyBack) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t n = rng() >> (rng() % 40);
    if (n < 2) continue;
    std::uint64_t product = 1;
    for (const PrimePower& pp : factor(n)) {
      ASSERT_TRUE(is_prime(pp.prime));
      for (int e = 0; e < pp.exponent; ++e) product *= pp.prime;
    }
    ASSERT_EQ(product, n);
  }
}

TEST(NumTheoryTest, Divisors) {
  EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(1), (std::vector<std::uint64_t>{1}));
}

TEST(FactorValuesTest, SmallTableOfXSquaredPlusOne) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2+1"), 5);
  std::vector<std::int64_t> values;
  std::vector<std::uint64_t> lpf;
  for (const auto& row : t.rows()) {
    values.push_back(row.value);
    lpf.push_back(row.largest_prime);
  }
  EXPECT_EQ(values, (std::vector<std::int64_t>{2, 5, 10, 17, 26}));
  EXPECT_EQ(lpf, (std::vector<std::uint64_t>{2, 5, 5, 17, 13}));
  EXPECT_EQ(t.row(3).factor_string(), "2*5");
  auto idx = t.indices_of(5);
  EXPECT_EQ(std::vector<std::int64_t>(idx.begin(), idx.end()),
            (std::vector<std::int64_t>{2, 3}));
}

TEST(FactorValuesTest, Squares) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2"), 3);
  EXPECT_EQ(t.row(1).value, 1);
  EXPECT_EQ(t.row(1).largest_prime, 0u);
  EXPECT_EQ(t.row(2).largest_prime, 2u);
  EXPECT_EQ(t.row(3).largest_prime, 3u);
  EXPECT_EQ(t.row(2).factor_string(), "2^2");
}

TEST(FactorValuesTest, RootHasNoFactors) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2-6x"), 6);
  EXPECT_EQ(t.row(6).value, 0);
  EXPECT_TRUE(t.row(6).factors.empty());
  EXPECT_EQ(t.row(6).largest_prime, 0u);
  EXPECT_EQ(t.row(2).value, -8);
  EXPECT_EQ(t.row(2).factor_string(), "2^3");
  for (std::uint64_t p : t.primes()) {
    for (std::int64_t n : t.indices_of(p)) EXPECT_NE(n, 6);
  }
}

TEST(FactorValuesTest, Errors) {
  EXPECT_THROW(factor_values(IntPolynomial::parse("x^2+1"), 0), ConfigError);
  SieveOptions small;
  small.max_n = 100;
  EXPECT_THROW(factor_values(IntPolynomial::parse("x^2+1"), 101, small), BudgetError);
  EXPECT_THROW(factor_values(IntPolynomial::parse("x^4"), 100000), BudgetError);
}

void check_table_invariants(const char* text, std::int64_t n_max) {
  IntPolynomial p = IntPolynomial::parse(text);
  SieveOptions options;
  options.threads = 3;
  FactorTable t = factor_values(p, n_max, options);
  const int d = p.degree();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const FactoredValue& row = t.row(n);
    ASSERT_EQ(BigInt(row.value), p.eval(BigInt(n)));
    std::uint64_t product = 1;
    std::uint64_t largest = 0;
    for (const PrimePower& pp : row.factors) {
      for (int e = 0; e < pp.exponent; ++e) product *= pp.prime;
      largest = std::max(largest, pp.prime);
    }
    if (row.value == 0) {
      ASSERT_TRUE(row.factors.empty());
    } else {
      ASSERT_EQ(product, row.abs_value()) << n;
    }
    ASSERT_EQ(row.largest_prime, largest);
  }
  // The inverse relation is exact.
  std::size_t incidences = 0;
  for (std::uint64_t prime : t.primes()) {
    for (std::int64_t n : t.indices_of(prime)) {
      ASSERT_EQ(t.row(n).abs_value() % prime, 0u);
      ++incidences;
    }
    if (prime > static_cast<std::uint64_t>(n_max)) {
      ASSERT_LE(t.indices_of(prime).size(), static_cast<std::size_t>(d)) << prime;
    }
  }
  std::size_t expected = 0;
  for (const auto& row : t.rows()) expected += row.factors.size();
  EXPECT_EQ(incidences, expected);

  // Independent primality re-check on random rows.
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto& row = t.row(static_cast<std::int64_t>(rng() % n_max) + 1);
    for (const PrimePower& pp : row.factors) {
      ASSERT_TRUE(oracle::trial_is_prime(pp.prime)) << pp.prime;
    }
  }
}

TEST(FactorValuesTest, ExhaustiveInvariantsQuadratic) {
  check_table_invariants("x^2+1", 10000);
}

TEST(FactorValuesTest, ExhaustiveInvariantsCubic) {
  check_table_invariants("x^3+2x+1", 10000);
}

TEST(FactorValuesTest, ExhaustiveInvariantsSignedValues) {
  check_table_invariants("x^2-6x", 10000);
}

TEST(FactorValuesTest, ThreadCountDoesNotChangeTable) {
  IntPolynomial p = IntPolynomial::parse("x^2+x+41");
  SieveOptions one, many;
  many.threads = 5;
  FactorTable a = factor_values(p, 3000, one);
  FactorTable b = factor_values(p, 3000, many);
  for (std::int64_t n = 1; n <= 3000; ++n) {
    ASSERT_EQ(a.row(n).factors, b.row(n).factors);
  }
}

TEST(LpfDensityTest, Examples) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2+1"), 100);
  LpfDensity d = lpf_density(t, Rational(1, 8));
  EXPECT_GT(d.fraction, 0);
  EXPECT_LE(d.fraction, 1);
  // Pinned: matches a trial-division count below.
  std::int64_t count = 0;
  for (std::int64_t n = 2; n <= 100; ++n) {
    if (static_cast<double>(oracle::trial_lpf(static_cast<std::uint64_t>(n * n + 1))) >=
        n * std::log(static_cast<double>(n)) / 8.0) {
      ++count;
    }
  }
  EXPECT_EQ(d.count, count);
  EXPECT_EQ(d.count, 94);

  FactorTable squares = factor_values(IntPolynomial::parse("x^2"), 100);
  LpfDensity s = lpf_density(squares, Rational(1, 8));
  // P+(n^2) = P+(n) <= n, so only n whose largest prime is close to n
  // survive; below e^8 that still includes every prime n.
  EXPECT_EQ(s.count, 35);
  EXPECT_LT(s.fraction, d.fraction);

  FactorTable ten = factor_values(IntPolynomial::parse("x^2+1"), 10);
  EXPECT_EQ(lpf_density(ten, 0).fraction, 1);
  EXPECT_EQ(default_lpf_scale(2), Rational(1, 8));
}

TEST(TableCsvTest, Format) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2+1"), 3);
  std::ostringstream out;
  write_table_csv(t, out);
  EXPECT_EQ(out.str(),
            "n,value,factors,largest_prime\n1,2,2,2\n2,5,5,5\n3,10,2*5,5\n");
}

}  // namespace
}  // namespace chowla
