#include "chowla/fluctuations.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "chowla/errors.hpp"
#include "oracles.hpp"

namespace chowla {
namespace {

IntPolynomial poly(const char* text) { return IntPolynomial::parse(text); }

std::vector<std::uint64_t> trial_prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out.push_back(m);
  return out;
}

TEST(BuildGridTest, Examples) {
  EXPECT_EQ(build_grid(500, 3, 8).points, (std::vector<std::int64_t>{500, 4000, 32000}));
  EXPECT_EQ(build_grid(100, 2, Rational(5, 2)).points, (std::vector<std::int64_t>{100, 250}));
  EXPECT_EQ(build_grid(101, 3, Rational(5, 2)).points,
            (std::vector<std::int64_t>{101, 253, 631}));
}

TEST(BuildGridTest, Errors) {
  EXPECT_THROW(build_grid(99, 3, 8), ConfigError);
  EXPECT_THROW(build_grid(500, 1, 8), ConfigError);
  EXPECT_THROW(build_grid(500, 3, Rational(3, 2)), ConfigError);
  try {
    build_grid(10000, 5, 8);
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& e) {
    EXPECT_EQ(e.field(), "x");
  }
}

struct BruteFamily {
  std::vector<std::set<std::uint64_t>> e, f, a;
};

// Prime sets from trial division: E_i holds primes above the threshold whose
// first n with p | P(n) lies in (x_{i-1}, x_i]; A_i is the greedy choice over
// ascending primes of F_i with pairwise disjoint index sets.
BruteFamily brute_family(const IntPolynomial& p, const std::vector<std::int64_t>& points) {
  const std::int64_t top = points.back();
  std::map<std::uint64_t, std::vector<std::int64_t>> where;
  for (std::int64_t n = 1; n <= top; ++n) {
    const auto v = p.eval(BigInt(n)).convert_to<std::int64_t>();
    if (v == 0) continue;
    for (auto q : trial_prime_factors(static_cast<std::uint64_t>(std::abs(v)))) {
      where[q].push_back(n);
    }
  }
  const double d = p.degree();
  BruteFamily out;
  std::int64_t previous = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = static_cast<double>(points[i]);
    const double threshold = x * std::log(x) / (2 * d * d);
    std::set<std::uint64_t> e, f, a;
    for (const auto& [q, idx] : where) {
      if (static_cast<double>(q) >= threshold && idx.front() > previous &&
          idx.front() <= points[i]) {
        e.insert(q);
      }
    }
    for (auto q : e) {
      if (i == 0 || !out.e.back().count(q)) f.insert(q);
    }
    std::set<std::int64_t> used;
    for (auto q : f) {
      bool ok = true;
      for (auto n : where[q]) ok = ok && (n > points[i] || !used.count(n));
      if (!ok) continue;
      a.insert(q);
      for (auto n : where[q]) {
        if (n <= points[i]) used.insert(n);
      }
    }
    out.e.push_back(e);
    out.f.push_back(f);
    out.a.push_back(a);
    previous = points[i];
  }
  return out;
}

std::set<std::uint64_t> as_set(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

TEST(PrimeSetsTest, MatchTrialDivisionOracle) {
  for (const char* text : {"x^2+1", "x^2+x+1", "x^3+2x+1"}) {
    IntPolynomial p = poly(text);
    ScaleGrid grid = build_grid(150, 3, 3);
    FactorTable t = factor_values(p, grid.points.back());
    PrimeSetFamily family = build_prime_sets(t, grid);
    BruteFamily b = brute_family(p, grid.points);
    for (int i = 0; i < grid.size(); ++i) {
      EXPECT_EQ(as_set(family.scale(i).e), b.e[static_cast<std::size_t>(i)]) << text << i;
      EXPECT_EQ(as_set(family.scale(i).f), b.f[static_cast<std::size_t>(i)]) << text << i;
      EXPECT_EQ(as_set(family.scale(i).a), b.a[static_cast<std::size_t>(i)]) << text << i;
    }
  }
}

TEST(PrimeSetsTest, FirstScaleThreshold) {
  ScaleGrid grid = build_grid(200, 2, 4);
  FactorTable t = factor_values(poly("x^2+1"), grid.points.back());
  PrimeSetFamily family = build_prime_sets(t, grid);
  EXPECT_NEAR(family.scale(0).threshold, 200 * std::log(200.0) / 8, 1e-9);
  EXPECT_NEAR(family.scale(0).threshold, 132.4, 0.1);
  for (auto q : family.scale(0).a) EXPECT_GE(static_cast<double>(q), 132.46);
}

TEST(PrimeSetsTest, FamilyProperties) {
  for (const char* text : {"x^2+1", "x^2+2", "x^3+x+1", "2x^2+3x+5"}) {
    IntPolynomial p = poly(text);
    ScaleGrid grid = build_grid(300, 3, 4);
    FactorTable t = factor_values(p, grid.points.back());
    PrimeSetFamily family = build_prime_sets(t, grid);
    FamilyCheck check = check_family(t, grid, family);
    EXPECT_TRUE(check.disjoint) << text;
    EXPECT_TRUE(check.no_shared_values) << text;
    EXPECT_TRUE(check.greedy_bound) << text;
    EXPECT_TRUE(check.nested) << text;
    for (int i = 0; i < family.size(); ++i) {
      const auto& s = family.scale(i);
      EXPECT_GE(static_cast<double>(s.a.size()),
                static_cast<double>(s.f.size()) / p.degree());
      for (auto q : s.a) {
        EXPECT_EQ(family.owner_of_id(static_cast<std::size_t>(t.prime_id(q))), i);
      }
    }
  }
}

TEST(SplitSumsTest, PartitionMatchesPartialSum) {
  IntPolynomial p = poly("x^2+1");
  ScaleGrid grid = build_grid(200, 3, 4);
  FactorTable t = factor_values(p, grid.points.back());
  PrimeSetFamily family = build_prime_sets(t, grid);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SteinhausSampler s(seed);
    for (int i = 0; i < grid.size(); ++i) {
      SplitSumEntry e = split_sums(s, t, family, i);
      EXPECT_NEAR(std::abs(e.total() - partial_sum(s, t, grid.points[static_cast<std::size_t>(i)])),
                  0.0, 1e-9);
    }
  }
  // Roots of P fall in no class.
  FactorTable r = factor_values(poly("x^2-36"), 800);
  PrimeSetFamily rf = build_prime_sets(r, build_grid(200, 2, 4));
  EXPECT_EQ(classify_term(r, rf, 0, 6), 0);
}

TEST(SplitSumsTest, NoSelectedPrimesLeavesOnlyTheRest) {
  FactorTable t = factor_values(poly("x^2+1"), 300);
  std::vector<PrimeScale> scales(2);
  scales[0].x = 100;
  scales[1].x = 300;
  PrimeSetFamily empty(std::move(scales), t.primes().size(), {});
  SteinhausSampler s(8);
  SplitSumEntry e = split_sums(s, t, empty, 1);
  EXPECT_EQ(e.s1, std::complex<double>(0.0));
  EXPECT_EQ(e.s2, std::complex<double>(0.0));
  EXPECT_NEAR(std::abs(e.s3 - partial_sum(s, t, 300)), 0.0, 1e-9);
}

TEST(SecondMomentTest, MatchesBruteForceAndBound) {
  IntPolynomial p = poly("x^2+1");
  ScaleGrid grid = build_grid(150, 3, 3);
  FactorTable t = factor_values(p, grid.points.back());
  PrimeSetFamily family = build_prime_sets(t, grid);
  BruteFamily b = brute_family(p, grid.points);
  for (int i = 0; i < grid.size(); ++i) {
    std::set<std::uint64_t> earlier;
    for (int j = 0; j < i; ++j) earlier.insert(b.a[j].begin(), b.a[j].end());
    std::vector<std::uint64_t> hits;
    const std::int64_t x = grid.points[static_cast<std::size_t>(i)];
    for (std::int64_t n = 1; n <= x; ++n) {
      const auto v = static_cast<std::uint64_t>(n * n + 1);
      for (auto q : trial_prime_factors(v)) {
        if (earlier.count(q)) {
          hits.push_back(v);
          break;
        }
      }
    }
    std::int64_t pairs = 0;
    for (auto u : hits)
      for (auto w : hits) pairs += u == w;
    SecondMoment m = s2_second_moment(t, family, i);
    EXPECT_EQ(m.count, static_cast<std::int64_t>(hits.size()));
    EXPECT_EQ(m.pair_count, pairs);
    EXPECT_EQ(m.normalized, Rational(m.count, x));
    EXPECT_LE(m.count, m.upper_bound);
    if (i == 0) {
      EXPECT_EQ(m.count, 0);
    }
  }
}

TEST(VarianceFloorTest, MuDominatesFloor) {
  for (const char* text : {"x^2+1", "x^2-6x+10", "x^3+2x+1"}) {
    ScaleGrid grid = build_grid(200, 3, 4);
    FactorTable t = factor_values(poly(text), grid.points.back());
    PrimeSetFamily family = build_prime_sets(t, grid);
    for (int i = 0; i < grid.size(); ++i) {
      VarianceFloor v = variance_floor(t, family, i);
      EXPECT_GE(v.mu, v.floor) << text;
      EXPECT_GE(v.pair_count, v.member_count);
    }
  }
}

TEST(ConditionalTest, RestOfSumIsFrozen) {
  ScaleGrid grid = build_grid(200, 3, 4);
  FactorTable t = factor_values(poly("x^2+1"), grid.points.back());
  PrimeSetFamily family = build_prime_sets(t, grid);
  SteinhausSampler frozen(5);
  RealizedFunction f1(frozen, SteinhausSampler(6), family.membership(), t);
  RealizedFunction f2(frozen, SteinhausSampler(7), family.membership(), t);
  for (int i = 0; i < grid.size(); ++i) {
    SplitSumEntry a = split_sums(f1, t, family, i), b = split_sums(f2, t, family, i);
    EXPECT_EQ(a.s3, b.s3);
    if (!family.scale(i).a.empty()) {
      EXPECT_NE(a.s1, b.s1);
    }
    EXPECT_GE(conditional_variance(f1, t, family, i), 0.0);
  }
}

TEST(MaxStatisticTest, Examples) {
  std::vector<std::complex<double>> totals{{3, 0}, {0, 4}};
  std::vector<std::int64_t> points{100, 10000};
  EXPECT_NEAR(max_statistic(totals, points),
              3 / std::sqrt(100 * std::log(std::log(100.0))), 1e-12);
  std::vector<std::complex<double>> one{{1, 0}};
  std::vector<std::int64_t> ten{10};
  EXPECT_NEAR(max_statistic(one, ten), 1 / std::sqrt(10.0), 1e-12);
}

TEST(RunFluctTest, ReportIsConsistent) {
  FluctConfig config;
  config.base = 200;
  config.k = 3;
  config.ratio = 4;
  config.replicates = 400;
  config.seed = 12;
  config.threads = 3;
  FluctReport report = run_fluct(poly("x^2+1"), config);
  ASSERT_EQ(report.scales.size(), 3u);
  ASSERT_EQ(report.covariances.size(), 3u);
  EXPECT_TRUE(report.family_check.disjoint);
  for (const ScaleSummary& s : report.scales) {
    EXPECT_LT(s.max_split_residual, 1e-9);
    // E|S_1|^2 = 2 x mu exactly.
    const double expected = 2.0 * static_cast<double>(s.x) * to_double(s.mu);
    EXPECT_LT(std::abs(s.s1_second_moment - expected), 5 * s.s1_second_moment_std_error + 1e-12);
  }
  for (std::size_t q = 1; q < report.max_stat_quantiles.size(); ++q) {
    EXPECT_LE(report.max_stat_quantiles[q - 1], report.max_stat_quantiles[q]);
  }

  FluctConfig other = config;
  other.threads = 1;
  FluctReport again = run_fluct(poly("x^2+1"), other);
  EXPECT_EQ(again.max_stats, report.max_stats);
}

TEST(RunFluctTest, MaxStatisticGrowsWithMoreScales) {
  FluctConfig config;
  config.base = 100;
  config.ratio = 3;
  config.replicates = 50;
  config.seed = 4;
  config.k = 2;
  FluctReport two = run_fluct(poly("x^2+1"), config);
  config.k = 4;
  FluctReport four = run_fluct(poly("x^2+1"), config);
  for (std::size_t r = 0; r < two.max_stats.size(); ++r) {
    EXPECT_GE(four.max_stats[r], two.max_stats[r]);
  }
}

TEST(RunFluctTest, Rejections) {
  FluctConfig config;
  config.base = 200;
  config.k = 2;
  config.ratio = 4;
  config.replicates = 10;
  EXPECT_THROW(run_fluct(poly("x+1"), config), ConfigError);
  config.replicates = 1;
  EXPECT_THROW(run_fluct(poly("x^2+1"), config), ConfigError);
}

}  // namespace
}  // namespace chowla
