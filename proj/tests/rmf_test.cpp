#include "chowla/rmf.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

#include "chowla/numtheory.hpp"
#include "oracles.hpp"

namespace chowla {
namespace {

TEST(PhiloxTest, KnownAnswerVectors) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(SplitMixTest, KnownValues) {
  EXPECT_EQ(splitmix64(0), 16294208416658607535ull);
  EXPECT_EQ(splitmix64(1), 10451216379200822465ull);
  EXPECT_EQ(derive_seed(7, 0), 309689372594955804ull);
}

TEST(SteinhausSamplerTest, AnglesArePinned) {
  EXPECT_DOUBLE_EQ(SteinhausSampler(42).angle(2), 0.8258668271960493);
  EXPECT_DOUBLE_EQ(SteinhausSampler(42).angle(3), 0.7295992648393473);
  EXPECT_DOUBLE_EQ(SteinhausSampler(0).angle(5), 0.45032620314223437);
  EXPECT_DOUBLE_EQ(SteinhausSampler(0xDEADBEEFCAFEBABEull).angle(1000003),
                   0.6040499474658835);
  EXPECT_DOUBLE_EQ(SteinhausSampler(7).angle((1ull << 40) + 15), 0.6289463096441189);
}

TEST(SteinhausSamplerTest, Deterministic) {
  SteinhausSampler a(123), b(123), c(124);
  for (std::uint64_t p : primes_below(2000)) {
    EXPECT_EQ(a.angle(p), b.angle(p));
    EXPECT_NE(a.angle(p), c.angle(p));
    EXPECT_GE(a.angle(p), 0.0);
    EXPECT_LT(a.angle(p), 1.0);
  }
}

TEST(SteinhausSamplerTest, AnglesLookUniform) {
  SteinhausSampler s(2024);
  constexpr int kBins = 100;
  std::vector<double> counts(kBins, 0.0);
  auto primes = primes_below(1'299'710);  // the first 10^5 primes
  ASSERT_EQ(primes.size(), 100'000u);
  for (std::uint64_t p : primes) counts[static_cast<int>(s.angle(p) * kBins)] += 1;
  const double expected = static_cast<double>(primes.size()) / kBins;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(kBins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 1e-6);
}

TEST(SteinhausSamplerTest, NeighbouringPrimesUncorrelated) {
  SteinhausSampler s(77);
  auto primes = primes_below(200'000);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  const double m = static_cast<double>(primes.size() - 1);
  for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
    const double x = s.angle(primes[i]), y = s.angle(primes[i + 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / m - (sx / m) * (sy / m);
  const double vx = sxx / m - (sx / m) * (sx / m);
  const double vy = syy / m - (sy / m) * (sy / m);
  EXPECT_LT(std::abs(cov / std::sqrt(vx * vy)), 0.05);
}

TEST(FOfTest, UnitModulusAndRootRejected) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2-6x"), 200);
  SteinhausSampler s(5);
  for (std::int64_t n = 1; n <= 200; ++n) {
    if (n == 6) {
      EXPECT_THROW(f_of(s, t.row(n)), std::invalid_argument);
      continue;
    }
    const auto z = f_of(s, t.row(n)).as_complex();
    EXPECT_NEAR(std::abs(z), 1.0, 1e-9);
  }
}

TEST(FOfTest, CompletelyMultiplicativeOnValues) {
  // x^2 has P(a) P(b) = P(ab), so f(P(ab)) = f(P(a)) f(P(b)).
  FactorTable t = factor_values(IntPolynomial::parse("x^2"), 400);
  SteinhausSampler s(9);
  for (std::int64_t a = 1; a <= 20; ++a) {
    for (std::int64_t b = 1; b <= 20; ++b) {
      const auto lhs = f_of(s, t.row(a * b)).as_complex();
      const auto rhs = f_of(s, t.row(a)).as_complex() * f_of(s, t.row(b)).as_complex();
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9);
    }
  }
  // f(1) = 1 and f(p^e) = e(e theta_p).
  EXPECT_NEAR(f_of(s, t.row(1)).re, 1.0, 1e-12);
  const double theta = s.angle(3);
  const auto z = f_of(s, t.row(3)).as_complex();
  EXPECT_NEAR(std::arg(z), std::arg(std::polar(1.0, 2 * 2 * M_PI * theta)), 1e-9);
}

TEST(RealizedFunctionTest, MatchesDirectEvaluation) {
  FactorTable t = factor_values(IntPolynomial::parse("x^3+2x+1"), 500);
  SteinhausSampler s(31);
  RealizedFunction f(s, t);
  for (std::int64_t n = 1; n <= 500; ++n) {
    EXPECT_NEAR(std::abs(f.value(n).as_complex() - f_of(s, t.row(n)).as_complex()),
                0.0, 1e-12);
  }
}

TEST(RealizedFunctionTest, MixedStreams) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2+1"), 100);
  SteinhausSampler frozen(1), fresh(2);
  std::vector<bool> none(t.primes().size(), false), all(t.primes().size(), true);
  RealizedFunction a(frozen, fresh, none, t), b(frozen, t);
  RealizedFunction c(frozen, fresh, all, t), d(fresh, t);
  for (std::int64_t n = 1; n <= 100; ++n) {
    EXPECT_EQ(a.phase(n), b.phase(n));
    EXPECT_EQ(c.phase(n), d.phase(n));
  }
}

TEST(PartialSumTest, PiecesPartitionTheSum) {
  for (const char* text : {"x^2+1", "x^2-6x", "x^3+x"}) {
    FactorTable t = factor_values(IntPolynomial::parse(text), 3000);
    SteinhausSampler s(11);
    for (std::int64_t x : {1, 10, 257, 3000}) {
      std::complex<double> pieces = 0.0;
      for (std::uint64_t p : t.primes()) pieces += martingale_piece(s, t, p, x);
      // |P(n)| = 1 rows have no largest prime and belong to no piece.
      for (std::int64_t n = 1; n <= x; ++n) {
        if (t.row(n).value != 0 && t.row(n).largest_prime == 0) {
          pieces += f_of(s, t.row(n)).as_complex();
        }
      }
      EXPECT_NEAR(std::abs(partial_sum(s, t, x) - pieces), 0.0, 1e-8) << text << " " << x;
    }
  }
}

TEST(PrimeSubsumTest, Examples) {
  FactorTable t = factor_values(IntPolynomial::parse("x^2+1"), 10);
  SteinhausSampler s(3);
  std::complex<double> expected = 0.0;
  for (std::int64_t n : {2, 3, 5, 7}) expected += f_of(s, t.row(n)).as_complex();
  EXPECT_NEAR(std::abs(prime_subsum(s, t, 10) - expected), 0.0, 1e-12);
  EXPECT_EQ(prime_subsum(s, t, 1), std::complex<double>(0.0));

  // The root n = 3 of x^2 - 3x is skipped.
  FactorTable r = factor_values(IntPolynomial::parse("x^2-3x"), 5);
  std::complex<double> skip = f_of(s, r.row(2)).as_complex() + f_of(s, r.row(5)).as_complex();
  EXPECT_NEAR(std::abs(prime_subsum(s, r, 5) - skip), 0.0, 1e-12);
}

TEST(UnitFromPhaseTest, Values) {
  EXPECT_NEAR(unit_from_phase(0.25).im, 1.0, 1e-15);
  EXPECT_NEAR(unit_from_phase(0.5).re, -1.0, 1e-15);
}

}  // namespace
}  // namespace chowla
