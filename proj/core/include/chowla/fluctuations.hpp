#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "chowla/bigint.hpp"
#include "chowla/polynomial.hpp"
#include "chowla/rmf.hpp"
#include "chowla/sieve.hpp"

namespace chowla {

// Geometric surrogate x_i = round(X * ratio^(i-1)), i = 1..k.
struct ScaleGrid {
  std::int64_t base = 0;
  Rational ratio = 0;
  std::vector<std::int64_t> points;

  int size() const { return static_cast<int>(points.size()); }
};

// Throws ConfigError unless X >= 100, k >= 2, ratio >= 2, and BudgetError
// when the top point exceeds max_point.
ScaleGrid build_grid(std::int64_t base, int k, const Rational& ratio,
                     std::int64_t max_point = 10'000'000);

struct PrimeScale {
  std::int64_t x = 0;
  // x ln x / (2 d^2).
  double threshold = 0.0;
  std::vector<std::uint64_t> e;
  std::vector<std::uint64_t> f;
  std::vector<std::uint64_t> a;
};

class PrimeSetFamily {
 public:
  PrimeSetFamily(std::vector<PrimeScale> scales, std::size_t table_primes,
                 std::vector<int> owner);

  const std::vector<PrimeScale>& scales() const { return scales_; }
  const PrimeScale& scale(int i) const { return scales_.at(i); }
  int size() const { return static_cast<int>(scales_.size()); }

  // Index i with prime id in A_i, or -1 when the prime is outside every A_i.
  int owner_of_id(std::size_t prime_id) const { return owner_[prime_id]; }
  // Flags, per table prime id, membership in the union of the A_i.
  std::vector<bool> membership() const;

 private:
  std::vector<PrimeScale> scales_;
  std::vector<int> owner_;
};

// E_i, F_i and the greedy A_i (ascending primes) for every scale. The table
// must cover the top point.
PrimeSetFamily build_prime_sets(const FactorTable& table,
                                const ScaleGrid& grid);

struct FamilyCheck {
  bool disjoint = true;
  bool no_shared_values = true;
  bool greedy_bound = true;
  bool nested = true;  // A_i within F_i within E_i
  std::vector<int> empty_scales;
};

// Exhaustive check of the three family properties.
FamilyCheck check_family(const FactorTable& table, const ScaleGrid& grid,
                         const PrimeSetFamily& family);

// Which of S_{i,1}, S_{i,2}, S_{i,3} the term n lands in at scale i:
// 1, 2, 3, or 0 for roots of P.
int classify_term(const FactorTable& table, const PrimeSetFamily& family,
                  int scale_index, std::int64_t n);

struct SplitSumEntry {
  std::complex<double> s1;
  std::complex<double> s2;
  std::complex<double> s3;
  std::complex<double> total() const { return s1 + s2 + s3; }
};

SplitSumEntry split_sums(const RealizedFunction& f, const FactorTable& table,
                         const PrimeSetFamily& family, int scale_index);

SplitSumEntry split_sums(const SteinhausSampler& sampler,
                         const FactorTable& table,
                         const PrimeSetFamily& family, int scale_index);

struct SecondMoment {
  // #{n <= x_i : some prime of A_1..A_{i-1} divides P(n)}
  std::int64_t count = 0;
  // count / x_i
  Rational normalized = 0;
  // Exact E|S_{i,2}|^2: pairs of such n with |P(n)| = |P(n')|.
  std::int64_t pair_count = 0;
  // sum_{j<i} sum_{p in A_j} (floor(x_i/p) d + d)
  std::int64_t upper_bound = 0;
};

SecondMoment s2_second_moment(const FactorTable& table,
                              const PrimeSetFamily& family, int scale_index);

struct VarianceFloor {
  // (1/(2 x_i)) sum_p #{(n, n') in T_{i,p}^2 : |P(n)| = |P(n')|}
  Rational mu = 0;
  // (1/(2 x_i)) sum_p |T_{i,p}|
  Rational floor = 0;
  std::int64_t pair_count = 0;
  std::int64_t member_count = 0;
};

VarianceFloor variance_floor(const FactorTable& table,
                             const PrimeSetFamily& family, int scale_index);

// (1/(2 x_i)) sum_{p in A_i} |sum_{n in T_{i,p}} f(P(n))|^2, the variance
// of Re S_{i,1} given f off the union of the A_i.
double conditional_variance(const RealizedFunction& f,
                            const FactorTable& table,
                            const PrimeSetFamily& family, int scale_index);

// max_i |sum_{n <= x_i} f(P(n))| / sqrt(x_i max(1, ln ln x_i)).
double max_statistic(std::span<const std::complex<double>> totals,
                     std::span<const std::int64_t> points);

struct FluctConfig {
  std::int64_t base = 0;
  int k = 0;
  Rational ratio = 0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  bool conditional = false;
  int threads = 1;
  std::int64_t max_point = 10'000'000;
};

struct ScaleSummary {
  std::int64_t x = 0;
  double threshold = 0.0;
  std::int64_t e_size = 0;
  std::int64_t f_size = 0;
  std::int64_t a_size = 0;
  double a_over_x = 0.0;
  Rational mu = 0;
  Rational mu_floor = 0;
  SecondMoment s2;
  // Monte-Carlo E|S_{i,1}|^2 with its standard error, against 2 x_i mu_i.
  double s1_second_moment = 0.0;
  double s1_second_moment_std_error = 0.0;
  double var_re_s1_normalized = 0.0;    // Var(Re S_{i,1}/sqrt(x_i))
  double mean_conditional_variance = 0.0;
  double mean_abs_s2_normalized = 0.0;  // mean |S_{i,2}|/sqrt(x_i)
  double mean_abs_s3_normalized = 0.0;
  double max_split_residual = 0.0;      // max |S1+S2+S3 - partial_sum|
};

struct CovarianceEntry {
  int i = 0;
  int j = 0;
  double covariance = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
};

struct FluctReport {
  IntPolynomial polynomial;
  FluctConfig config;
  ScaleGrid grid;
  FamilyCheck family_check;
  std::vector<ScaleSummary> scales;
  std::vector<CovarianceEntry> covariances;
  std::vector<double> max_stats;  // per replicate
  std::vector<double> quantile_probs;
  std::vector<double> max_stat_quantiles;
  // Quantiles divided by sqrt(max(1, ln ln X)).
  std::vector<double> normalized_quantiles;
};

// Requires degree >= 2; ConfigError otherwise.
FluctReport run_fluct(const IntPolynomial& p, const FluctConfig& config);

}  // namespace chowla
