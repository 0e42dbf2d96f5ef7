#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "chowla/bigint.hpp"
#include "chowla/polynomial.hpp"
#include "chowla/sieve.hpp"

namespace chowla {

struct CltStatistics {
  double mean_re = 0.0;
  double mean_im = 0.0;
  double var_re = 0.0;
  double var_im = 0.0;
  double cov_re_im = 0.0;
  double cov_re_im_std_error = 0.0;
  double second_moment = 0.0;  // mean |X|^2
  double second_moment_std_error = 0.0;
  double fourth_moment = 0.0;  // mean |X|^4
  double fourth_moment_std_error = 0.0;
  // Against N(0, 1/2).
  double ks_re = 0.0;
  double ks_im = 0.0;

  // #{(n1, n2) : |P(n1)| = |P(n2)| != 0} / N.
  Rational exact_second_moment = 0;
  // #{|P1 P2| = |P3 P4|, all nonzero} / N^2.
  Rational exact_fourth_moment = 0;
  std::int64_t unit_terms = 0;  // n with |P(n)| = 1
  std::int64_t zero_terms = 0;  // roots of P, skipped
  bool negative_values = false;
};

// Samples (1/sqrt(N)) sum_{n <= N} f(P(n)), one per replicate.
struct CltSampleSet {
  IntPolynomial polynomial;
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<std::complex<double>> samples;
  CltStatistics stats;
};

struct CltOptions {
  int threads = 1;
  std::int64_t max_n = 10'000'000;
  std::int64_t energy_memory_budget = 80'000'000;
  // Skip the exact E^x(P([N])) computation.
  bool skip_exact_fourth_moment = false;
};

// Replicate r uses SteinhausSampler(derive_seed(seed, r)). Throws
// ConfigError for pure powers, degree < 2, or replicates < 100.
CltSampleSet run_clt(const IntPolynomial& p, std::int64_t n,
                     std::int64_t replicates, std::uint64_t seed,
                     const CltOptions& options = {});

// Same as run_clt over an existing table (which must cover n).
CltSampleSet run_clt(const FactorTable& table, std::int64_t n,
                     std::int64_t replicates, std::uint64_t seed,
                     const CltOptions& options = {});

// Statistics of a sample set; exact fields are left at zero.
CltStatistics sample_statistics(std::span<const std::complex<double>> samples);

// Every sample multiplied by e(alpha).
std::vector<std::complex<double>> rotate(
    std::span<const std::complex<double>> samples, double alpha);

// Deterministic McLeish quantities for M_p(N) = Re (N/2)^{-1/2} T_p, with
// T_p = sum over n <= N, P+(P(n)) = p of f(P(n)).
struct McLeishEntry {
  std::int64_t n = 0;
  // sum_p E M_p^2
  Rational variance_sum = 0;
  // sum_p E M_p^4
  Rational lindeberg_sum = 0;
  // sum_{p != q} E M_p^2 M_q^2
  Rational cross_term = 0;

  // Raw counts behind the three fields.
  std::uint64_t repeated_value_pairs = 0;  // same-piece |P1| = |P2|
  std::uint64_t same_prime_energy = 0;     // |P1 P2| = |P3 P4|, one piece
  std::uint64_t same_prime_triples = 0;    // |P1 P2 P3| = |P4|, one piece
  std::uint64_t paired_distinct = 0;       // |P1 P3| = |P2 P4|, pieces p != q
  std::uint64_t paired_triples_distinct = 0;  // |P1 P2 P3| = |P4|, p != q
};

struct McLeishAudit {
  IntPolynomial polynomial;
  std::vector<McLeishEntry> entries;
};

// The grid must be ascending and within the table.
McLeishAudit mcleish_audit(const FactorTable& table,
                           std::span<const std::int64_t> grid);
McLeishEntry mcleish_entry(const FactorTable& table, std::int64_t n);

}  // namespace chowla
