#include "chowla/clt_audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "chowla/energy.hpp"
#include "chowla/errors.hpp"
#include "chowla/rmf.hpp"
#include "chowla/stats.hpp"

namespace chowla {

CltStatistics sample_statistics(std::span<const std::complex<double>> samples) {
  CltStatistics s;
  const std::size_t r = samples.size();
  if (r == 0) return s;
  std::vector<double> re(r), im(r), abs2(r), abs4(r);
  for (std::size_t i = 0; i < r; ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
    abs2[i] = std::norm(samples[i]);
    abs4[i] = abs2[i] * abs2[i];
  }
  s.mean_re = estimate_mean(re).mean;
  s.mean_im = estimate_mean(im).mean;
  s.var_re = sample_variance(re);
  s.var_im = sample_variance(im);
  CovarianceEstimate cov = estimate_covariance(re, im);
  s.cov_re_im = cov.covariance;
  s.cov_re_im_std_error = cov.std_error;
  MeanEstimate m2 = estimate_mean(abs2);
  s.second_moment = m2.mean;
  s.second_moment_std_error = m2.std_error;
  MeanEstimate m4 = estimate_mean(abs4);
  s.fourth_moment = m4.mean;
  s.fourth_moment_std_error = m4.std_error;
  s.ks_re = ks_distance_normal(re, 0.0, 0.5);
  s.ks_im = ks_distance_normal(im, 0.0, 0.5);
  return s;
}

std::vector<std::complex<double>> rotate(
    std::span<const std::complex<double>> samples, double alpha) {
  const std::complex<double> w = unit_from_phase(alpha).as_complex();
  std::vector<std::complex<double>> out;
  out.reserve(samples.size());
  for (const auto& z : samples) out.push_back(z * w);
  return out;
}

CltSampleSet run_clt(const IntPolynomial& p, std::int64_t n,
                     std::int64_t replicates, std::uint64_t seed,
                     const CltOptions& options) {
  PolynomialClass cls = classify(p);
  if (p.degree() < 2) {
    throw ConfigError("poly", "the CLT requires degree >= 2");
  }
  if (cls.is_pure_power) {
    throw ConfigError("poly", "P = " + p.to_string() +
                                  " has the excluded pure-power form w(x+c)^d");
  }
  if (replicates < 100) throw ConfigError("reps", "at least 100 replicates required");
  SieveOptions sieve_options;
  sieve_options.threads = options.threads;
  sieve_options.max_n = options.max_n;
  FactorTable table = factor_values(p, n, sieve_options);
  return run_clt(table, n, replicates, seed, options);
}

CltSampleSet run_clt(const FactorTable& table, std::int64_t n,
                     std::int64_t replicates, std::uint64_t seed,
                     const CltOptions& options) {
  if (n < 1 || n > table.size()) throw ConfigError("n", "N outside the factor table");
  if (replicates < 1) throw ConfigError("reps", "replicate count must be positive");
  CltSampleSet out{table.polynomial(), n, replicates, seed};
  out.samples.resize(static_cast<std::size_t>(replicates));
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  parallel_for(replicates, options.threads, [&](std::int64_t r) {
    RealizedFunction f(SteinhausSampler(derive_seed(seed, static_cast<std::uint64_t>(r))),
                       table);
    std::complex<double> sum = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      if (table.row(k).value == 0) continue;
      sum += f.value(k).as_complex();
    }
    out.samples[static_cast<std::size_t>(r)] = sum * norm;
  });
  out.stats = sample_statistics(out.samples);

  std::vector<std::int64_t> abs_values;
  for (std::int64_t k = 1; k <= n; ++k) {
    const FactoredValue& row = table.row(k);
    if (row.value == 0) {
      ++out.stats.zero_terms;
      continue;
    }
    if (row.value < 0) out.stats.negative_values = true;
    if (row.abs_value() == 1) ++out.stats.unit_terms;
    abs_values.push_back(static_cast<std::int64_t>(row.abs_value()));
  }
  std::sort(abs_values.begin(), abs_values.end());
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < abs_values.size();) {
    std::size_t j = i;
    while (j < abs_values.size() && abs_values[j] == abs_values[i]) ++j;
    pairs += (j - i) * (j - i);
    i = j;
  }
  out.stats.exact_second_moment = Rational(pairs, n);
  if (!options.skip_exact_fourth_moment) {
    EnergyOptions energy_options;
    energy_options.memory_budget = options.energy_memory_budget;
    energy_options.chunked = true;
    EnergyCounts e = energy_of_values(abs_values, energy_options);
    out.stats.exact_fourth_moment = Rational(BigInt(e.total), BigInt(n) * n);
  }
  return out;
}

namespace {

struct AuditPiece {
  std::uint64_t prime;
  std::vector<std::uint64_t> values;
};

std::vector<AuditPiece> audit_pieces(const FactorTable& table, std::int64_t n) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (std::int64_t k = 1; k <= n; ++k) {
    const FactoredValue& row = table.row(k);
    if (row.largest_prime == 0) continue;
    by_prime[row.largest_prime].push_back(row.abs_value());
  }
  std::vector<AuditPiece> out;
  for (auto& [p, v] : by_prime) out.push_back({p, std::move(v)});
  return out;
}

}  // namespace

McLeishEntry mcleish_entry(const FactorTable& table, std::int64_t n) {
  if (n < 1 || n > table.size()) throw ConfigError("grid", "N outside the factor table");
  McLeishEntry e;
  e.n = n;
  std::vector<AuditPiece> pieces = audit_pieces(table, n);

  struct PairProduct {
    uint128 product;
    std::uint64_t prime;
  };
  std::vector<PairProduct> pair_products;
  for (const AuditPiece& piece : pieces) {
    std::vector<std::int64_t> values(piece.values.begin(), piece.values.end());
    e.same_prime_energy += energy_of_values(values).total;
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size();) {
      std::size_t j = i;
      while (j < values.size() && values[j] == values[i]) ++j;
      e.repeated_value_pairs += (j - i) * (j - i);
      i = j;
    }
    for (std::uint64_t a : piece.values) {
      for (std::uint64_t b : piece.values) {
        pair_products.push_back({static_cast<uint128>(a) * b, piece.prime});
      }
    }
  }
  std::sort(pair_products.begin(), pair_products.end(),
            [](const PairProduct& x, const PairProduct& y) {
              return x.product < y.product;
            });

  // |P4| = |P1 P2 P3| with (n3, n4) in one piece: the quotient |P4|/|P3|
  // must be a same-piece pair product, whose piece is determined by its
  // largest prime.
  for (const AuditPiece& piece : pieces) {
    for (std::uint64_t v3 : piece.values) {
      for (std::uint64_t v4 : piece.values) {
        if (v4 % v3 != 0 || v4 == v3) continue;
        const uint128 target = v4 / v3;
        auto range = std::equal_range(
            pair_products.begin(), pair_products.end(), PairProduct{target, 0},
            [](const PairProduct& x, const PairProduct& y) {
              return x.product < y.product;
            });
        for (auto it = range.first; it != range.second; ++it) {
          if (it->prime == piece.prime) {
            ++e.same_prime_triples;
          } else {
            ++e.paired_triples_distinct;
          }
        }
      }
    }
  }
  e.paired_distinct = energy_paired_primes(table, n).distinct_primes;

  const BigInt big_n(n);
  e.variance_sum = Rational(BigInt(e.repeated_value_pairs), big_n);
  e.lindeberg_sum = Rational(BigInt(3) * e.same_prime_energy +
                                 BigInt(4) * e.same_prime_triples,
                             2 * big_n * big_n);
  e.cross_term = Rational(BigInt(e.paired_distinct) +
                              BigInt(2) * e.paired_triples_distinct,
                          big_n * big_n);
  return e;
}

McLeishAudit mcleish_audit(const FactorTable& table,
                           std::span<const std::int64_t> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ConfigError("grid", "grid must be strictly ascending");
  }
  McLeishAudit audit{table.polynomial()};
  for (std::int64_t n : grid) audit.entries.push_back(mcleish_entry(table, n));
  return audit;
}

}  // namespace chowla
