#include "chowla/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "chowla/errors.hpp"
#include "chowla/stats.hpp"

namespace chowla {

namespace mp = boost::multiprecision;

ScaleGrid build_grid(std::int64_t base, int k, const Rational& ratio,
                     std::int64_t max_point) {
  if (base < 100) throw ConfigError("x", "X must be at least 100");
  if (k < 2) throw ConfigError("k", "at least two scales (k >= 2) required");
  if (ratio < 2) throw ConfigError("ratio", "grid ratio must be at least 2");
  ScaleGrid grid;
  grid.base = base;
  grid.ratio = ratio;
  Rational point(base);
  for (int i = 0; i < k; ++i) {
    // round half up
    Rational shifted = point + Rational(1, 2);
    BigInt rounded = mp::numerator(shifted) / mp::denominator(shifted);
    if (rounded > max_point) {
      throw BudgetError("x", "top grid point " + rounded.str() +
                                 " exceeds the factorization budget of " +
                                 std::to_string(max_point));
    }
    grid.points.push_back(rounded.convert_to<std::int64_t>());
    point *= ratio;
  }
  return grid;
}

PrimeSetFamily::PrimeSetFamily(std::vector<PrimeScale> scales,
                               std::size_t table_primes, std::vector<int> owner)
    : scales_(std::move(scales)), owner_(std::move(owner)) {
  owner_.resize(table_primes, -1);
}

std::vector<bool> PrimeSetFamily::membership() const {
  std::vector<bool> out(owner_.size());
  for (std::size_t i = 0; i < owner_.size(); ++i) out[i] = owner_[i] >= 0;
  return out;
}

PrimeSetFamily build_prime_sets(const FactorTable& table, const ScaleGrid& grid) {
  if (grid.points.empty()) throw ConfigError("k", "empty grid");
  if (grid.points.back() > table.size()) {
    throw ConfigError("x", "factor table does not cover the top grid point");
  }
  const int d = table.polynomial().degree();
  const auto primes = table.primes();
  std::vector<int> owner(primes.size(), -1);
  std::vector<PrimeScale> scales;

  std::int64_t previous_x = 0;
  std::set<std::uint64_t> previous_e;
  for (std::int64_t x : grid.points) {
    PrimeScale scale;
    scale.x = x;
    scale.threshold = static_cast<double>(x) * std::log(static_cast<double>(x)) /
                      (2.0 * d * d);
    for (std::size_t id = 0; id < primes.size(); ++id) {
      if (static_cast<double>(primes[id]) < scale.threshold) continue;
      auto idx = table.indices_of_id(id);
      if (idx.empty()) continue;
      // p | P(n) for some n <= x but for none with n <= x_{i-1}
      if (idx.front() <= x && idx.front() > previous_x) scale.e.push_back(primes[id]);
    }
    for (std::uint64_t p : scale.e) {
      if (!previous_e.count(p)) scale.f.push_back(p);
    }
    std::vector<bool> blocked(static_cast<std::size_t>(x) + 1, false);
    for (std::uint64_t p : scale.f) {
      auto idx = table.indices_of(p);
      bool clash = false;
      for (std::int64_t n : idx) {
        if (n > x) break;
        if (blocked[static_cast<std::size_t>(n)]) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      for (std::int64_t n : idx) {
        if (n > x) break;
        blocked[static_cast<std::size_t>(n)] = true;
      }
      scale.a.push_back(p);
      owner[static_cast<std::size_t>(table.prime_id(p))] =
          static_cast<int>(scales.size());
    }
    previous_e = std::set<std::uint64_t>(scale.e.begin(), scale.e.end());
    previous_x = x;
    scales.push_back(std::move(scale));
  }
  return PrimeSetFamily(std::move(scales), primes.size(), std::move(owner));
}

FamilyCheck check_family(const FactorTable& table, const ScaleGrid& grid,
                         const PrimeSetFamily& family) {
  FamilyCheck check;
  const int d = table.polynomial().degree();
  std::set<std::uint64_t> seen;
  for (int i = 0; i < family.size(); ++i) {
    const PrimeScale& s = family.scale(i);
    for (std::uint64_t p : s.a) {
      if (!seen.insert(p).second) check.disjoint = false;
    }
    std::set<std::uint64_t> e(s.e.begin(), s.e.end());
    std::set<std::uint64_t> f(s.f.begin(), s.f.end());
    for (std::uint64_t p : s.f) {
      if (!e.count(p)) check.nested = false;
    }
    for (std::uint64_t p : s.a) {
      if (!f.count(p)) check.nested = false;
    }
    if (!s.f.empty() &&
        static_cast<std::int64_t>(d) * static_cast<std::int64_t>(s.a.size()) <
            static_cast<std::int64_t>(s.f.size())) {
      check.greedy_bound = false;
    }
    if (s.a.empty()) check.empty_scales.push_back(i);

    std::set<std::uint64_t> a(s.a.begin(), s.a.end());
    const std::int64_t x = grid.points.at(static_cast<std::size_t>(i));
    for (std::int64_t n = 1; n <= x; ++n) {
      const FactoredValue& row = table.row(n);
      int hits = 0;
      for (const PrimePower& pp : row.factors) hits += a.count(pp.prime) ? 1 : 0;
      if (hits > 1) check.no_shared_values = false;
    }
  }
  return check;
}

int classify_term(const FactorTable& table, const PrimeSetFamily& family,
                  int scale_index, std::int64_t n) {
  const FactoredValue& row = table.row(n);
  if (row.value == 0) return 0;
  bool other = false;
  int own = 0;
  for (std::uint32_t id : table.factor_ids(n)) {
    int o = family.owner_of_id(id);
    if (o < 0) continue;
    if (o == scale_index) {
      ++own;
    } else {
      other = true;
    }
  }
  if (other) return 2;
  if (own == 1) return 1;
  if (own == 0) return 3;
  throw std::logic_error("two primes of one A_i divide P(" + std::to_string(n) + ")");
}

SplitSumEntry split_sums(const RealizedFunction& f, const FactorTable& table,
                         const PrimeSetFamily& family, int scale_index) {
  SplitSumEntry out;
  const std::int64_t x = family.scale(scale_index).x;
  for (std::int64_t n = 1; n <= x; ++n) {
    switch (classify_term(table, family, scale_index, n)) {
      case 1: out.s1 += f.value(n).as_complex(); break;
      case 2: out.s2 += f.value(n).as_complex(); break;
      case 3: out.s3 += f.value(n).as_complex(); break;
      default: break;
    }
  }
  return out;
}

SplitSumEntry split_sums(const SteinhausSampler& sampler,
                         const FactorTable& table,
                         const PrimeSetFamily& family, int scale_index) {
  return split_sums(RealizedFunction(sampler, table), table, family, scale_index);
}

namespace {

std::int64_t equal_abs_pairs(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    pairs += static_cast<std::int64_t>((j - i) * (j - i));
    i = j;
  }
  return pairs;
}

// T_{i,p} for every p in A_i, in A_i order.
std::vector<std::vector<std::int64_t>> t_sets(const FactorTable& table,
                                              const PrimeSetFamily& family,
                                              int scale_index) {
  const PrimeScale& s = family.scale(scale_index);
  std::vector<std::vector<std::int64_t>> out;
  for (std::uint64_t p : s.a) {
    std::vector<std::int64_t> members;
    for (std::int64_t n : table.indices_of(p)) {
      if (n > s.x) break;
      bool alone = true;
      for (std::uint32_t id : table.factor_ids(n)) {
        if (table.primes()[id] != p && family.owner_of_id(id) >= 0) {
          alone = false;
          break;
        }
      }
      if (alone) members.push_back(n);
    }
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

SecondMoment s2_second_moment(const FactorTable& table,
                              const PrimeSetFamily& family, int scale_index) {
  SecondMoment out;
  const std::int64_t x = family.scale(scale_index).x;
  const std::int64_t d = table.polynomial().degree();
  std::vector<std::uint64_t> values;
  for (std::int64_t n = 1; n <= x; ++n) {
    const FactoredValue& row = table.row(n);
    if (row.value == 0) continue;
    bool hit = false;
    for (std::uint32_t id : table.factor_ids(n)) {
      int o = family.owner_of_id(id);
      if (o >= 0 && o < scale_index) {
        hit = true;
        break;
      }
    }
    if (hit) values.push_back(row.abs_value());
  }
  out.count = static_cast<std::int64_t>(values.size());
  out.normalized = Rational(out.count, x);
  out.pair_count = equal_abs_pairs(std::move(values));
  for (int j = 0; j < scale_index; ++j) {
    for (std::uint64_t p : family.scale(j).a) {
      out.upper_bound += (x / static_cast<std::int64_t>(p)) * d + d;
    }
  }
  return out;
}

VarianceFloor variance_floor(const FactorTable& table,
                             const PrimeSetFamily& family, int scale_index) {
  VarianceFloor out;
  const std::int64_t x = family.scale(scale_index).x;
  for (const auto& members : t_sets(table, family, scale_index)) {
    std::vector<std::uint64_t> values;
    for (std::int64_t n : members) values.push_back(table.row(n).abs_value());
    out.member_count += static_cast<std::int64_t>(members.size());
    out.pair_count += equal_abs_pairs(std::move(values));
  }
  out.mu = Rational(out.pair_count, 2 * x);
  out.floor = Rational(out.member_count, 2 * x);
  return out;
}

double conditional_variance(const RealizedFunction& f, const FactorTable& table,
                            const PrimeSetFamily& family, int scale_index) {
  double sum = 0.0;
  for (const auto& members : t_sets(table, family, scale_index)) {
    std::complex<double> piece = 0.0;
    for (std::int64_t n : members) piece += f.value(n).as_complex();
    sum += std::norm(piece);
  }
  return sum / (2.0 * static_cast<double>(family.scale(scale_index).x));
}

namespace {

double clamped_log_log(double x) {
  return std::max(1.0, std::log(std::log(x)));
}

}  // namespace

double max_statistic(std::span<const std::complex<double>> totals,
                     std::span<const std::int64_t> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    const double x = static_cast<double>(points[i]);
    best = std::max(best, std::abs(totals[i]) / std::sqrt(x * clamped_log_log(x)));
  }
  return best;
}

FluctReport run_fluct(const IntPolynomial& p, const FluctConfig& config) {
  if (p.degree() < 2) throw ConfigError("poly", "degree must be at least 2");
  if (config.replicates < 2) throw ConfigError("reps", "at least 2 replicates required");
  ScaleGrid grid = build_grid(config.base, config.k, config.ratio, config.max_point);
  SieveOptions sieve_options;
  sieve_options.threads = config.threads;
  sieve_options.max_n = config.max_point;
  FactorTable table = factor_values(p, grid.points.back(), sieve_options);
  PrimeSetFamily family = build_prime_sets(table, grid);

  FluctReport report{p, config, grid};
  report.family_check = check_family(table, grid, family);

  const int k = grid.size();
  const std::int64_t top = grid.points.back();
  // Term classes per scale, and the T_{i,p} sets behind the conditional
  // variance; both are fixed across replicates.
  std::vector<std::vector<std::uint8_t>> classes(static_cast<std::size_t>(k));
  std::vector<std::vector<std::vector<std::int64_t>>> t_by_scale;
  for (int i = 0; i < k; ++i) {
    auto& c = classes[static_cast<std::size_t>(i)];
    c.resize(static_cast<std::size_t>(grid.points[static_cast<std::size_t>(i)]) + 1, 0);
    for (std::int64_t n = 1; n <= grid.points[static_cast<std::size_t>(i)]; ++n) {
      c[static_cast<std::size_t>(n)] =
          static_cast<std::uint8_t>(classify_term(table, family, i, n));
    }
    t_by_scale.push_back(t_sets(table, family, i));
  }

  struct Replicate {
    std::vector<SplitSumEntry> split;
    std::vector<std::complex<double>> partial;
    std::vector<double> conditional_variance;
    double max_stat = 0.0;
  };
  const auto reps = static_cast<std::size_t>(config.replicates);
  std::vector<Replicate> results(reps);
  const std::vector<bool> members = family.membership();
  const SteinhausSampler frozen(config.seed);

  parallel_for(config.replicates, config.threads, [&](std::int64_t r) {
    SteinhausSampler sampler(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    RealizedFunction f = config.conditional
                             ? RealizedFunction(frozen, sampler, members, table)
                             : RealizedFunction(sampler, table);
    std::vector<std::complex<double>> values(static_cast<std::size_t>(top) + 1, 0.0);
    for (std::int64_t n = 1; n <= top; ++n) {
      if (table.row(n).value != 0) {
        values[static_cast<std::size_t>(n)] = f.value(n).as_complex();
      }
    }
    Replicate& out = results[static_cast<std::size_t>(r)];
    out.split.resize(static_cast<std::size_t>(k));
    out.partial.resize(static_cast<std::size_t>(k));
    out.conditional_variance.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const auto& c = classes[static_cast<std::size_t>(i)];
      SplitSumEntry& e = out.split[static_cast<std::size_t>(i)];
      std::complex<double> partial = 0.0;
      for (std::size_t n = 1; n < c.size(); ++n) {
        const std::complex<double>& v = values[n];
        switch (c[n]) {
          case 1: e.s1 += v; break;
          case 2: e.s2 += v; break;
          case 3: e.s3 += v; break;
          default: continue;
        }
        partial += v;
      }
      out.partial[static_cast<std::size_t>(i)] = partial;
      double cv = 0.0;
      for (const auto& t : t_by_scale[static_cast<std::size_t>(i)]) {
        std::complex<double> piece = 0.0;
        for (std::int64_t n : t) piece += values[static_cast<std::size_t>(n)];
        cv += std::norm(piece);
      }
      out.conditional_variance[static_cast<std::size_t>(i)] =
          cv / (2.0 * static_cast<double>(grid.points[static_cast<std::size_t>(i)]));
    }
    out.max_stat = max_statistic(out.partial, grid.points);
  });

  std::vector<std::vector<double>> re_s1(static_cast<std::size_t>(k), std::vector<double>(reps));
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double x = static_cast<double>(grid.points[ui]);
    const double root_x = std::sqrt(x);
    ScaleSummary s;
    const PrimeScale& ps = family.scale(i);
    s.x = ps.x;
    s.threshold = ps.threshold;
    s.e_size = static_cast<std::int64_t>(ps.e.size());
    s.f_size = static_cast<std::int64_t>(ps.f.size());
    s.a_size = static_cast<std::int64_t>(ps.a.size());
    s.a_over_x = static_cast<double>(s.a_size) / x;
    VarianceFloor vf = variance_floor(table, family, i);
    s.mu = vf.mu;
    s.mu_floor = vf.floor;
    s.s2 = s2_second_moment(table, family, i);

    std::vector<double> abs2_s1(reps);
    double cond = 0.0, abs_s2 = 0.0, abs_s3 = 0.0, residual = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const Replicate& rep = results[r];
      const SplitSumEntry& e = rep.split[ui];
      re_s1[ui][r] = e.s1.real() / root_x;
      abs2_s1[r] = std::norm(e.s1);
      cond += rep.conditional_variance[ui];
      abs_s2 += std::abs(e.s2) / root_x;
      abs_s3 += std::abs(e.s3) / root_x;
      residual = std::max(residual, std::abs(e.total() - rep.partial[ui]));
    }
    MeanEstimate m2 = estimate_mean(abs2_s1);
    s.s1_second_moment = m2.mean;
    s.s1_second_moment_std_error = m2.std_error;
    s.var_re_s1_normalized = sample_variance(re_s1[ui]);
    s.mean_conditional_variance = cond / static_cast<double>(reps);
    s.mean_abs_s2_normalized = abs_s2 / static_cast<double>(reps);
    s.mean_abs_s3_normalized = abs_s3 / static_cast<double>(reps);
    s.max_split_residual = residual;
    report.scales.push_back(std::move(s));
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      CovarianceEstimate c = estimate_covariance(re_s1[static_cast<std::size_t>(i)],
                                                 re_s1[static_cast<std::size_t>(j)]);
      CovarianceEntry entry{i, j, c.covariance, c.std_error,
                            c.std_error > 0 ? c.covariance / c.std_error : 0.0};
      report.covariances.push_back(entry);
    }
  }
  for (const Replicate& rep : results) report.max_stats.push_back(rep.max_stat);
  report.quantile_probs = {0.05, 0.25, 0.5, 0.75, 0.95};
  const double scale = std::sqrt(clamped_log_log(static_cast<double>(config.base)));
  for (double prob : report.quantile_probs) {
    double q = quantile(report.max_stats, prob);
    report.max_stat_quantiles.push_back(q);
    report.normalized_quantiles.push_back(q / scale);
  }
  return report;
}

}  // namespace chowla
