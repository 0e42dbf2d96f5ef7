#include "chowla/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "chowla/errors.hpp"
#include "chowla/rmf.hpp"

namespace chowla {

ProgressionRange::ProgressionRange(std::int64_t n, std::int64_t q,
                                   std::int64_t a)
    : n_(n), q_(q), a_(a) {
  if (n < 1) throw ConfigError("n", "N must be at least 1");
  if (q < 1) throw ConfigError("q", "modulus q must be at least 1");
  if (a < 0 || a >= q) throw ConfigError("a", "residue a must satisfy 0 <= a < q");
  for (std::int64_t x = (a == 0 ? q : a); x <= n; x += q) members_.push_back(x);
}

std::int64_t ProgressionRange::member_count(std::int64_t n, std::int64_t q,
                                            std::int64_t a) {
  std::int64_t diff = n - a;
  std::int64_t floor_div = diff >= 0 ? diff / q : -((-diff + q - 1) / q);
  return std::max<std::int64_t>(0, floor_div + (a >= 1 ? 1 : 0));
}

namespace {

// Products v_i v_j (i <= j) of one value partition, grouped: each entry is
// a distinct product and its ordered-pair multiplicity.
struct ProductGroup {
  int128 product;
  std::uint64_t multiplicity;
};

std::uint64_t partition_of(int128 v, std::uint64_t partitions) {
  if (partitions == 1) return 0;
  auto u = static_cast<uint128>(v);
  auto lo = static_cast<std::uint64_t>(u);
  auto hi = static_cast<std::uint64_t>(u >> 64);
  return splitmix64(lo ^ splitmix64(hi)) % partitions;
}

std::vector<ProductGroup> grouped_products(std::span<const std::int64_t> values,
                                           std::uint64_t partition,
                                           std::uint64_t partitions) {
  std::vector<int128> off_diagonal;
  std::vector<int128> squares;
  const std::size_t m = values.size();
  for (std::size_t i = 0; i < m; ++i) {
    const int128 vi = values[i];
    int128 sq = vi * vi;
    if (partition_of(sq, partitions) == partition) squares.push_back(sq);
    for (std::size_t j = i + 1; j < m; ++j) {
      int128 prod = vi * values[j];
      if (partition_of(prod, partitions) == partition) off_diagonal.push_back(prod);
    }
  }
  std::sort(off_diagonal.begin(), off_diagonal.end());
  std::sort(squares.begin(), squares.end());

  std::vector<ProductGroup> groups;
  std::size_t i = 0, j = 0;
  while (i < off_diagonal.size() || j < squares.size()) {
    int128 v;
    if (j == squares.size() ||
        (i < off_diagonal.size() && off_diagonal[i] <= squares[j])) {
      v = off_diagonal[i];
    } else {
      v = squares[j];
    }
    std::uint64_t mult = 0;
    while (i < off_diagonal.size() && off_diagonal[i] == v) {
      mult += 2;  // (x1, x2) and (x2, x1)
      ++i;
    }
    while (j < squares.size() && squares[j] == v) {
      mult += 1;
      ++j;
    }
    groups.push_back({v, mult});
  }
  return groups;
}

std::uint64_t plan_partitions(std::uint64_t stored, const EnergyOptions& options,
                              const char* what) {
  const auto budget = static_cast<std::uint64_t>(std::max<std::int64_t>(1, options.memory_budget));
  if (stored <= budget) return 1;
  if (!options.chunked) {
    throw BudgetError("memory-budget",
                      std::string(what) + " needs " + std::to_string(stored) +
                          " stored pair products, above the budget of " +
                          std::to_string(budget) +
                          "; rerun with --chunked or raise --memory-budget");
  }
  // Hash partitions are uneven; aim at 80% of the budget per pass.
  std::uint64_t target = std::max<std::uint64_t>(1, budget * 4 / 5);
  return (stored + target - 1) / target;
}

std::vector<std::int64_t> values_on(const IntPolynomial& p,
                                    const ProgressionRange& range) {
  std::vector<std::int64_t> values;
  values.reserve(range.members().size());
  for (std::int64_t x : range.members()) values.push_back(p.eval_i64(x));
  return values;
}

std::uint64_t pair_count(std::size_t m) {
  return static_cast<std::uint64_t>(m) * (m + 1) / 2;
}

std::uint64_t checked_u64(uint128 v, const char* what) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw BudgetError("n", std::string(what) + " overflows 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

EnergyCounts energy_of_values(std::span<const std::int64_t> values,
                              const EnergyOptions& options) {
  EnergyCounts out;
  const std::uint64_t m = values.size();
  const std::uint64_t partitions =
      plan_partitions(pair_count(values.size()), options, "energy");
  uint128 total = 0;
  for (std::uint64_t k = 0; k < partitions; ++k) {
    for (const ProductGroup& g : grouped_products(values, k, partitions)) {
      total += static_cast<uint128>(g.multiplicity) * g.multiplicity;
    }
  }
  out.total = checked_u64(total, "energy");
  out.passes = partitions;

  std::vector<std::int64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  uint128 s2 = 0, s4 = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    uint128 mu = j - i;
    s2 += mu * mu;
    s4 += mu * mu * mu * mu;
    i = j;
  }
  out.diagonal_arg = 2 * m * m - m;
  out.generalized_trivial = checked_u64(2 * s2 * s2 - s4, "trivial count");
  out.value_diagonal = out.generalized_trivial - out.diagonal_arg;
  out.nontrivial = out.total - out.generalized_trivial;
  return out;
}

std::optional<Rational> error_exponent(int degree) {
  if (degree == 2) return Rational(5, 3);
  if (degree > 2) return Rational(2) - Rational(1, 2 * (2 * degree - 1));
  return std::nullopt;
}

EnergyReport energy(const IntPolynomial& p, const ProgressionRange& range,
                    const EnergyOptions& options) {
  if (range.size() < 1) {
    throw ConfigError("a", "the progression [N]_{a,q} has no members");
  }
  std::vector<std::int64_t> values = values_on(p, range);
  EnergyCounts counts = energy_of_values(values, options);

  const std::int64_t m = range.size();
  EnergyReport report{range, p};
  report.members = m;
  report.total = counts.total;
  report.diagonal_arg = counts.diagonal_arg;
  report.value_diagonal = counts.value_diagonal;
  report.nontrivial = counts.nontrivial;
  report.generalized_trivial = counts.generalized_trivial;
  report.passes = counts.passes;
  report.main_term = BigInt(2) * m * m - m;
  report.asymptotic_main_term =
      Rational(BigInt(2) * range.n() * range.n(), BigInt(range.q()) * range.q());
  report.error_exponent = error_exponent(p.degree());
  if (report.error_exponent) {
    double scale = std::pow(static_cast<double>(range.n()),
                            to_double(*report.error_exponent));
    report.offdiag_over_bound = static_cast<double>(report.offdiag()) / scale;
  }
  report.generalized_even = classify(p).generalized_even_center.has_value();
  return report;
}

std::uint64_t energy_cross(const IntPolynomial& p1, const IntPolynomial& p2,
                           const ProgressionRange& range,
                           const EnergyOptions& options) {
  if (range.size() < 1) {
    throw ConfigError("a", "the progression [N]_{a,q} has no members");
  }
  std::vector<std::int64_t> v1 = values_on(p1, range);
  std::vector<std::int64_t> v2 = values_on(p2, range);
  const std::uint64_t partitions =
      plan_partitions(2 * pair_count(v1.size()), options, "cross energy");
  uint128 total = 0;
  for (std::uint64_t k = 0; k < partitions; ++k) {
    auto g1 = grouped_products(v1, k, partitions);
    auto g2 = grouped_products(v2, k, partitions);
    std::size_t i = 0, j = 0;
    while (i < g1.size() && j < g2.size()) {
      if (g1[i].product < g2[j].product) {
        ++i;
      } else if (g2[j].product < g1[i].product) {
        ++j;
      } else {
        total += static_cast<uint128>(g1[i].multiplicity) * g2[j].multiplicity;
        ++i;
        ++j;
      }
    }
  }
  return checked_u64(total, "cross energy");
}

namespace {

// Rows n <= n_max with |P(n)| > 1, grouped by largest prime (ascending).
struct Piece {
  std::uint64_t prime;
  std::vector<std::uint64_t> values;  // |P(n)|, ascending n
};

std::vector<Piece> pieces_of(const FactorTable& table, std::int64_t n_max) {
  if (n_max <= 0 || n_max > table.size()) n_max = table.size();
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const FactoredValue& row = table.row(n);
    if (row.largest_prime == 0) continue;
    by_prime[row.largest_prime].push_back(row.abs_value());
  }
  std::vector<Piece> out;
  out.reserve(by_prime.size());
  for (auto& [p, values] : by_prime) out.push_back({p, std::move(values)});
  return out;
}

}  // namespace

std::uint64_t energy_same_prime(const FactorTable& table, std::int64_t n_max) {
  std::uint64_t total = 0;
  for (const Piece& piece : pieces_of(table, n_max)) {
    std::vector<std::int64_t> values(piece.values.begin(), piece.values.end());
    total += energy_of_values(values).total;
  }
  return total;
}

PairedPrimeCounts energy_paired_primes(const FactorTable& table,
                                       std::int64_t n_max) {
  // |P1 P3| = |P2 P4| iff |P1|/|P2| = |P4|/|P3|: count ordered same-piece
  // pairs by reduced ratio, then square the per-ratio totals.
  struct Entry {
    std::uint64_t num;
    std::uint64_t den;
    std::uint64_t prime;
  };
  std::vector<Entry> entries;
  for (const Piece& piece : pieces_of(table, n_max)) {
    for (std::uint64_t a : piece.values) {
      for (std::uint64_t b : piece.values) {
        std::uint64_t g = std::gcd(a, b);
        entries.push_back({a / g, b / g, piece.prime});
      }
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.num, x.den, x.prime) < std::tie(y.num, y.den, y.prime);
  });
  uint128 all = 0, same = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    uint128 ratio_total = 0;
    while (j < entries.size() && entries[j].num == entries[i].num &&
           entries[j].den == entries[i].den) {
      std::size_t k = j;
      while (k < entries.size() && entries[k].num == entries[j].num &&
             entries[k].den == entries[j].den &&
             entries[k].prime == entries[j].prime) {
        ++k;
      }
      uint128 c = k - j;
      same += c * c;
      ratio_total += c;
      j = k;
    }
    all += ratio_total * ratio_total;
    i = j;
  }
  PairedPrimeCounts out;
  out.same_prime = checked_u64(same, "paired count");
  out.distinct_primes = checked_u64(all - same, "paired count");
  return out;
}

std::uint64_t energy_constrained_lpf(const FactorTable& table, LpfMode mode,
                                     std::int64_t n_max) {
  if (mode == LpfMode::kSamePrimeAllFour) return energy_same_prime(table, n_max);
  return energy_paired_primes(table, n_max).total();
}

ExponentFit exponent_fit(const IntPolynomial& p,
                         std::span<const std::int64_t> grid,
                         const EnergyOptions& options) {
  PolynomialClass cls = classify(p);
  if (cls.is_pure_power) {
    throw ConfigError("poly", "P = " + p.to_string() +
                                  " has the excluded pure-power form w(x+c)^d");
  }
  if (grid.empty()) throw ConfigError("grid", "grid must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw ConfigError("grid", "grid must be strictly ascending");
    }
  }
  ExponentFit fit;
  fit.exponent = *error_exponent(p.degree());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (std::int64_t n : grid) {
    EnergyReport report = energy(p, ProgressionRange(n), options);
    ExponentFitPoint point;
    point.n = n;
    point.total = report.total;
    point.offdiag = report.offdiag();
    point.ratio = *report.offdiag_over_bound;
    fit.points.push_back(point);
    if (point.offdiag > 0) {
      double lx = std::log(static_cast<double>(n));
      double ly = std::log(static_cast<double>(point.offdiag));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++used;
    }
  }
  if (used >= 2) {
    double denom = used * sxx - sx * sx;
    if (denom > 0) fit.slope = (used * sxy - sx * sy) / denom;
  }
  return fit;
}

BombieriPilaBound bp_bound(int degree, std::int64_t n) {
  if (degree < 2) throw ConfigError("d", "degree must be at least 2");
  if (n <= 15) throw ConfigError("n", "N must be at least 16 so that ln ln N > 0");
  BombieriPilaBound out;
  out.degree = degree;
  out.n = n;
  const double ln_n = std::log(static_cast<double>(n));
  out.log_value = ln_n / degree + 12.0 * std::sqrt(degree * ln_n * std::log(ln_n));
  out.value = std::exp(out.log_value);
  out.precondition_holds = ln_n >= std::pow(static_cast<double>(degree), 6);
  return out;
}

}  // namespace chowla
