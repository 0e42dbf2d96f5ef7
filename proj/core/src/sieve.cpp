#include "chowla/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "chowla/errors.hpp"
#include "chowla/stats.hpp"

namespace chowla {

std::string FactoredValue::factor_string() const {
  std::string out;
  for (const PrimePower& pp : factors) {
    if (!out.empty()) out += "*";
    out += std::to_string(pp.prime);
    if (pp.exponent != 1) out += "^" + std::to_string(pp.exponent);
  }
  return out;
}

FactorTable::FactorTable(IntPolynomial polynomial, std::int64_t n_max,
                         std::vector<FactoredValue> rows)
    : polynomial_(std::move(polynomial)), n_max_(n_max), rows_(std::move(rows)) {
  for (const FactoredValue& row : rows_) {
    for (const PrimePower& pp : row.factors) primes_.push_back(pp.prime);
  }
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());

  std::vector<std::size_t> counts(primes_.size(), 0);
  row_offsets_.reserve(rows_.size() + 1);
  row_offsets_.push_back(0);
  for (const FactoredValue& row : rows_) {
    for (const PrimePower& pp : row.factors) {
      auto id = static_cast<std::uint32_t>(prime_id(pp.prime));
      row_factor_ids_.push_back(id);
      ++counts[id];
    }
    row_offsets_.push_back(row_factor_ids_.size());
  }
  index_offsets_.assign(primes_.size() + 1, 0);
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    index_offsets_[i + 1] = index_offsets_[i] + counts[i];
  }
  indices_.resize(index_offsets_.back());
  std::vector<std::size_t> cursor(index_offsets_.begin(), index_offsets_.end() - 1);
  // Rows are visited in ascending n, so every index list comes out sorted.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      indices_[cursor[row_factor_ids_[k]]++] = rows_[r].n;
    }
  }
}

std::int64_t FactorTable::prime_id(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return -1;
  return it - primes_.begin();
}

std::span<const std::int64_t> FactorTable::indices_of_id(std::size_t id) const {
  return std::span<const std::int64_t>(indices_).subspan(
      index_offsets_[id], index_offsets_[id + 1] - index_offsets_[id]);
}

std::span<const std::int64_t> FactorTable::indices_of(std::uint64_t p) const {
  std::int64_t id = prime_id(p);
  if (id < 0) return {};
  return indices_of_id(static_cast<std::size_t>(id));
}

std::span<const std::uint32_t> FactorTable::factor_ids(std::int64_t n) const {
  auto r = static_cast<std::size_t>(n - 1);
  return std::span<const std::uint32_t>(row_factor_ids_)
      .subspan(row_offsets_.at(r), row_offsets_[r + 1] - row_offsets_[r]);
}

FactorTable factor_values(const IntPolynomial& p, std::int64_t n_max,
                          const SieveOptions& options) {
  if (n_max < 1) throw ConfigError("n", "N must be at least 1");
  if (n_max > options.max_n) {
    throw BudgetError("n", "N = " + std::to_string(n_max) +
                               " exceeds the factorization budget of " +
                               std::to_string(options.max_n) + " values");
  }
  std::vector<FactoredValue> rows(static_cast<std::size_t>(n_max));
  // Evaluate serially: eval_i64 may throw and the first failure must win.
  for (std::int64_t n = 1; n <= n_max; ++n) {
    FactoredValue& row = rows[static_cast<std::size_t>(n - 1)];
    row.n = n;
    row.value = p.eval_i64(n);
  }
  parallel_for(n_max, options.threads, [&](std::int64_t i) {
    FactoredValue& row = rows[static_cast<std::size_t>(i)];
    std::uint64_t v = row.abs_value();
    if (v <= 1) return;
    row.factors = factor(v);
    row.largest_prime = row.factors.back().prime;
  });
  return FactorTable(p, n_max, std::move(rows));
}

Rational default_lpf_scale(int degree) {
  return Rational(1, 2 * degree * degree);
}

LpfDensity lpf_density(const FactorTable& table, const Rational& scale) {
  if (scale < 0) throw ConfigError("lpf-scale", "threshold scale must be >= 0");
  LpfDensity out;
  const std::int64_t n_max = table.size();
  if (n_max < 2) return out;
  const double s = to_double(scale);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    double threshold = s * static_cast<double>(n) * std::log(static_cast<double>(n));
    if (static_cast<double>(table.row(n).largest_prime) >= threshold) ++out.count;
  }
  out.fraction = Rational(out.count, n_max - 1);
  return out;
}

void write_table_csv(const FactorTable& table, std::ostream& out) {
  out << "n,value,factors,largest_prime\n";
  for (const FactoredValue& row : table.rows()) {
    out << row.n << ',' << row.value << ',' << row.factor_string() << ','
        << row.largest_prime << '\n';
  }
}

}  // namespace chowla
