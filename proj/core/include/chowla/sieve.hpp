#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "chowla/numtheory.hpp"
#include "chowla/polynomial.hpp"

namespace chowla {

// One row of a factor table: n, P(n) and the factorization of |P(n)|.
struct FactoredValue {
  std::int64_t n = 0;
  std::int64_t value = 0;
  std::vector<PrimePower> factors;
  // P+(|P(n)|); 0 when |P(n)| <= 1.
  std::uint64_t largest_prime = 0;

  std::uint64_t abs_value() const {
    return value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                     : static_cast<std::uint64_t>(value);
  }
  // "p1^e1*p2^e2", or "" for |P(n)| <= 1.
  std::string factor_string() const;
};

// Factorizations of P(1..N) together with the inverse relation
// prime -> {n : p | P(n)}. Roots of P carry no factors and appear under no
// prime. Immutable after construction.
class FactorTable {
 public:
  FactorTable(IntPolynomial polynomial, std::int64_t n_max,
              std::vector<FactoredValue> rows);

  const IntPolynomial& polynomial() const { return polynomial_; }
  std::int64_t size() const { return n_max_; }
  const std::vector<FactoredValue>& rows() const { return rows_; }
  const FactoredValue& row(std::int64_t n) const { return rows_.at(n - 1); }

  // Distinct primes dividing some P(n), ascending.
  std::span<const std::uint64_t> primes() const { return primes_; }
  // Index of p in primes(), or -1.
  std::int64_t prime_id(std::uint64_t p) const;
  // Sorted n with p | P(n), P(n) != 0.
  std::span<const std::int64_t> indices_of(std::uint64_t p) const;
  std::span<const std::int64_t> indices_of_id(std::size_t id) const;
  // prime_id of each factor of row n, parallel to row(n).factors.
  std::span<const std::uint32_t> factor_ids(std::int64_t n) const;

 private:
  IntPolynomial polynomial_;
  std::int64_t n_max_;
  std::vector<FactoredValue> rows_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::size_t> index_offsets_;
  std::vector<std::int64_t> indices_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint32_t> row_factor_ids_;
};

struct SieveOptions {
  int threads = 1;
  // Largest N accepted.
  std::int64_t max_n = 10'000'000;
};

// Factors every |P(n)|, 1 <= n <= n_max. Throws ConfigError for n_max < 1
// and BudgetError when n_max exceeds options.max_n or some |P(n)| leaves the
// signed 64-bit range.
FactorTable factor_values(const IntPolynomial& p, std::int64_t n_max,
                          const SieveOptions& options = {});

struct LpfDensity {
  std::int64_t count = 0;
  // count / (N - 1) exactly.
  Rational fraction = 0;
};

// Counts 2 <= n <= N with P+(P(n)) >= scale * n * ln n. Requires scale >= 0.
LpfDensity lpf_density(const FactorTable& table, const Rational& scale);

// 1 / (2 d^2).
Rational default_lpf_scale(int degree);

// Columns: n,value,factors,largest_prime.
void write_table_csv(const FactorTable& table, std::ostream& out);

}  // namespace chowla
