#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chowla/bigint.hpp"
#include "chowla/polynomial.hpp"
#include "chowla/sieve.hpp"

namespace chowla {

// {x in [1, N] : x = a (mod q)}.
class ProgressionRange {
 public:
  // Throws ConfigError unless N >= 1, q >= 1 and 0 <= a < q.
  ProgressionRange(std::int64_t n, std::int64_t q = 1, std::int64_t a = 0);

  std::int64_t n() const { return n_; }
  std::int64_t q() const { return q_; }
  std::int64_t a() const { return a_; }
  const std::vector<std::int64_t>& members() const { return members_; }
  std::int64_t size() const { return static_cast<std::int64_t>(members_.size()); }
  // 1 when a = 0, else 0.
  int indicator_a() const { return a_ == 0 ? 1 : 0; }

  // floor((N - a) / q) + [a >= 1], without enumerating.
  static std::int64_t member_count(std::int64_t n, std::int64_t q,
                                   std::int64_t a);

 private:
  std::int64_t n_;
  std::int64_t q_;
  std::int64_t a_;
  std::vector<std::int64_t> members_;
};

struct EnergyOptions {
  // Largest number of stored pair products per pass.
  std::int64_t memory_budget = 80'000'000;
  // Split the product table into value partitions, one pass each, when it
  // exceeds memory_budget. Without it, oversize inputs throw BudgetError.
  bool chunked = false;
};

// Counts over an ordered quadruple space A^4 with a1 a2 = a3 a4.
struct EnergyCounts {
  std::uint64_t total = 0;
  std::uint64_t diagonal_arg = 0;
  std::uint64_t value_diagonal = 0;
  std::uint64_t nontrivial = 0;
  // diagonal_arg + value_diagonal: the trivial family when value
  // coincidences are counted as trivial.
  std::uint64_t generalized_trivial = 0;
  std::uint64_t passes = 1;
};

// Multiplicative energy of a multiset of values indexed by arguments
// (values[i] is the value at the i-th argument).
EnergyCounts energy_of_values(std::span<const std::int64_t> values,
                              const EnergyOptions& options = {});

struct EnergyReport {
  ProgressionRange range;
  IntPolynomial polynomial;
  std::int64_t members = 0;

  std::uint64_t total = 0;
  std::uint64_t diagonal_arg = 0;
  std::uint64_t value_diagonal = 0;
  std::uint64_t nontrivial = 0;
  std::uint64_t generalized_trivial = 0;

  // 2M^2 - M.
  BigInt main_term = 0;
  // 2N^2 / q^2, the leading term of the asymptotic.
  Rational asymptotic_main_term = 0;
  // 5/3 for d = 2, 2 - 1/(2(2d-1)) for d > 2; absent for d = 1.
  std::optional<Rational> error_exponent;
  // (total - diagonal_arg) / N^exponent.
  std::optional<double> offdiag_over_bound;
  bool generalized_even = false;
  std::uint64_t passes = 1;

  std::uint64_t offdiag() const { return total - diagonal_arg; }
};

// Exact E^x(P(range)). Throws ConfigError for an empty range and
// BudgetError when the product table exceeds the budget without chunking.
EnergyReport energy(const IntPolynomial& p, const ProgressionRange& range,
                    const EnergyOptions& options = {});

// #{(x, y, X, Y) in range^4 : P1(x) P1(y) = P2(X) P2(Y)}.
std::uint64_t energy_cross(const IntPolynomial& p1, const IntPolynomial& p2,
                           const ProgressionRange& range,
                           const EnergyOptions& options = {});

std::optional<Rational> error_exponent(int degree);

enum class LpfMode { kSamePrimeAllFour, kPairedPrimes };

struct PairedPrimeCounts {
  // Quadruples with P+(P(n1)) = P+(P(n2)), P+(P(n3)) = P+(P(n4)) and
  // |P(n1) P(n3)| = |P(n2) P(n4)|, split by whether the two primes agree.
  std::uint64_t same_prime = 0;
  std::uint64_t distinct_primes = 0;
  std::uint64_t total() const { return same_prime + distinct_primes; }
};

// Energy counts restricted by largest prime factor, over n <= n_max (the
// whole table when n_max is 0). Equalities compare |P(n)|; rows with
// |P(n)| <= 1 are excluded.
//
// kSamePrimeAllFour: sum over p of #{P+ = p for all four, |P1 P2| = |P3 P4|}.
std::uint64_t energy_same_prime(const FactorTable& table,
                                std::int64_t n_max = 0);
PairedPrimeCounts energy_paired_primes(const FactorTable& table,
                                       std::int64_t n_max = 0);
// Single entry point; kPairedPrimes returns the total of both splits.
std::uint64_t energy_constrained_lpf(const FactorTable& table, LpfMode mode,
                                     std::int64_t n_max = 0);

struct ExponentFitPoint {
  std::int64_t n = 0;
  std::uint64_t total = 0;
  std::uint64_t offdiag = 0;
  double ratio = 0.0;
};

struct ExponentFit {
  Rational exponent = 0;
  std::vector<ExponentFitPoint> points;
  // Least-squares slope of ln(offdiag) against ln N over points with
  // offdiag > 0; absent with fewer than two such points.
  std::optional<double> slope;
};

// Rejects pure powers and unsorted grids with ConfigError.
ExponentFit exponent_fit(const IntPolynomial& p,
                         std::span<const std::int64_t> grid,
                         const EnergyOptions& options = {});

struct BombieriPilaBound {
  int degree = 0;
  std::int64_t n = 0;
  double value = 0.0;
  double log_value = 0.0;
  // N >= exp(d^6).
  bool precondition_holds = false;
};

// N^(1/d) exp(12 sqrt(d ln N ln ln N)). Throws ConfigError for d < 2 or
// N <= 15.
BombieriPilaBound bp_bound(int degree, std::int64_t n);

}  // namespace chowla
