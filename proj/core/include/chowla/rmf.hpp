#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "chowla/sieve.hpp"

namespace chowla {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

// Seed of replicate r: splitmix64(seed + (r + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate);

// Value of a Steinhaus function: a point on the unit circle.
struct ComplexUnit {
  double re = 1.0;
  double im = 0.0;

  std::complex<double> as_complex() const { return {re, im}; }
};

// Steinhaus random multiplicative function f with f(p) = e(theta_p). theta_p
// is a pure function of (seed, p): Philox4x32-10 keyed by the seed, counter
// (p_lo, p_hi, 0, 0), top 53 bits of the first two words.
class SteinhausSampler {
 public:
  explicit SteinhausSampler(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  // theta_p in [0, 1).
  double angle(std::uint64_t p) const;

 private:
  std::uint64_t seed_;
};

// e(phase) = exp(2 pi i phase).
ComplexUnit unit_from_phase(double phase);

// f(|value|). Throws std::invalid_argument for value 0.
ComplexUnit f_of(const SteinhausSampler& sampler, const FactoredValue& fv);

// sum_{n <= x, P(n) != 0} f(P(n)), ascending n.
std::complex<double> partial_sum(const SteinhausSampler& sampler,
                                 const FactorTable& table, std::int64_t x);

// sum over n <= x with P+(P(n)) = p of f(P(n)).
std::complex<double> martingale_piece(const SteinhausSampler& sampler,
                                      const FactorTable& table,
                                      std::uint64_t p, std::int64_t x);

// sum over primes p <= n_max of f(P(p)), skipping roots of P.
std::complex<double> prime_subsum(const SteinhausSampler& sampler,
                                  const FactorTable& table, std::int64_t n_max);

// The angles of one sampler over every prime of a table, precomputed so the
// value at each row costs a handful of additions.
class RealizedFunction {
 public:
  RealizedFunction(const SteinhausSampler& sampler, const FactorTable& table);
  // Angles of primes whose id is flagged in `resample` come from `sampler`,
  // the rest from `frozen`.
  RealizedFunction(const SteinhausSampler& frozen,
                   const SteinhausSampler& sampler,
                   const std::vector<bool>& resample, const FactorTable& table);

  // Phase of f(P(n)) in [0, 1); P(n) must be nonzero.
  double phase(std::int64_t n) const;
  ComplexUnit value(std::int64_t n) const;

 private:
  const FactorTable* table_;
  std::vector<double> angles_;
};

}  // namespace chowla
