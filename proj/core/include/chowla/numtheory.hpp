#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace chowla {

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Primes below `limit` by the sieve of Eratosthenes.
std::vector<std::uint32_t> primes_below(std::uint32_t limit);

// The primes below 10^4 used for trial division.
std::span<const std::uint32_t> trial_primes();

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// A nontrivial factor of an odd composite n using Brent's cycle variant of
// Pollard rho.
std::uint64_t find_factor(std::uint64_t n);

// Complete factorization, primes ascending. factor(0) and factor(1) are
// empty.
std::vector<PrimePower> factor(std::uint64_t n);

// All positive divisors of n >= 1, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace chowla
