#include "chowla/rmf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chowla {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) {
  std::uint64_t product = std::uint64_t{a} * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kPhiloxM0, c[0], lo0, hi0);
    mulhilo(kPhiloxM1, c[2], lo1, hi1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate) {
  return splitmix64(seed + (replicate + 1) * 0x9E3779B97F4A7C15ull);
}

double SteinhausSampler::angle(std::uint64_t p) const {
  PhiloxCounter ctr = {static_cast<std::uint32_t>(p),
                       static_cast<std::uint32_t>(p >> 32), 0, 0};
  PhiloxKey key = {static_cast<std::uint32_t>(seed_),
                   static_cast<std::uint32_t>(seed_ >> 32)};
  PhiloxCounter r = philox4x32(ctr, key);
  std::uint64_t bits = (std::uint64_t{r[0]} << 32) | r[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ComplexUnit unit_from_phase(double phase) {
  const double angle = 2.0 * std::numbers::pi * phase;
  return {std::cos(angle), std::sin(angle)};
}

namespace {

// Adds e * theta to phase and reduces mod 1.
inline double accumulate(double phase, int exponent, double theta) {
  phase += exponent * theta;
  return phase - std::floor(phase);
}

}  // namespace

ComplexUnit f_of(const SteinhausSampler& sampler, const FactoredValue& fv) {
  if (fv.value == 0) {
    throw std::invalid_argument("f is undefined at 0 (n = " +
                                std::to_string(fv.n) + " is a root of P)");
  }
  double phase = 0.0;
  for (const PrimePower& pp : fv.factors) {
    phase = accumulate(phase, pp.exponent, sampler.angle(pp.prime));
  }
  return unit_from_phase(phase);
}

std::complex<double> partial_sum(const SteinhausSampler& sampler,
                                 const FactorTable& table, std::int64_t x) {
  std::complex<double> sum = 0.0;
  for (std::int64_t n = 1; n <= x; ++n) {
    const FactoredValue& row = table.row(n);
    if (row.value == 0) continue;
    sum += f_of(sampler, row).as_complex();
  }
  return sum;
}

std::complex<double> martingale_piece(const SteinhausSampler& sampler,
                                      const FactorTable& table,
                                      std::uint64_t p, std::int64_t x) {
  std::complex<double> sum = 0.0;
  for (std::int64_t n : table.indices_of(p)) {
    if (n > x) break;
    const FactoredValue& row = table.row(n);
    if (row.largest_prime == p) sum += f_of(sampler, row).as_complex();
  }
  return sum;
}

std::complex<double> prime_subsum(const SteinhausSampler& sampler,
                                  const FactorTable& table,
                                  std::int64_t n_max) {
  std::complex<double> sum = 0.0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    if (!is_prime(static_cast<std::uint64_t>(n))) continue;
    const FactoredValue& row = table.row(n);
    if (row.value == 0) continue;
    sum += f_of(sampler, row).as_complex();
  }
  return sum;
}

RealizedFunction::RealizedFunction(const SteinhausSampler& sampler,
                                   const FactorTable& table)
    : table_(&table) {
  auto primes = table.primes();
  angles_.resize(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    angles_[i] = sampler.angle(primes[i]);
  }
}

RealizedFunction::RealizedFunction(const SteinhausSampler& frozen,
                                   const SteinhausSampler& sampler,
                                   const std::vector<bool>& resample,
                                   const FactorTable& table)
    : table_(&table) {
  auto primes = table.primes();
  angles_.resize(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    angles_[i] = resample[i] ? sampler.angle(primes[i]) : frozen.angle(primes[i]);
  }
}

double RealizedFunction::phase(std::int64_t n) const {
  const FactoredValue& row = table_->row(n);
  auto ids = table_->factor_ids(n);
  double phase = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    phase = accumulate(phase, row.factors[k].exponent, angles_[ids[k]]);
  }
  return phase;
}

ComplexUnit RealizedFunction::value(std::int64_t n) const {
  return unit_from_phase(phase(n));
}

}  // namespace chowla
