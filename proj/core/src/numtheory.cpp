#include "chowla/numtheory.hpp"

#include <algorithm>
#include <numeric>

namespace chowla {

namespace {

constexpr std::uint32_t kTrialLimit = 10'000;

}  // namespace

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j < limit; j += i) {
      composite[j] = true;
    }
  }
  return out;
}

std::span<const std::uint32_t> trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_below(kTrialLimit);
  return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases decide primality for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t find_factor(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  // Brent's variant: batch gcds over blocks of m steps, backtrack on failure.
  constexpr std::uint64_t m = 128;
  for (std::uint64_t c = 1;; ++c) {
    auto step = [&](std::uint64_t v) {
      return static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(v) * v + c) % n);
    };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

namespace {

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = find_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<PrimePower> factor(std::uint64_t n) {
  std::vector<PrimePower> out;
  if (n < 2) return out;
  for (std::uint32_t p : trial_primes()) {
    if (std::uint64_t{p} * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n == 1) return out;
  std::vector<std::uint64_t> rest;
  factor_into(n, rest);
  std::sort(rest.begin(), rest.end());
  for (std::uint64_t p : rest) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  if (n == 0) return {};
  for (const PrimePower& pp : factor(n)) {
    const std::size_t base = out.size();
    std::uint64_t power = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace chowla
