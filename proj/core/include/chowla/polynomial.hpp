#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chowla/bigint.hpp"

namespace chowla {

// Univariate polynomial with exact integer coefficients, lowest degree
// first. The leading coefficient is never zero.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  // Accepts "c0,c1,...,cd" or a human form such as "x^2+1", "2x^3-x+5",
  // "x^2 - 6*x".
  static IntPolynomial parse(std::string_view text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& coeff(int i) const { return coeffs_.at(i); }
  const BigInt& leading() const { return coeffs_.back(); }

  BigInt eval(const BigInt& n) const;
  Rational eval(const Rational& x) const;

  // Exact value at n as a signed 64-bit integer; throws BudgetError when
  // |P(n)| does not fit.
  std::int64_t eval_i64(std::int64_t n) const;

  // Human form, e.g. "x^2 - 6x".
  std::string to_string() const;
  // Comma form, e.g. "0,-6,1".
  std::string to_csv() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

// Coefficients of a polynomial with rational coefficients, lowest first.
using RationalCoeffs = std::vector<Rational>;

// Coefficients of w * (x + c)^d.
RationalCoeffs expand_pure_power(const BigInt& w, const Rational& c, int d);

// Coefficients of P(beta - x).
RationalCoeffs reflect(const IntPolynomial& p, const Rational& beta);

struct PolynomialClass {
  int degree = 0;

  bool is_pure_power = false;
  // Witness P(x) = w (x + c)^d; meaningful only when is_pure_power.
  BigInt pure_power_w = 0;
  Rational pure_power_c = 0;

  bool is_product_of_linear_factors = false;
  // All rational roots, with multiplicity, ascending.
  std::vector<Rational> rational_roots;

  // beta with P(beta - x) = P(x), when it exists.
  std::optional<Rational> generalized_even_center;

  bool clt_admissible = false;
  bool fluct_admissible = false;
};

// Throws ConfigError for degree 0.
PolynomialClass classify(const IntPolynomial& p);

// True iff P(beta - x) - P(x) is the zero polynomial.
bool shifted_even_check(const IntPolynomial& p, const Rational& beta);

// All rational roots of p with multiplicity, ascending. p must be nonzero.
std::vector<Rational> rational_roots(const IntPolynomial& p);

}  // namespace chowla
