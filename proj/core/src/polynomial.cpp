#include "chowla/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <map>
#include <sstream>

#include "chowla/errors.hpp"
#include "chowla/numtheory.hpp"

namespace chowla {

namespace mp = boost::multiprecision;

std::string to_string(int128 v) {
  if (v == 0) return "0";
  bool negative = v < 0;
  uint128 u = negative ? static_cast<uint128>(-(v + 1)) + 1
                       : static_cast<uint128>(v);
  std::string out = to_string(u);
  return negative ? "-" + out : out;
}

std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string digits;
  while (v > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto is_int = [](const std::string& t) {
    std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (start >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(start), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto as_int = [](const std::string& t) {
    return BigInt(t[0] == '+' ? t.substr(1) : t);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) {
      throw ConfigError("rational", "not a rational number: '" + text + "'");
    }
    BigInt d = as_int(den);
    if (d == 0) throw ConfigError("rational", "zero denominator: '" + text + "'");
    return Rational(as_int(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole) || (!frac.empty() && !is_int(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
      throw ConfigError("rational", "not a rational number: '" + text + "'");
    }
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt w = mp::abs(as_int(whole));
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    Rational r(w * scale + f, scale);
    return negative ? Rational(-r) : r;
  }
  if (!is_int(s)) {
    throw ConfigError("rational", "not a rational number: '" + text + "'");
  }
  return Rational(as_int(s));
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs)
    : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) {
    throw ConfigError("poly", "polynomial must have degree >= 1");
  }
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') {
      out.push_back(ch);
    }
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

IntPolynomial parse_comma_form(std::string_view text) {
  std::vector<BigInt> coeffs;
  std::string s = strip(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(start, end - start);
    std::string digits = item;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      digits = digits.substr(1);
    }
    if (!all_digits(digits)) {
      throw ConfigError("poly", "bad coefficient '" + item + "' in '" +
                                    std::string(text) + "'");
    }
    coeffs.emplace_back(item[0] == '+' ? item.substr(1) : item);
    start = end + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_human_form(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw ConfigError("poly", "empty polynomial");
  std::map<int, BigInt> terms;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ConfigError("poly", "cannot parse polynomial '" + std::string(text) +
                                  "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string digits = s.substr(digits_start, i - digits_start);
    BigInt coefficient = digits.empty() ? BigInt(1) : BigInt(digits);
    int power = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t exp_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        std::string exp = s.substr(exp_start, i - exp_start);
        if (exp.empty() || exp.size() > 4) fail("bad exponent");
        power = std::stoi(exp);
      }
    } else if (digits.empty()) {
      fail("expected a coefficient or 'x'");
    }
    terms[power] += sign * coefficient;
  }
  int degree = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<BigInt> coeffs(static_cast<std::size_t>(degree) + 1, BigInt(0));
  for (const auto& [power, c] : terms) coeffs[static_cast<std::size_t>(power)] = c;
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.find(',') != std::string::npos) return parse_comma_form(text);
  return parse_human_form(text);
}

BigInt IntPolynomial::eval(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * n + *it;
  }
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + Rational(*it);
  }
  return acc;
}

std::int64_t IntPolynomial::eval_i64(std::int64_t n) const {
  static const BigInt kMax = BigInt(std::numeric_limits<std::int64_t>::max());
  BigInt v = eval(BigInt(n));
  if (mp::abs(v) > kMax) {
    throw BudgetError("n", "|P(" + std::to_string(n) +
                               ")| exceeds the signed 64-bit value range");
  }
  return v.convert_to<std::int64_t>();
}

std::string IntPolynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = mp::abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

std::string IntPolynomial::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += coeffs_[i].str();
  }
  return out;
}

namespace {

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// Evaluates sum c_i r^i s^(deg - i); zero iff r/s is a root.
BigInt homogeneous_eval(const std::vector<BigInt>& coeffs, const BigInt& r,
                        const BigInt& s) {
  BigInt acc = 0;
  BigInt s_pow = 1;
  std::vector<BigInt> s_powers(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    s_powers[i] = s_pow;
    s_pow *= s;
  }
  BigInt r_pow = 1;
  const std::size_t deg = coeffs.size() - 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc += coeffs[i] * r_pow * s_powers[deg - i];
    r_pow *= r;
  }
  return acc;
}

// Exact quotient of q(x) by (s x - r) where r/s is a root in lowest terms.
std::vector<BigInt> deflate(const std::vector<BigInt>& q, const BigInt& r,
                            const BigInt& s) {
  // q(x) = (s x - r) * b(x); solve from the top coefficient down.
  const std::size_t deg = q.size() - 1;
  std::vector<BigInt> b(deg, BigInt(0));
  for (std::size_t k = deg; k-- > 0;) {
    // q_{k+1} = s b_k - r b_{k+1}
    BigInt next = (k + 1 < deg) ? b[k + 1] : BigInt(0);
    BigInt numerator = q[k + 1] + r * next;
    b[k] = numerator / s;
  }
  return b;
}

std::uint64_t to_u64_or_throw(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw ConfigError("poly", "coefficient too large for rational-root search");
  }
  return v.convert_to<std::uint64_t>();
}

}  // namespace

RationalCoeffs expand_pure_power(const BigInt& w, const Rational& c, int d) {
  RationalCoeffs out(static_cast<std::size_t>(d) + 1);
  Rational c_pow = 1;
  for (int k = 0; k <= d; ++k) {
    // coefficient of x^(d-k) is w C(d,k) c^k
    out[static_cast<std::size_t>(d - k)] = Rational(w * binomial(d, k)) * c_pow;
    c_pow *= c;
  }
  return out;
}

RationalCoeffs reflect(const IntPolynomial& p, const Rational& beta) {
  const int d = p.degree();
  RationalCoeffs out(static_cast<std::size_t>(d) + 1, Rational(0));
  for (int i = 0; i <= d; ++i) {
    // a_i (beta - x)^i = a_i sum_k C(i,k) beta^(i-k) (-x)^k
    Rational beta_pow = 1;
    std::vector<Rational> beta_powers(static_cast<std::size_t>(i) + 1);
    for (int e = 0; e <= i; ++e) {
      beta_powers[static_cast<std::size_t>(e)] = beta_pow;
      beta_pow *= beta;
    }
    for (int k = 0; k <= i; ++k) {
      Rational term = Rational(p.coeff(i) * binomial(i, k)) *
                      beta_powers[static_cast<std::size_t>(i - k)];
      if (k % 2 == 1) term = -term;
      out[static_cast<std::size_t>(k)] += term;
    }
  }
  return out;
}

bool shifted_even_check(const IntPolynomial& p, const Rational& beta) {
  RationalCoeffs r = reflect(p, beta);
  for (int i = 0; i <= p.degree(); ++i) {
    if (r[static_cast<std::size_t>(i)] != Rational(p.coeff(i))) return false;
  }
  return true;
}

std::vector<Rational> rational_roots(const IntPolynomial& p) {
  std::vector<Rational> roots;
  std::vector<BigInt> q = p.coeffs();
  while (q.size() > 1 && q.front() == 0) {
    roots.emplace_back(0);
    q.erase(q.begin());
  }
  bool progress = true;
  while (q.size() > 1 && progress) {
    progress = false;
    auto numerators = divisors(to_u64_or_throw(mp::abs(q.front())));
    auto denominators = divisors(to_u64_or_throw(mp::abs(q.back())));
    for (std::uint64_t s : denominators) {
      for (std::uint64_t r : numerators) {
        if (std::gcd(r, s) != 1) continue;
        for (int sign : {1, -1}) {
          BigInt num = sign * BigInt(r);
          BigInt den = BigInt(s);
          if (homogeneous_eval(q, num, den) == 0) {
            roots.emplace_back(num, den);
            q = deflate(q, num, den);
            progress = true;
            break;
          }
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

PolynomialClass classify(const IntPolynomial& p) {
  PolynomialClass out;
  const int d = p.degree();
  if (d < 1) throw ConfigError("poly", "classification requires degree >= 1");
  out.degree = d;

  const BigInt& lead = p.leading();
  const Rational c = make_rational(p.coeff(d - 1), BigInt(d * lead));
  RationalCoeffs expansion = expand_pure_power(lead, c, d);
  out.is_pure_power = true;
  for (int i = 0; i <= d; ++i) {
    if (expansion[static_cast<std::size_t>(i)] != Rational(p.coeff(i))) {
      out.is_pure_power = false;
      break;
    }
  }
  if (out.is_pure_power) {
    out.pure_power_w = lead;
    out.pure_power_c = c;
  }

  out.rational_roots = rational_roots(p);
  out.is_product_of_linear_factors =
      static_cast<int>(out.rational_roots.size()) == d;

  if (d % 2 == 0) {
    Rational beta = make_rational(BigInt(-2 * p.coeff(d - 1)), BigInt(d * lead));
    if (shifted_even_check(p, beta)) out.generalized_even_center = beta;
  }

  out.clt_admissible = d >= 2 && !out.is_pure_power;
  out.fluct_admissible = d >= 2 && !out.is_product_of_linear_factors;
  return out;
}

}  // namespace chowla
