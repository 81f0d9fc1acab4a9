#include "etaforge/qexp.hpp"

#include <sstream>

namespace etaforge {

namespace {

// prod_{n>=1} (1 - q^n) truncated: Euler's pentagonal number theorem,
// sum_{j in Z} (-1)^j q^{j(3j-1)/2}.
std::vector<BigInt> pentagonal_series(std::size_t terms) {
  std::vector<BigInt> c(terms, BigInt(0));
  c[0] = 1;
  for (long j = 1;; ++j) {
    const long long g1 = static_cast<long long>(j) * (3 * j - 1) / 2;
    const long long g2 = static_cast<long long>(j) * (3 * j + 1) / 2;
    if (g1 >= static_cast<long long>(terms) && g2 >= static_cast<long long>(terms)) break;
    const BigInt sign = (j % 2 == 0) ? 1 : -1;
    if (g1 < static_cast<long long>(terms)) c[static_cast<std::size_t>(g1)] += sign;
    if (g2 < static_cast<long long>(terms)) c[static_cast<std::size_t>(g2)] += sign;
  }
  return c;
}

std::vector<BigInt> mul_trunc(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                              std::size_t terms) {
  std::vector<BigInt> c(terms, BigInt(0));
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i] == 0) continue;
    const std::size_t jmax = std::min(b.size(), terms - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

// Inverse of a series with constant term 1.
std::vector<BigInt> invert(const std::vector<BigInt>& a) {
  const std::size_t terms = a.size();
  std::vector<BigInt> b(terms, BigInt(0));
  b[0] = 1;
  for (std::size_t n = 1; n < terms; ++n) {
    BigInt acc = 0;
    for (std::size_t i = 1; i <= n && i < a.size(); ++i) acc += a[i] * b[n - i];
    b[n] = -acc;
  }
  return b;
}

std::vector<BigInt> pow_trunc(std::vector<BigInt> base, unsigned long e, std::size_t terms) {
  std::vector<BigInt> acc(terms, BigInt(0));
  acc[0] = 1;
  while (e > 0) {
    if (e & 1) acc = mul_trunc(acc, base, terms);
    e >>= 1;
    if (e > 0) base = mul_trunc(base, base, terms);
  }
  return acc;
}

}  // namespace

QSeries eta_power_series(long exponent, std::size_t terms) {
  if (terms < 1) throw std::domain_error("the truncation must keep at least one term");
  QSeries out;
  out.leading_exponent = 0;
  if (exponent == 0) {
    out.coefficients.assign(terms, BigInt(0));
    out.coefficients[0] = 1;
    return out;
  }
  std::vector<BigInt> base = pentagonal_series(terms);
  if (exponent < 0) base = invert(base);
  const unsigned long e =
      exponent < 0 ? static_cast<unsigned long>(-(exponent + 1)) + 1UL
                   : static_cast<unsigned long>(exponent);
  out.coefficients = pow_trunc(std::move(base), e, terms);
  return out;
}

QSeries quotient_series(const EtaExponents& e, std::size_t terms) {
  if (terms < 1) throw std::domain_error("the truncation must keep at least one term");
  const auto& ds = e.level().divisors();
  BigInt lead24 = 0;
  std::vector<BigInt> acc(terms, BigInt(0));
  acc[0] = 1;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (e.values()[i] == 0) continue;
    lead24 += ds[i] * e.values()[i];
    const long r = to_long_checked(e.values()[i]);
    const long d = to_long_checked(ds[i]);
    // Coefficients of the d-rescaled factor sit at exponents d*j < terms.
    const std::size_t inner = (terms - 1) / static_cast<std::size_t>(d) + 1;
    const QSeries part = eta_power_series(r, inner);
    std::vector<BigInt> spread(terms, BigInt(0));
    for (std::size_t j = 0; j < inner; ++j) {
      const std::size_t pos = j * static_cast<std::size_t>(d);
      if (pos < terms) spread[pos] = part.coefficients[j];
    }
    acc = mul_trunc(acc, spread, terms);
  }
  QSeries out;
  out.leading_exponent = Rational(lead24, 24);
  out.leading_exponent.canonicalize();
  out.coefficients = std::move(acc);
  return out;
}

QSeries multiply(const QSeries& a, const QSeries& b) {
  const std::size_t terms = std::min(a.truncation(), b.truncation());
  if (terms < 1) throw std::domain_error("cannot multiply empty series");
  QSeries out;
  out.leading_exponent = a.leading_exponent + b.leading_exponent;
  out.leading_exponent.canonicalize();
  out.coefficients = mul_trunc(a.coefficients, b.coefficients, terms);
  return out;
}

Rational series_order(const QSeries& s) {
  for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
    if (s.coefficients[i] != 0) {
      Rational v = s.leading_exponent + static_cast<long>(i);
      v.canonicalize();
      return v;
    }
  }
  throw std::domain_error("series is zero to the truncation; order unknown");
}

std::string to_string(const QSeries& s) {
  std::ostringstream os;
  os << "q^(" << s.leading_exponent.get_num();
  if (s.leading_exponent.get_den() != 1) os << "/" << s.leading_exponent.get_den();
  os << ") * (";
  bool first = true;
  for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
    const BigInt& c = s.coefficients[i];
    if (c == 0) continue;
    const BigInt abs_c = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << abs_c.get_str();
    } else {
      if (abs_c != 1) os << abs_c.get_str() << "*";
      os << "q";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  os << " + ...)";
  return os.str();
}

}  // namespace etaforge
