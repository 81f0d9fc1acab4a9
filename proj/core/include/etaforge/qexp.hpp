#ifndef ETAFORGE_QEXP_HPP
#define ETAFORGE_QEXP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "etaforge/etacore.hpp"

namespace etaforge {

// Exact truncated q-expansion  q^lead * (c_0 + c_1 q + c_2 q^2 + ...).
// coefficients.size() is the truncation: coefficients beyond it are unknown,
// not zero.  lead may be a non-integral rational (multiples of 1/24).
struct QSeries {
  Rational leading_exponent;
  std::vector<BigInt> coefficients;

  std::size_t truncation() const { return coefficients.size(); }
  bool operator==(const QSeries&) const = default;
};

// prod_{n>=1} (1 - q^n)^exponent, truncated to `terms` coefficients, without
// the q^{exponent/24} prefactor (leading_exponent is 0).  Negative exponents
// go through exact series inversion.  terms >= 1.
QSeries eta_power_series(long exponent, std::size_t terms);

// Full quotient prod_{d | N} eta(d tau)^{r_d} as a series in q with
// leading_exponent = sum d*r_d / 24, truncated to `terms` coefficients.
QSeries quotient_series(const EtaExponents& e, std::size_t terms);

// Product with truncation tracked: the result keeps min of the operand
// truncations, never inventing unknown coefficients.
QSeries multiply(const QSeries& a, const QSeries& b);

// Lead plus the index of the first nonzero coefficient.  Throws if every
// known coefficient is zero (the order is then beyond the truncation).
Rational series_order(const QSeries& s);

// Print form "q^(a/b) * (c0 + c1*q + ...)"; integral leads print as q^(a).
std::string to_string(const QSeries& s);

}  // namespace etaforge

#endif
