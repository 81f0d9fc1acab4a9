#ifndef ETAFORGE_ETACORE_HPP
#define ETAFORGE_ETACORE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "etaforge/arithmetic.hpp"

namespace etaforge {

// Exponent vector r of a formal eta-quotient prod_{d | N} eta(d*tau)^{r_d}.
// Dense over the divisors of the level, ascending; zeros are stored.
class EtaExponents {
 public:
  EtaExponents(Level level, std::vector<BigInt> values);
  static EtaExponents zero(Level level);
  // values given as (divisor, exponent) pairs, unspecified divisors get 0.
  static EtaExponents from_pairs(Level level,
                                 const std::vector<std::pair<BigInt, BigInt>>& pairs);

  const Level& level() const { return level_; }
  const std::vector<BigInt>& values() const { return values_; }
  const BigInt& at_divisor(const BigInt& d) const;
  // Nonzero (divisor, exponent) pairs, ascending by divisor.
  std::vector<std::pair<BigInt, BigInt>> nonzero_pairs() const;

  bool operator==(const EtaExponents& other) const;

 private:
  Level level_;
  std::vector<BigInt> values_;
};

// Pointwise sum; both operands must live at the same level.
EtaExponents add(const EtaExponents& a, const EtaExponents& b);

// Weight (1/2) sum r_d, a half-integer in general.
Rational weight(const EtaExponents& e);

// sum d * r_d = 0 (mod 24)
bool congruence_delta(const EtaExponents& e);
// sum (N/d) * r_d = 0 (mod 24)
bool congruence_codelta(const EtaExponents& e);

// Squarefree integer D, possibly negative, such that the quotient's
// nebentypus is d -> kronecker(D, d).
struct CharacterKernel {
  BigInt d_argument;
  bool operator==(const CharacterKernel&) const = default;
};

// D = squarefree kernel of (-1)^k * prod d^{r_d}, computed from per-prime
// exponent parities (the product itself is never materialized).  Requires
// integer weight k; half-integral weight has no quadratic nebentypus in this
// framework and is rejected.
CharacterKernel character_kernel(const EtaExponents& e);

// Spot-check that the two mod-24 congruences agree on random exponent
// vectors at this level.  They are provably equivalent when gcd(N,6) = 1,
// which is exactly the domain this helper accepts.  Deterministic for a
// fixed seed.
bool congruences_equivalent_check(const Level& level, int samples = 1000,
                                  std::uint64_t seed = 0x5eedf00d);

// Canonical text form: nonzero entries as [[d,r_d],...], ascending by d.
// The zero vector prints as [].
std::string to_pair_text(const EtaExponents& e);
// Parse the canonical text form at a given level.  Rejects divisors not
// dividing N, repeated divisors, and malformed input.
EtaExponents eta_from_pair_text(const Level& level, const std::string& text);

}  // namespace etaforge

#endif
