#ifndef ETAFORGE_ARITHMETIC_HPP
#define ETAFORGE_ARITHMETIC_HPP

#include <gmpxx.h>

#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

namespace etaforge {

using BigInt = mpz_class;
using Rational = mpq_class;

// Raised when a theorem-backed guarantee fails at runtime (a bug, never a
// bad input).  The CLI maps this to its own exit code so batch pipelines can
// distinguish "invalid input" from "the engine contradicted itself".
struct ConsistencyAlarm : std::logic_error {
  explicit ConsistencyAlarm(const std::string& what) : std::logic_error(what) {}
};

struct PrimePower {
  BigInt p;
  unsigned e = 0;
};

// A positive integer together with its factorization, divisor list (ascending)
// and the data derived from them.  Construct via factorize() or from_factors().
class Level {
 public:
  const BigInt& n() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  const std::vector<BigInt>& divisors() const { return divisors_; }
  const BigInt& radical() const { return radical_; }
  bool squarefree() const { return squarefree_; }
  bool coprime6() const { return coprime6_; }

  std::size_t divisor_count() const { return divisors_.size(); }
  // p-adic valuation of divisors()[i] for each prime in factors(), in order.
  const std::vector<unsigned>& divisor_exponents(std::size_t i) const {
    return divisor_exponents_[i];
  }
  // Index of d in divisors(); throws std::domain_error if d does not divide n.
  std::size_t divisor_index(const BigInt& d) const;
  bool divides(const BigInt& d) const;

 private:
  friend Level from_factors(const BigInt& n, std::vector<PrimePower> factors);
  Level() = default;

  BigInt n_;
  std::vector<PrimePower> factors_;
  std::vector<BigInt> divisors_;
  std::vector<std::vector<unsigned>> divisor_exponents_;
  BigInt radical_;
  bool squarefree_ = true;
  bool coprime6_ = true;
};

// Trial-division factorization.  Rejects n < 1.  factorize(1) has no prime
// factors and divisor list {1}.
Level factorize(const BigInt& n);

// Assembly seam for callers that factor n by other means.  Validates that the
// p are prime (Miller-Rabin via GMP), strictly increasing, with e >= 1, and
// that the product matches n.
Level from_factors(const BigInt& n, std::vector<PrimePower> factors);

// h = (1/2) gcd({p - 1 : p | n} union {24}).  Defined for odd n > 1; the
// value always lands in {1, 2, 3, 4, 6, 12}.  Rejects n = 1 (no prime
// divisors) and even n (the gcd goes odd and h would not be an integer).
unsigned h_of(const Level& level);

// True when every prime divisor p satisfies p > 5 and p = 1 or 5 (mod 24),
// with at least one p = 5 (mod 24).  Rejects n = 1.
bool in_S(const Level& level);

struct ResidueSet {
  std::set<unsigned> residues;  // least residues mod 24 of the prime divisors
  bool operator==(const ResidueSet&) const = default;
};

// Residues mod 24 of the prime divisors.  Rejects n = 1.
ResidueSet residue_set(const Level& level);

// Kronecker symbol (a|m), full domain: any integers a, m including m <= 0.
int kronecker(const BigInt& a, const BigInt& m);

// Convenience guard: converts to long, throws std::domain_error on overflow.
long to_long_checked(const BigInt& v);

}  // namespace etaforge

#endif
