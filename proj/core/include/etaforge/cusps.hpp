#ifndef ETAFORGE_CUSPS_HPP
#define ETAFORGE_CUSPS_HPP

#include <vector>

#include "etaforge/etacore.hpp"

namespace etaforge {

// Cusp representative 1/d of Gamma_0(N), one per divisor d of squarefree N.
struct Cusp {
  BigInt d;
  bool operator==(const Cusp&) const = default;
};

// The full cusp list {1/d : d | N}.  Complete only for squarefree N, so
// anything else is rejected.
std::vector<Cusp> cusp_set(const Level& level);

// Order of vanishing of the quotient at the cusp 1/d (c = 1 representative):
//
//   v = (N/24) * sum_{delta | N} gcd(d,delta)^2 r_delta / (gcd(d,N/d) d delta)
//
// Exact rational; 24*v is always an integer.  Valid at any level (the cusp
// list itself is only complete for squarefree N, but the per-cusp order is
// not so restricted).  Rejects d that do not divide N.
Rational vanishing_order(const EtaExponents& e, const BigInt& d);

// A_N with entries N * gcd(d_i,d_j)^2 / (d_i d_j), indexed by the divisors
// ascending.  Row d_i times the exponent vector gives 24 * v_{1/d_i}.
// Squarefree levels only.
class CuspMatrix {
 public:
  CuspMatrix(Level level, std::vector<std::vector<BigInt>> entries);
  const Level& level() const { return level_; }
  const std::vector<std::vector<BigInt>>& entries() const { return entries_; }
  const BigInt& entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  bool operator==(const CuspMatrix& other) const;

 private:
  Level level_;
  std::vector<std::vector<BigInt>> entries_;
};

CuspMatrix cusp_matrix(const Level& level);

// True when every row and every column of A_N lists each divisor of N
// exactly once (a Latin square on the divisor set).
bool check_latin(const Level& level);

// The divisor d_j = gcd(c,d_i) * gcd(N/c, N/d_i) at which row d_i of A_N
// carries the entry c.  Requires c | N and d_i | N.
BigInt latin_witness(const Level& level, const BigInt& c, const BigInt& d_i);

// Vanishing orders at all cusps 1/d, ascending by d.
class CuspOrderVector {
 public:
  CuspOrderVector(std::vector<BigInt> divisors, std::vector<Rational> orders);
  const std::vector<BigInt>& divisors() const { return divisors_; }
  const std::vector<Rational>& orders() const { return orders_; }
  const Rational& at_divisor(const BigInt& d) const;
  // The integer vector 24*v.
  std::vector<BigInt> times24() const;
  bool all_nonnegative() const;
  bool all_positive() const;
  bool operator==(const CuspOrderVector& other) const;

 private:
  std::vector<BigInt> divisors_;
  std::vector<Rational> orders_;
};

// (1/24) A_N r, computed through the matrix.  Squarefree levels only.
CuspOrderVector orders_vector(const EtaExponents& e);

}  // namespace etaforge

#endif
