#ifndef ETAFORGE_THEOREMS_HPP
#define ETAFORGE_THEOREMS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etaforge/search.hpp"

namespace etaforge {

enum class Verdict {
  exists_constructive,
  exists_by_search,
  not_exists_weak_obstruction,
  not_exists_mod24_obstruction,
  undecided_by_theorems,
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& text);

struct Decision {
  Verdict verdict = Verdict::undecided_by_theorems;
  std::optional<EtaExponents> witness;
  std::string obstruction_note;
  std::vector<std::string> theorem_refs;
};

// Does M_k(Gamma_1(N)) contain an eta-quotient?  Decision tree, for N
// coprime to 6 and even k >= 2:
//   1. h_N does not divide k          -> no (weak obstruction: not even a
//      weakly holomorphic quotient exists)
//   2. h_N | k and not (k = 2, N in S) -> yes, with constructed witness
//   3. k = 2, N in S, N squarefree, and the window hypothesis holds
//      (4 prod (p+1)/(p-1) < p_1 + 1) -> no (mod-24 obstruction)
//   4. otherwise                      -> undecided by these theorems
// Nonexistence for non-squarefree N is only ever claimed through step 1.
Decision decide(const Level& level, long k);

// decide(), then on an undecided squarefree level fall back to the complete
// enumeration: a hit upgrades the verdict to exists_by_search.
Decision decide_with_search(const Level& level, long k);

// A semiprime pq dividing N with h_pq = h_N and (N not in S => pq not in S).
// Case analysis on h_N over the residue classes of the prime divisors.
// Requires at least two distinct primes, all coprime to 6.
std::pair<BigInt, BigInt> reduce_to_semiprime(const Level& level);

// Constructive witness behind verdict 2: reduce to the radical, then to a
// prime or semiprime level, enumerate there (nonempty by the existence
// theorems) and zero-pad the first hit back up to the divisors of N.
// Preconditions: h_N | k and not (k = 2 and N in S).
EtaExponents witness_for_exist(const Level& level, long k);

// Window hypothesis 4 * prod_{p | N} (p+1)/(p-1) < p_1 + 1 (p_1 smallest
// prime divisor), evaluated exactly.  n > 1 required.
bool rwhyp_holds(const Level& level);

// True when 2k * prod (p+1)/(p-1) < p_1 + 1: the l1 window is then too small
// for any negative exponent, so every hit is an eta-product (all r_d >= 0).
bool eta_product_forced(const Level& level, long k);

// For N in S: verifies by finite check that no nonnegative vector over the
// divisors has sum r = 4 and sum (d mod 24) r_d = 0 (mod 24).  All divisor
// residues lie in {1, 5}, capping the weighted sum at 20 < 24, so this
// always comes back true; the scan is kept explicit rather than replaced by
// that argument.  Rejects N not in S.
bool mod24_obstruction(const Level& level);

}  // namespace etaforge

#endif
