#ifndef ETAFORGE_SEARCH_HPP
#define ETAFORGE_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etaforge/cusps.hpp"

namespace etaforge {

enum class SearchMode { holomorphic, cuspidal, weak_witness };

std::string to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& text);

struct SearchConfig {
  explicit SearchConfig(Level lvl) : level(std::move(lvl)) {}
  Level level;
  long k = 2;                             // even, >= 2
  SearchMode mode = SearchMode::holomorphic;
  std::optional<BigInt> bound_override;   // replaces the computed l1 window
  unsigned workers = 1;                   // top-level branch split
};

struct SearchHit {
  EtaExponents exponents;
  CharacterKernel character;
  CuspOrderVector orders;
  bool is_cusp_form = false;
  bool operator==(const SearchHit& other) const;
};

struct SearchReport {
  explicit SearchReport(SearchConfig cfg) : config(std::move(cfg)) {}
  SearchConfig config;
  std::vector<SearchHit> hits;        // lexicographic in r over ascending divisors
  std::uint64_t nodes_explored = 0;
  BigInt bound_used;
};

// l1 budget floor(2k * prod_{p | N} ((p+1)/(p-1))^{min(2, ord_p N)}), the
// exact-rational evaluation floored at the end.  Any eta-quotient lying in
// M_k(Gamma_0(N), chi) has sum |r_d| within this window, which is what makes
// the enumeration below finite and complete.
BigInt rw_bound(const Level& level, long k);

// Exhaustive enumeration of all holomorphic (or cuspidal) eta-quotients in
// M_k(Gamma_1(N)): integer vectors r over the divisors with sum r = 2k,
// sum d*r_d = 0 (mod 24), sum |r_d| <= bound and all cusp orders >= 0
// (> 0 for cuspidal).  Level must be squarefree and coprime to 6; k even,
// >= 2.  Deterministic output regardless of worker count.
SearchReport enumerate(const SearchConfig& config);
SearchReport enumerate(const Level& level, long k,
                       SearchMode mode = SearchMode::holomorphic);

// Minimal-l1 exponent vector with sum r = 2k and sum d*r_d = 0 (mod 24)
// (holomorphy not required), lexicographic tie-break; nullopt exactly when
// h_N does not divide k.  Level coprime to 6; k even.
std::optional<EtaExponents> weak_witness(const Level& level, long k);

}  // namespace etaforge

#endif
