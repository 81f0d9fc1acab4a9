#include "etaforge/theorems.hpp"

#include <sstream>

namespace etaforge {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::exists_constructive: return "EXISTS_CONSTRUCTIVE";
    case Verdict::exists_by_search: return "EXISTS_BY_SEARCH";
    case Verdict::not_exists_weak_obstruction: return "NOT_EXISTS_WEAK_OBSTRUCTION";
    case Verdict::not_exists_mod24_obstruction: return "NOT_EXISTS_MOD24_OBSTRUCTION";
    case Verdict::undecided_by_theorems: return "UNDECIDED_BY_THEOREMS";
  }
  throw std::domain_error("unknown verdict");
}

Verdict verdict_from_string(const std::string& text) {
  if (text == "EXISTS_CONSTRUCTIVE") return Verdict::exists_constructive;
  if (text == "EXISTS_BY_SEARCH") return Verdict::exists_by_search;
  if (text == "NOT_EXISTS_WEAK_OBSTRUCTION") return Verdict::not_exists_weak_obstruction;
  if (text == "NOT_EXISTS_MOD24_OBSTRUCTION") return Verdict::not_exists_mod24_obstruction;
  if (text == "UNDECIDED_BY_THEOREMS") return Verdict::undecided_by_theorems;
  throw std::domain_error("unknown verdict: " + text);
}

namespace {

unsigned long mod24(const BigInt& v) { return mpz_fdiv_ui(v.get_mpz_t(), 24); }

BigInt first_prime_with(const Level& level, const std::vector<unsigned long>& residues,
                        const BigInt& avoid = 0) {
  for (const auto& f : level.factors()) {
    if (f.p == avoid) continue;
    const unsigned long r = mod24(f.p);
    for (const auto want : residues) {
      if (r == want) return f.p;
    }
  }
  return 0;
}

BigInt first_prime_other_than(const Level& level, const BigInt& avoid) {
  for (const auto& f : level.factors()) {
    if (f.p != avoid) return f.p;
  }
  return 0;
}

}  // namespace

std::pair<BigInt, BigInt> reduce_to_semiprime(const Level& level) {
  if (!level.coprime6()) throw std::domain_error("reduce_to_semiprime needs gcd(N, 6) = 1");
  if (level.factors().size() < 2) {
    throw std::domain_error("reduce_to_semiprime needs at least two distinct primes");
  }
  const unsigned h = h_of(level);
  BigInt p = 0, q = 0;

  switch (h) {
    case 12:
      // Residues all 1: any two primes keep h = 12 and miss S.
      p = level.factors()[0].p;
      q = level.factors()[1].p;
      break;
    case 6:
      // Some prime is 13 mod 24; 13 with anything gives gcd 12.
      p = first_prime_with(level, {13});
      q = first_prime_other_than(level, p);
      break;
    case 4:
      p = first_prime_with(level, {17});
      q = first_prime_other_than(level, p);
      break;
    case 3:
      p = first_prime_with(level, {7, 19});
      q = first_prime_other_than(level, p);
      break;
    case 2: {
      const ResidueSet rs = residue_set(level);
      const bool has5 = rs.residues.count(5) > 0;
      const bool only15 = has5 && rs.residues.size() <= 2 &&
                          (rs.residues.size() == 1 || rs.residues.count(1) > 0);
      if (only15) {
        // Residues {5} or {1,5}.  N in S: any 5-residue prime works.  N not
        // in S: the only way out of S with these residues is the prime 5
        // itself, which already pins h_pq = 2 and keeps pq out of S.
        p = in_S(level) ? first_prime_with(level, {5}) : BigInt(5);
        q = first_prime_other_than(level, p);
      } else if (!has5) {
        // Without a 5 both 13 and 17 must appear (else h would be 4 or 6).
        p = first_prime_with(level, {17});
        q = first_prime_with(level, {13});
      } else {
        p = first_prime_with(level, {5});
        q = first_prime_with(level, {13, 17});
      }
      break;
    }
    case 1: {
      // 2 does not divide h: some prime is 3 mod 4.  3 does not divide h:
      // some prime is 2 mod 3.  If the second role has no candidate besides
      // p, then p covers both and any partner keeps h = 1.
      for (const auto& f : level.factors()) {
        if (mpz_fdiv_ui(f.p.get_mpz_t(), 4) == 3) {
          p = f.p;
          break;
        }
      }
      for (const auto& f : level.factors()) {
        if (f.p != p && mpz_fdiv_ui(f.p.get_mpz_t(), 3) == 2) {
          q = f.p;
          break;
        }
      }
      if (q == 0) q = first_prime_other_than(level, p);
      break;
    }
    default:
      throw ConsistencyAlarm("h outside {1,2,3,4,6,12}");
  }

  if (p == 0 || q == 0 || p == q || !level.divides(p) || !level.divides(q)) {
    throw ConsistencyAlarm("semiprime reduction failed to pick a dividing pair");
  }
  // The pair must reproduce h and must not enter S unless N already is in it.
  const Level pq = factorize(p * q);
  if (h_of(pq) != h) throw ConsistencyAlarm("semiprime reduction changed h");
  if (!in_S(level) && in_S(pq)) throw ConsistencyAlarm("semiprime reduction entered S");
  return {p, q};
}

EtaExponents witness_for_exist(const Level& level, long k) {
  if (!level.coprime6()) throw std::domain_error("witness_for_exist needs gcd(N, 6) = 1");
  if (k < 2 || k % 2 != 0) throw std::domain_error("witness_for_exist needs even k >= 2");
  const unsigned h = h_of(level);
  if (k % static_cast<long>(h) != 0) {
    throw std::domain_error("witness_for_exist: h does not divide k");
  }
  if (k == 2 && in_S(level)) {
    throw std::domain_error("witness_for_exist: k = 2 with N in S is outside the guarantee");
  }

  Level target = factorize(level.radical());
  if (target.factors().size() >= 2) {
    const auto [p, q] = reduce_to_semiprime(target);
    target = factorize(p * q);
  }
  const SearchReport report = enumerate(target, k);
  if (report.hits.empty()) {
    throw ConsistencyAlarm("existence theorem promised a hit at level " +
                           target.n().get_str() + ", weight " + std::to_string(k) +
                           ", but the enumeration is empty");
  }
  // Zero-pad the first hit back up to the divisors of N.
  const EtaExponents& small = report.hits.front().exponents;
  return EtaExponents::from_pairs(level, small.nonzero_pairs());
}

bool rwhyp_holds(const Level& level) {
  if (level.n() == 1) throw std::domain_error("window hypothesis needs a prime divisor");
  Rational lhs(4);
  for (const auto& f : level.factors()) {
    Rational ratio(f.p + 1, f.p - 1);
    ratio.canonicalize();
    lhs *= ratio;
  }
  lhs.canonicalize();
  return lhs < Rational(level.factors().front().p + 1);
}

bool eta_product_forced(const Level& level, long k) {
  if (level.n() == 1) throw std::domain_error("eta_product_forced needs a prime divisor");
  if (k < 2 || k % 2 != 0) throw std::domain_error("eta_product_forced needs even k >= 2");
  Rational lhs(2 * k);
  for (const auto& f : level.factors()) {
    Rational ratio(f.p + 1, f.p - 1);
    ratio.canonicalize();
    lhs *= ratio;
  }
  lhs.canonicalize();
  return lhs < Rational(level.factors().front().p + 1);
}

bool mod24_obstruction(const Level& level) {
  if (!in_S(level)) throw std::domain_error("mod24_obstruction applies to N in S only");
  // All nonnegative vectors with sum r = 4 are multisets of 4 divisors; scan
  // them and look for a weighted residue sum divisible by 24.
  std::vector<unsigned long> res;
  res.reserve(level.divisor_count());
  for (const auto& d : level.divisors()) res.push_back(mod24(d));
  const std::size_t m = res.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      for (std::size_t c = b; c < m; ++c) {
        for (std::size_t d = c; d < m; ++d) {
          if ((res[a] + res[b] + res[c] + res[d]) % 24 == 0) return false;
        }
      }
    }
  }
  return true;
}

namespace {

std::string note_for_weak(const Level& level, long k, unsigned h) {
  std::ostringstream os;
  os << "h = " << h << " does not divide k = " << k
     << ": not even a weakly holomorphic eta-quotient exists at level "
     << level.n().get_str();
  return os.str();
}

}  // namespace

Decision decide(const Level& level, long k) {
  if (!level.coprime6()) throw std::domain_error("decide needs gcd(N, 6) = 1");
  if (level.n() == 1) throw std::domain_error("decide needs a prime divisor");
  if (k < 2 || k % 2 != 0) throw std::domain_error("decide needs even k >= 2");

  Decision decision;
  const unsigned h = h_of(level);
  if (k % static_cast<long>(h) != 0) {
    decision.verdict = Verdict::not_exists_weak_obstruction;
    decision.obstruction_note = note_for_weak(level, k, h);
    decision.theorem_refs = {"weak-weight-divisibility"};
    return decision;
  }
  const bool in_s = in_S(level);
  if (!(k == 2 && in_s)) {
    decision.verdict = Verdict::exists_constructive;
    decision.witness = witness_for_exist(level, k);
    decision.theorem_refs = level.factors().size() == 1
                                ? std::vector<std::string>{"radical-reduction",
                                                           "prime-level-existence"}
                                : std::vector<std::string>{"radical-reduction",
                                                           "semiprime-existence"};
    return decision;
  }
  if (level.squarefree() && rwhyp_holds(level)) {
    if (!mod24_obstruction(level)) {
      throw ConsistencyAlarm("mod-24 obstruction scan found a solution for N in S");
    }
    decision.verdict = Verdict::not_exists_mod24_obstruction;
    decision.obstruction_note =
        "k = 2 with every prime divisor 1 or 5 mod 24 (at least one 5): the l1 window "
        "forces an eta-product, and no weight-2 eta-product clears the mod-24 congruence";
    decision.theorem_refs = {"mod-24-obstruction", "eta-product-forcing", "window-bound"};
    return decision;
  }
  decision.verdict = Verdict::undecided_by_theorems;
  decision.obstruction_note =
      level.squarefree()
          ? "k = 2 with N in S but the window hypothesis fails; outside the decided range"
          : "k = 2 with N in S and N not squarefree; outside the decided range";
  return decision;
}

Decision decide_with_search(const Level& level, long k) {
  Decision decision = decide(level, k);
  if (decision.verdict == Verdict::undecided_by_theorems && level.squarefree()) {
    const SearchReport report = enumerate(level, k);
    if (!report.hits.empty()) {
      decision.verdict = Verdict::exists_by_search;
      decision.witness = report.hits.front().exponents;
      decision.obstruction_note.clear();
      decision.theorem_refs = {"exhaustive-window-search"};
    } else {
      decision.obstruction_note += "; exhaustive window search found no quotient";
    }
  }
  return decision;
}

}  // namespace etaforge
