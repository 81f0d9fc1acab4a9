#include "etaforge/arithmetic.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

namespace etaforge {

namespace {

// Nonnegative remainder of a mod m for m > 0.
unsigned long mod_ui(const BigInt& a, unsigned long m) {
  mpz_class r;
  mpz_mod_ui(r.get_mpz_t(), a.get_mpz_t(), m);
  return r.get_ui();
}

}  // namespace

std::size_t Level::divisor_index(const BigInt& d) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
  if (it == divisors_.end() || *it != d) {
    throw std::domain_error("divisor_index: " + d.get_str() + " does not divide " +
                            n_.get_str());
  }
  return static_cast<std::size_t>(it - divisors_.begin());
}

bool Level::divides(const BigInt& d) const {
  if (d < 1) return false;
  return mpz_divisible_p(n_.get_mpz_t(), d.get_mpz_t()) != 0;
}

Level from_factors(const BigInt& n, std::vector<PrimePower> factors) {
  if (n < 1) throw std::domain_error("level must be a positive integer");
  BigInt check = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [p, e] = factors[i];
    if (e < 1) throw std::domain_error("prime exponent must be >= 1");
    if (i > 0 && !(factors[i - 1].p < p)) {
      throw std::domain_error("prime factors must be strictly increasing");
    }
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) {
      throw std::domain_error("from_factors: " + p.get_str() + " is not prime");
    }
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    check *= pe;
  }
  if (check != n) throw std::domain_error("factorization does not multiply back to n");

  Level level;
  level.n_ = n;
  level.factors_ = std::move(factors);
  level.radical_ = 1;
  for (const auto& f : level.factors_) {
    level.radical_ *= f.p;
    if (f.e > 1) level.squarefree_ = false;
    if (f.p == 2 || f.p == 3) level.coprime6_ = false;
  }

  // Divisors by exponent tuples; the tuples are kept for gcd work later.
  std::vector<std::pair<BigInt, std::vector<unsigned>>> divs;
  divs.emplace_back(BigInt(1), std::vector<unsigned>(level.factors_.size(), 0));
  for (std::size_t i = 0; i < level.factors_.size(); ++i) {
    const std::size_t base = divs.size();
    BigInt pe = 1;
    for (unsigned e = 1; e <= level.factors_[i].e; ++e) {
      pe *= level.factors_[i].p;
      for (std::size_t j = 0; j < base; ++j) {
        auto tuple = divs[j].second;
        tuple[i] = e;
        divs.emplace_back(divs[j].first * pe, std::move(tuple));
      }
    }
  }
  std::sort(divs.begin(), divs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  level.divisors_.reserve(divs.size());
  level.divisor_exponents_.reserve(divs.size());
  for (auto& [d, tuple] : divs) {
    level.divisors_.push_back(std::move(d));
    level.divisor_exponents_.push_back(std::move(tuple));
  }
  return level;
}

Level factorize(const BigInt& n) {
  if (n < 1) throw std::domain_error("level must be a positive integer");
  std::vector<PrimePower> factors;
  BigInt rest = n;
  auto strip = [&](BigInt p) {  // by value: callers may pass rest itself
    unsigned e = 0;
    while (rest > 1 && mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e > 0) factors.push_back({std::move(p), e});
  };
  strip(2);
  strip(3);
  BigInt p = 5;
  // 6k +/- 1 wheel; stop early when the cofactor is prime.
  int step = 2;
  while (rest > 1) {
    if (p * p > rest) {
      strip(rest);
      break;
    }
    if (mpz_probab_prime_p(rest.get_mpz_t(), 40) != 0) {
      strip(rest);
      break;
    }
    strip(p);
    p += step;
    step = 6 - step;
  }
  return from_factors(n, std::move(factors));
}

unsigned h_of(const Level& level) {
  if (level.n() == 1) throw std::domain_error("h is undefined for n = 1 (no prime divisors)");
  if (mpz_even_p(level.n().get_mpz_t())) {
    throw std::domain_error("h is undefined for even n");
  }
  BigInt g = 24;
  for (const auto& f : level.factors()) g = gcd(g, f.p - 1);
  assert(mpz_even_p(g.get_mpz_t()));
  unsigned h = static_cast<unsigned>(g.get_ui() / 2);
  assert(h == 1 || h == 2 || h == 3 || h == 4 || h == 6 || h == 12);
  return h;
}

bool in_S(const Level& level) {
  if (level.n() == 1) throw std::domain_error("S membership is undefined for n = 1");
  bool has5 = false;
  for (const auto& f : level.factors()) {
    if (f.p <= 5) return false;
    const unsigned long r = mod_ui(f.p, 24);
    if (r != 1 && r != 5) return false;
    if (r == 5) has5 = true;
  }
  return has5;
}

ResidueSet residue_set(const Level& level) {
  if (level.n() == 1) throw std::domain_error("residue set is undefined for n = 1");
  ResidueSet rs;
  for (const auto& f : level.factors()) {
    rs.residues.insert(static_cast<unsigned>(mod_ui(f.p, 24)));
  }
  return rs;
}

int kronecker(const BigInt& a_in, const BigInt& m_in) {
  BigInt a = a_in, m = m_in;
  if (m == 0) return (a == 1 || a == -1) ? 1 : 0;

  int result = 1;
  if (m < 0) {
    m = -m;
    if (a < 0) result = -result;
  }
  if (mpz_even_p(m.get_mpz_t())) {
    if (mpz_even_p(a.get_mpz_t())) return 0;
    const auto twos = mpz_scan1(m.get_mpz_t(), 0);
    m >>= twos;
    if (twos % 2 == 1) {
      // (2|a) for odd a: +1 when a = +/-1 (mod 8), -1 when a = +/-3.
      const unsigned long r8 = mod_ui(a, 8);
      if (r8 == 3 || r8 == 5) result = -result;
    }
  }
  // Jacobi loop: m odd positive from here on.
  a %= m;
  if (a < 0) a += m;
  while (a != 0) {
    const auto twos = mpz_scan1(a.get_mpz_t(), 0);
    a >>= twos;
    if (twos % 2 == 1) {
      const unsigned long m8 = mod_ui(m, 8);
      if (m8 == 3 || m8 == 5) result = -result;
    }
    if (mod_ui(a, 4) == 3 && mod_ui(m, 4) == 3) result = -result;
    swap(a, m);
    a %= m;
  }
  return m == 1 ? result : 0;
}

long to_long_checked(const BigInt& v) {
  if (!v.fits_slong_p()) {
    throw std::domain_error("value " + v.get_str() + " does not fit in a machine long");
  }
  return v.get_si();
}

}  // namespace etaforge
