#include "etaforge/etacore.hpp"

#include <nlohmann/json.hpp>

#include <random>

#include "json_convert.hpp"

namespace etaforge {

EtaExponents::EtaExponents(Level level, std::vector<BigInt> values)
    : level_(std::move(level)), values_(std::move(values)) {
  if (values_.size() != level_.divisor_count()) {
    throw std::domain_error("exponent vector length must match the divisor count");
  }
}

EtaExponents EtaExponents::zero(Level level) {
  std::vector<BigInt> v(level.divisor_count(), BigInt(0));
  return EtaExponents(std::move(level), std::move(v));
}

EtaExponents EtaExponents::from_pairs(Level level,
                                      const std::vector<std::pair<BigInt, BigInt>>& pairs) {
  std::vector<BigInt> v(level.divisor_count(), BigInt(0));
  std::vector<bool> seen(v.size(), false);
  for (const auto& [d, r] : pairs) {
    const std::size_t i = level.divisor_index(d);
    if (seen[i]) throw std::domain_error("repeated divisor " + d.get_str());
    seen[i] = true;
    v[i] = r;
  }
  return EtaExponents(std::move(level), std::move(v));
}

const BigInt& EtaExponents::at_divisor(const BigInt& d) const {
  return values_[level_.divisor_index(d)];
}

std::vector<std::pair<BigInt, BigInt>> EtaExponents::nonzero_pairs() const {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0) out.emplace_back(level_.divisors()[i], values_[i]);
  }
  return out;
}

bool EtaExponents::operator==(const EtaExponents& other) const {
  return level_.n() == other.level_.n() && values_ == other.values_;
}

EtaExponents add(const EtaExponents& a, const EtaExponents& b) {
  if (a.level().n() != b.level().n()) {
    throw std::domain_error("cannot add exponent vectors at different levels");
  }
  std::vector<BigInt> v = a.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values()[i];
  return EtaExponents(a.level(), std::move(v));
}

Rational weight(const EtaExponents& e) {
  BigInt sum = 0;
  for (const auto& r : e.values()) sum += r;
  Rational w(sum, 2);
  w.canonicalize();
  return w;
}

bool congruence_delta(const EtaExponents& e) {
  BigInt sum = 0;
  const auto& ds = e.level().divisors();
  for (std::size_t i = 0; i < ds.size(); ++i) sum += ds[i] * e.values()[i];
  return mpz_divisible_ui_p(sum.get_mpz_t(), 24) != 0;
}

bool congruence_codelta(const EtaExponents& e) {
  BigInt sum = 0;
  const auto& ds = e.level().divisors();
  const std::size_t m = ds.size();
  // divisors ascending: N/ds[i] = ds[m-1-i]
  for (std::size_t i = 0; i < m; ++i) sum += ds[m - 1 - i] * e.values()[i];
  return mpz_divisible_ui_p(sum.get_mpz_t(), 24) != 0;
}

CharacterKernel character_kernel(const EtaExponents& e) {
  BigInt twice_k = 0;
  for (const auto& r : e.values()) twice_k += r;
  if (mpz_odd_p(twice_k.get_mpz_t())) {
    throw std::domain_error(
        "half-integral weight: no quadratic nebentypus in this framework");
  }
  const BigInt k = twice_k / 2;

  // Per-prime parity of ord_p(prod d^{r_d}); odd parity contributes p to the
  // squarefree kernel.  The sign is (-1)^k.
  BigInt d_arg = 1;
  const auto& factors = e.level().factors();
  for (std::size_t pi = 0; pi < factors.size(); ++pi) {
    BigInt ord = 0;
    for (std::size_t i = 0; i < e.values().size(); ++i) {
      ord += BigInt(e.level().divisor_exponents(i)[pi]) * e.values()[i];
    }
    if (mpz_odd_p(ord.get_mpz_t())) d_arg *= factors[pi].p;
  }
  if (mpz_odd_p(k.get_mpz_t())) d_arg = -d_arg;
  return CharacterKernel{d_arg};
}

bool congruences_equivalent_check(const Level& level, int samples, std::uint64_t seed) {
  if (!level.coprime6()) {
    throw std::domain_error("equivalence of the two congruences needs gcd(N,6) = 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(-10, 10);
  // A slice of the samples gets large exponents to exercise the bigint path.
  std::uniform_int_distribution<long long> big(-1000000000000LL, 1000000000000LL);
  for (int s = 0; s < samples; ++s) {
    std::vector<BigInt> v(level.divisor_count());
    for (auto& x : v) {
      x = (s % 5 == 4) ? BigInt(static_cast<long>(big(rng) % 2000000001LL))
                       : BigInt(small(rng));
    }
    EtaExponents e(level, std::move(v));
    if (congruence_delta(e) != congruence_codelta(e)) return false;
  }
  return true;
}

std::string to_pair_text(const EtaExponents& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [d, r] : e.nonzero_pairs()) {
    arr.push_back(nlohmann::json::array({detail::int_to_json(d), detail::int_to_json(r)}));
  }
  return arr.dump();
}

EtaExponents eta_from_pair_text(const Level& level, const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::domain_error(std::string("bad exponent list: ") + err.what());
  }
  if (!arr.is_array()) throw std::domain_error("exponent list must be a JSON array");
  std::vector<std::pair<BigInt, BigInt>> pairs;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2) {
      throw std::domain_error("each entry must be a [divisor, exponent] pair");
    }
    pairs.emplace_back(detail::int_from_json(item[0]), detail::int_from_json(item[1]));
  }
  return EtaExponents::from_pairs(level, pairs);
}

}  // namespace etaforge
