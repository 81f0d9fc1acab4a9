#include "etaforge/cusps.hpp"

#include <algorithm>

namespace etaforge {

namespace {

void require_squarefree(const Level& level, const char* what) {
  if (!level.squarefree()) {
    throw std::domain_error(std::string(what) +
                            ": the divisor cusp list is complete only for squarefree N");
  }
}

}  // namespace

std::vector<Cusp> cusp_set(const Level& level) {
  require_squarefree(level, "cusp_set");
  std::vector<Cusp> cusps;
  cusps.reserve(level.divisor_count());
  for (const auto& d : level.divisors()) cusps.push_back(Cusp{d});
  return cusps;
}

Rational vanishing_order(const EtaExponents& e, const BigInt& d) {
  const Level& level = e.level();
  if (!level.divides(d)) {
    throw std::domain_error("vanishing_order: d must divide the level");
  }
  const BigInt& N = level.n();
  const BigInt g_dN = gcd(d, N / d);
  Rational sum(0);
  const auto& ds = level.divisors();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (e.values()[i] == 0) continue;
    const BigInt g = gcd(d, ds[i]);
    Rational term(g * g * e.values()[i], g_dN * d * ds[i]);
    term.canonicalize();
    sum += term;
  }
  Rational v = Rational(N, 24) * sum;
  v.canonicalize();
  return v;
}

CuspMatrix::CuspMatrix(Level level, std::vector<std::vector<BigInt>> entries)
    : level_(std::move(level)), entries_(std::move(entries)) {}

bool CuspMatrix::operator==(const CuspMatrix& other) const {
  return level_.n() == other.level_.n() && entries_ == other.entries_;
}

CuspMatrix cusp_matrix(const Level& level) {
  require_squarefree(level, "cusp_matrix");
  const auto& ds = level.divisors();
  const std::size_t m = ds.size();
  const std::size_t np = level.factors().size();
  std::vector<std::vector<BigInt>> entries(m, std::vector<BigInt>(m));
  // Squarefree: N gcd(d_i,d_j)^2/(d_i d_j) is the product of the primes on
  // which d_i and d_j agree (both present or both absent).
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ei = level.divisor_exponents(i);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& ej = level.divisor_exponents(j);
      BigInt v = 1;
      for (std::size_t pi = 0; pi < np; ++pi) {
        if (ei[pi] == ej[pi]) v *= level.factors()[pi].p;
      }
      entries[i][j] = v;
    }
  }
  return CuspMatrix(level, std::move(entries));
}

bool check_latin(const Level& level) {
  const CuspMatrix A = cusp_matrix(level);
  const auto& ds = level.divisors();
  const std::size_t m = ds.size();
  std::vector<BigInt> seen;
  for (std::size_t i = 0; i < m; ++i) {
    seen = A.entries()[i];
    std::sort(seen.begin(), seen.end());
    if (seen != ds) return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    seen.clear();
    for (std::size_t i = 0; i < m; ++i) seen.push_back(A.entry(i, j));
    std::sort(seen.begin(), seen.end());
    if (seen != ds) return false;
  }
  return true;
}

BigInt latin_witness(const Level& level, const BigInt& c, const BigInt& d_i) {
  require_squarefree(level, "latin_witness");
  if (!level.divides(c) || !level.divides(d_i)) {
    throw std::domain_error("latin_witness: both arguments must divide the level");
  }
  const BigInt& N = level.n();
  return gcd(c, d_i) * gcd(N / c, N / d_i);
}

CuspOrderVector::CuspOrderVector(std::vector<BigInt> divisors, std::vector<Rational> orders)
    : divisors_(std::move(divisors)), orders_(std::move(orders)) {
  if (divisors_.size() != orders_.size()) {
    throw std::domain_error("order vector length mismatch");
  }
}

const Rational& CuspOrderVector::at_divisor(const BigInt& d) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
  if (it == divisors_.end() || *it != d) {
    throw std::domain_error("no cusp with denominator " + d.get_str());
  }
  return orders_[static_cast<std::size_t>(it - divisors_.begin())];
}

std::vector<BigInt> CuspOrderVector::times24() const {
  std::vector<BigInt> out;
  out.reserve(orders_.size());
  for (const auto& v : orders_) {
    Rational t = v * 24;
    t.canonicalize();
    if (t.get_den() != 1) {
      throw ConsistencyAlarm("24 * cusp order is not an integer");
    }
    out.push_back(t.get_num());
  }
  return out;
}

bool CuspOrderVector::all_nonnegative() const {
  return std::all_of(orders_.begin(), orders_.end(),
                     [](const Rational& v) { return v >= 0; });
}

bool CuspOrderVector::all_positive() const {
  return std::all_of(orders_.begin(), orders_.end(),
                     [](const Rational& v) { return v > 0; });
}

bool CuspOrderVector::operator==(const CuspOrderVector& other) const {
  return divisors_ == other.divisors_ && orders_ == other.orders_;
}

CuspOrderVector orders_vector(const EtaExponents& e) {
  const CuspMatrix A = cusp_matrix(e.level());
  const std::size_t m = e.level().divisor_count();
  std::vector<Rational> orders;
  orders.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += A.entry(i, j) * e.values()[j];
    Rational v(acc, 24);
    v.canonicalize();
    orders.push_back(v);
  }
  return CuspOrderVector(e.level().divisors(), std::move(orders));
}

}  // namespace etaforge
