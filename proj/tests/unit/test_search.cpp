#include <doctest.h>

#include <algorithm>
#include <functional>

#include "etaforge/search.hpp"

using namespace etaforge;

namespace {

std::vector<std::vector<long>> hit_vectors(const SearchReport& report) {
  std::vector<std::vector<long>> out;
  for (const auto& hit : report.hits) {
    std::vector<long> row;
    for (const auto& v : hit.exponents.values()) row.push_back(to_long_checked(v));
    out.push_back(std::move(row));
  }
  return out;
}

// Unpruned odometer over the full l1 box: an oracle with no shared search
// logic.  Checks weight, the mod-24 congruence and every cusp order through
// the one-cusp formula directly.
std::vector<std::vector<long>> box_oracle(const Level& level, long k, bool cuspidal) {
  const long bound = to_long_checked(rw_bound(level, k));
  const auto& ds = level.divisors();
  const std::size_t m = ds.size();
  std::vector<long> r(m, 0);
  std::vector<std::vector<long>> found;
  std::function<void(std::size_t, long)> rec = [&](std::size_t t, long l1) {
    if (t == m) {
      long sum = 0;
      BigInt sd = 0;
      for (std::size_t i = 0; i < m; ++i) {
        sum += r[i];
        sd += ds[i] * r[i];
      }
      if (sum != 2 * k) return;
      if (mpz_fdiv_ui(sd.get_mpz_t(), 24) != 0) return;
      std::vector<BigInt> values(r.begin(), r.end());
      const EtaExponents e(level, std::move(values));
      for (const auto& d : ds) {
        const Rational v = vanishing_order(e, d);
        if (v < 0 || (cuspidal && v == 0)) return;
      }
      found.emplace_back(r.begin(), r.end());
      return;
    }
    for (long v = -bound + l1; v <= bound - l1; ++v) {
      r[t] = v;
      rec(t + 1, l1 + std::labs(v));
    }
    r[t] = 0;
  };
  rec(0, 0);
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

TEST_CASE("window bound on frozen cases") {
  CHECK(rw_bound(factorize(5), 2) == 6);
  CHECK(rw_bound(factorize(35), 2) == 8);
  CHECK(rw_bound(factorize(25), 2) == 9);
  CHECK(rw_bound(factorize(29), 2) == 4);
  CHECK(rw_bound(factorize(29), 4) == 8);
  CHECK(rw_bound(factorize(95), 2) == 6);
  CHECK(rw_bound(factorize(5005), 2) == 11);
  CHECK(rw_bound(factorize(1), 12) == 24);
}

TEST_CASE("enumeration at (5, 2) finds exactly the two classical quotients") {
  const SearchReport report = enumerate(factorize(5), 2);
  CHECK(report.bound_used == 6);
  CHECK(report.nodes_explored > 0);
  REQUIRE(report.hits.size() == 2);
  CHECK(hit_vectors(report) ==
        std::vector<std::vector<long>>{{-1, 5}, {5, -1}});
  CHECK(report.hits[0].character.d_argument == 5);
  CHECK(report.hits[1].character.d_argument == 5);
  CHECK(report.hits[0].orders.at_divisor(1) == 0);
  CHECK(report.hits[0].orders.at_divisor(5) == 1);
  CHECK(report.hits[1].orders.at_divisor(1) == 1);
  CHECK(report.hits[1].orders.at_divisor(5) == 0);
  CHECK_FALSE(report.hits[0].is_cusp_form);
  CHECK_FALSE(report.hits[1].is_cusp_form);
}

TEST_CASE("enumeration at level 29") {
  const SearchReport empty = enumerate(factorize(29), 2);
  CHECK(empty.bound_used == 4);
  CHECK(empty.hits.empty());

  const SearchReport k4 = enumerate(factorize(29), 4);
  REQUIRE(k4.hits.size() == 1);
  CHECK(hit_vectors(k4) == std::vector<std::vector<long>>{{4, 4}});
  CHECK(k4.hits[0].character.d_argument == 1);
  CHECK(k4.hits[0].is_cusp_form);  // (4 + 4*29)/24 = 5 at both cusps
  CHECK(k4.hits[0].orders.at_divisor(1) == 5);
  CHECK(k4.hits[0].orders.at_divisor(29) == 5);
}

TEST_CASE("enumeration at (35, 2): the full frozen table") {
  const SearchReport report = enumerate(factorize(35), 2);
  CHECK(report.bound_used == 8);
  REQUIRE(report.hits.size() == 9);
  const std::vector<std::vector<long>> expect_r = {
      {-1, 3, 3, -1}, {-1, 5, 0, 0}, {0, 0, -1, 5}, {0, 0, 5, -1}, {0, 2, 2, 0},
      {1, 1, 1, 1},   {2, 0, 0, 2},  {3, -1, -1, 3}, {5, -1, 0, 0},
  };
  const std::vector<std::vector<long>> expect_v = {
      {0, 4, 4, 0}, {0, 7, 0, 1}, {0, 1, 0, 7}, {1, 0, 7, 0}, {1, 3, 3, 1},
      {2, 2, 2, 2}, {3, 1, 1, 3}, {4, 0, 0, 4}, {7, 0, 1, 0},
  };
  const std::vector<long> expect_d = {1, 5, 5, 5, 1, 1, 1, 1, 5};
  const std::vector<bool> expect_cusp = {false, false, false, false, true,
                                         true,  true,  false, false};
  CHECK(hit_vectors(report) == expect_r);
  const std::vector<long> ds = {1, 5, 7, 35};
  for (std::size_t i = 0; i < 9; ++i) {
    CAPTURE(i);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(report.hits[i].orders.at_divisor(ds[j]) == Rational(expect_v[i][j]));
    }
    CHECK(report.hits[i].character.d_argument == expect_d[i]);
    CHECK(report.hits[i].is_cusp_form == expect_cusp[i]);
  }
}

TEST_CASE("level 1 enumeration knows the discriminant form") {
  const SearchReport d12 = enumerate(factorize(1), 12);
  REQUIRE(d12.hits.size() == 1);
  CHECK(hit_vectors(d12) == std::vector<std::vector<long>>{{24}});
  CHECK(d12.hits[0].is_cusp_form);
  CHECK(d12.hits[0].character.d_argument == 1);
  CHECK(enumerate(factorize(1), 2).hits.empty());
  CHECK(enumerate(factorize(1), 10).hits.empty());
}

TEST_CASE("pruned search equals the unpruned box oracle") {
  for (long n : {5L, 7L, 11L, 13L, 35L, 55L, 65L, 77L, 85L, 91L, 95L}) {
    const Level level = factorize(n);
    for (long k : {2L, 4L, 6L}) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(hit_vectors(enumerate(level, k)) == box_oracle(level, k, false));
      CHECK(hit_vectors(enumerate(level, k, SearchMode::cuspidal)) ==
            box_oracle(level, k, true));
    }
  }
}

TEST_CASE("cuspidal hits are exactly the strictly positive holomorphic ones") {
  for (long n : {35L, 55L, 91L}) {
    const Level level = factorize(n);
    const auto all = enumerate(level, 2);
    const auto cusp = enumerate(level, 2, SearchMode::cuspidal);
    std::vector<std::vector<long>> filtered;
    for (std::size_t i = 0; i < all.hits.size(); ++i) {
      if (all.hits[i].is_cusp_form) filtered.push_back(hit_vectors(all)[i]);
    }
    CHECK(hit_vectors(cusp) == filtered);
  }
}

TEST_CASE("prime-level hit sets are closed under the exponent swap") {
  for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
    const Level level = factorize(p);
    for (long k : {2L, 4L}) {
      const auto hits = hit_vectors(enumerate(level, k));
      for (const auto& r : hits) {
        const std::vector<long> swapped = {r[1], r[0]};
        CHECK(std::find(hits.begin(), hits.end(), swapped) != hits.end());
      }
    }
  }
}

TEST_CASE("worker count never changes the report") {
  for (long n : {35L, 55L, 5005L}) {
    const Level level = factorize(n);
    SearchConfig base(level);
    base.k = n == 55 ? 4 : 2;
    const SearchReport solo = enumerate(base);
    for (unsigned w : {2u, 5u, 16u}) {
      SearchConfig cfg = base;
      cfg.workers = w;
      const SearchReport multi = enumerate(cfg);
      CHECK(hit_vectors(multi) == hit_vectors(solo));
      CHECK(multi.nodes_explored == solo.nodes_explored);
      CHECK(multi.bound_used == solo.bound_used);
    }
  }
}

TEST_CASE("bound override") {
  SearchConfig cfg(factorize(5));
  cfg.k = 2;
  cfg.bound_override = BigInt(3);  // both hits need l1 = 6
  CHECK(enumerate(cfg).hits.empty());
  CHECK(enumerate(cfg).bound_used == 3);
  cfg.bound_override = BigInt(-7);  // clamped to 0
  CHECK(enumerate(cfg).bound_used == 0);
  CHECK(enumerate(cfg).hits.empty());
  cfg.bound_override = BigInt(100);  // larger window, same forms
  CHECK(enumerate(cfg).hits.size() == 2);
}

TEST_CASE("enumerate validates its input") {
  SearchConfig cfg(factorize(5));
  cfg.mode = SearchMode::weak_witness;
  CHECK_THROWS_AS(enumerate(cfg), std::domain_error);
  CHECK_THROWS_AS(enumerate(factorize(5), 3), std::domain_error);
  CHECK_THROWS_AS(enumerate(factorize(5), 0), std::domain_error);
  CHECK_THROWS_AS(enumerate(factorize(5), -2), std::domain_error);
  CHECK_THROWS_AS(enumerate(factorize(10), 2), std::domain_error);
  CHECK_THROWS_AS(enumerate(factorize(25), 2), std::domain_error);
  CHECK_THROWS_AS(enumerate(factorize(21), 2), std::domain_error);
}

TEST_CASE("search mode names round trip") {
  for (const auto mode :
       {SearchMode::holomorphic, SearchMode::cuspidal, SearchMode::weak_witness}) {
    CHECK(search_mode_from_string(to_string(mode)) == mode);
  }
  CHECK(to_string(SearchMode::weak_witness) == "weak-witness");
  CHECK_THROWS_AS(search_mode_from_string("frobnicate"), std::domain_error);
}

TEST_CASE("weak witness frozen values") {
  auto ww = [](long n, long k) { return weak_witness(factorize(n), k); };
  REQUIRE(ww(5, 2).has_value());
  CHECK(ww(5, 2)->values() == std::vector<BigInt>{-1, 5});
  REQUIRE(ww(5, 4).has_value());
  CHECK(ww(5, 4)->values() == std::vector<BigInt>{4, 4});
  REQUIRE(ww(13, 6).has_value());
  CHECK(ww(13, 6)->values() == std::vector<BigInt>{1, 11});
  REQUIRE(ww(145, 2).has_value());
  CHECK(ww(145, 2)->values() == std::vector<BigInt>{-1, 0, 5, 0});
  CHECK_FALSE(ww(7, 2).has_value());   // h = 3 does not divide 2
  CHECK_FALSE(ww(13, 2).has_value());  // h = 6
  CHECK_FALSE(ww(13, 4).has_value());
  CHECK_THROWS_AS(weak_witness(factorize(10), 2), std::domain_error);
  CHECK_THROWS_AS(weak_witness(factorize(5), 3), std::domain_error);
  CHECK_THROWS_AS(weak_witness(factorize(1), 12), std::domain_error);
}

TEST_CASE("weak witness exists exactly when h divides k") {
  for (long n = 5; n <= 301; n += 2) {
    if (n % 3 == 0) continue;
    const Level level = factorize(n);
    const unsigned h = h_of(level);
    for (long k : {2L, 4L, 6L, 8L, 10L, 12L}) {
      CAPTURE(n);
      CAPTURE(k);
      const auto w = weak_witness(level, k);
      CHECK(w.has_value() == (k % h == 0));
      if (w) {
        CHECK(weight(*w) == Rational(k));
        CHECK(congruence_delta(*w));
        CHECK(congruence_codelta(*w));
      }
    }
  }
}

TEST_CASE("weak witness l1 is minimal against brute force") {
  for (long n : {5L, 7L, 13L, 35L, 65L}) {
    const Level level = factorize(n);
    const auto& ds = level.divisors();
    const std::size_t m = ds.size();
    for (long k : {2L, 4L, 6L}) {
      const auto w = weak_witness(level, k);
      if (!w) continue;
      long l1 = 0;
      for (const auto& v : w->values()) l1 += std::labs(to_long_checked(v));
      // nothing strictly smaller satisfies both linear conditions
      std::vector<long> r(m, 0);
      bool smaller = false;
      std::function<void(std::size_t, long)> rec = [&](std::size_t t, long used) {
        if (smaller) return;
        if (t == m) {
          long sum = 0;
          BigInt sd = 0;
          for (std::size_t i = 0; i < m; ++i) {
            sum += r[i];
            sd += ds[i] * r[i];
          }
          if (sum == 2 * k && mpz_fdiv_ui(sd.get_mpz_t(), 24) == 0) smaller = true;
          return;
        }
        for (long v = -(l1 - 1) + used; v <= l1 - 1 - used; ++v) {
          r[t] = v;
          rec(t + 1, used + std::labs(v));
        }
        r[t] = 0;
      };
      if (l1 > 0) rec(0, 0);
      CAPTURE(n);
      CAPTURE(k);
      CHECK_FALSE(smaller);
    }
  }
}
