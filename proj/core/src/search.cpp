#include "etaforge/search.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <limits>
#include <thread>
#include <type_traits>

namespace etaforge {

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::holomorphic: return "holomorphic";
    case SearchMode::cuspidal: return "cuspidal";
    case SearchMode::weak_witness: return "weak-witness";
  }
  throw std::domain_error("unknown search mode");
}

SearchMode search_mode_from_string(const std::string& text) {
  if (text == "holomorphic") return SearchMode::holomorphic;
  if (text == "cuspidal") return SearchMode::cuspidal;
  if (text == "weak-witness") return SearchMode::weak_witness;
  throw std::domain_error("unknown search mode: " + text);
}

bool SearchHit::operator==(const SearchHit& other) const {
  return exponents == other.exponents && character == other.character &&
         orders == other.orders && is_cusp_form == other.is_cusp_form;
}

BigInt rw_bound(const Level& level, long k) {
  if (k < 2 || k % 2 != 0) throw std::domain_error("rw_bound needs even k >= 2");
  Rational bound(2 * k);
  for (const auto& f : level.factors()) {
    const unsigned e = std::min(2u, f.e);
    Rational ratio(f.p + 1, f.p - 1);
    ratio.canonicalize();
    for (unsigned i = 0; i < e; ++i) bound *= ratio;
  }
  bound.canonicalize();
  BigInt floor_val;
  mpz_fdiv_q(floor_val.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  return floor_val;
}

namespace {

// The enumeration keeps every partial sum exact.  At desk scale all state
// fits comfortably in int64 (|partial order| <= N * bound); for levels too
// large for that the same walk runs on GMP integers.
template <class Int>
struct DfsEngine {
  std::size_t m = 0;
  long two_k = 0;
  long bound = 0;
  bool cuspidal = false;
  std::vector<Int> dvals;                    // divisors, ascending
  std::vector<long> dmod24;
  std::vector<std::vector<Int>> A;           // 24 * order coefficient matrix
  std::vector<std::vector<Int>> rowmax;      // rowmax[i][t] = max_{j<=t} A[i][j]

  std::vector<long> r;
  std::vector<Int> ord;
  std::uint64_t nodes = 0;
  std::vector<std::vector<long>> found;

  void leaf() {
    ++nodes;
    long l1 = 0, sum = 0, dr = 0;
    for (std::size_t j = 1; j < m; ++j) {
      l1 += std::labs(r[j]);
      sum += r[j];
      dr += dmod24[j] * r[j];
    }
    const long v0 = two_k - sum;
    if (l1 + std::labs(v0) > bound) return;
    if (((dr + v0) % 24 + 24) % 24 != 0) return;
    r[0] = v0;
    const Int lo = cuspidal ? Int(1) : Int(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (ord[i] + A[i][0] * Int(v0) < lo) return;
    }
    found.push_back(r);
  }

  void dfs(std::size_t t, long l1, long sum) {
    ++nodes;
    if (t == 0) {
      --nodes;  // the forced coordinate is counted by leaf()
      leaf();
      return;
    }
    const long room = bound - l1;
    for (long v = -room; v <= room; ++v) {
      const long l1n = l1 + std::labs(v);
      const long rem = bound - l1n;
      const long need = two_k - (sum + v);
      if (std::labs(need) > rem) continue;
      bool ok = true;
      for (std::size_t i = 0; i < m; ++i) {
        ord[i] += A[i][t] * Int(v);
        // Optimistic completion: all remaining l1 mass on the row maximum.
        const Int best = ord[i] + rowmax[i][t - 1] * Int(rem);
        if (best < (cuspidal ? Int(1) : Int(0))) ok = false;
      }
      if (ok) {
        r[t] = v;
        dfs(t - 1, l1n, sum + v);
        r[t] = 0;
      }
      for (std::size_t i = 0; i < m; ++i) ord[i] -= A[i][t] * Int(v);
    }
  }
};

template <class Int>
DfsEngine<Int> make_engine(const Level& level, const CuspMatrix& A_big, long k, long bound,
                           bool cuspidal) {
  DfsEngine<Int> e;
  e.m = level.divisor_count();
  e.two_k = 2 * k;
  e.bound = bound;
  e.cuspidal = cuspidal;
  e.dvals.reserve(e.m);
  for (const auto& d : level.divisors()) {
    if constexpr (std::is_same_v<Int, long>) {
      e.dvals.push_back(to_long_checked(d));
    } else {
      e.dvals.push_back(d);
    }
    e.dmod24.push_back(static_cast<long>(mpz_fdiv_ui(d.get_mpz_t(), 24)));
  }
  e.A.assign(e.m, {});
  e.rowmax.assign(e.m, {});
  for (std::size_t i = 0; i < e.m; ++i) {
    e.A[i].reserve(e.m);
    for (std::size_t j = 0; j < e.m; ++j) {
      if constexpr (std::is_same_v<Int, long>) {
        e.A[i].push_back(to_long_checked(A_big.entry(i, j)));
      } else {
        e.A[i].push_back(A_big.entry(i, j));
      }
    }
    e.rowmax[i].resize(e.m);
    Int best = e.A[i][0];
    for (std::size_t t = 0; t < e.m; ++t) {
      best = std::max(best, e.A[i][t]);
      e.rowmax[i][t] = best;
    }
  }
  e.r.assign(e.m, 0);
  e.ord.assign(e.m, Int(0));
  return e;
}

template <class Int>
void run_engine(DfsEngine<Int> engine, unsigned workers,
                std::vector<std::vector<long>>& found, std::uint64_t& nodes) {
  const std::size_t m = engine.m;
  if (m == 1) {
    engine.leaf();
    found = std::move(engine.found);
    nodes = engine.nodes;
    return;
  }
  if (workers <= 1) {
    engine.dfs(m - 1, 0, 0);
    found = std::move(engine.found);
    nodes = engine.nodes;
    return;
  }
  // Split the top-level branch across workers; nothing mutable is shared and
  // the merged result is independent of the split.
  std::vector<long> top;
  for (long v = -engine.bound; v <= engine.bound; ++v) top.push_back(v);
  std::vector<DfsEngine<Int>> parts;
  for (unsigned w = 0; w < workers; ++w) parts.push_back(engine);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&parts, &top, w, workers, m]() {
      DfsEngine<Int>& self = parts[w];
      for (std::size_t i = w; i < top.size(); i += workers) {
        const long v = top[i];
        const long l1 = std::labs(v);
        const long rem = self.bound - l1;
        if (std::labs(self.two_k - v) > rem) continue;
        bool ok = true;
        for (std::size_t row = 0; row < m; ++row) {
          self.ord[row] = self.A[row][m - 1] * Int(v);
          const Int best = self.ord[row] + self.rowmax[row][m - 2] * Int(rem);
          if (best < (self.cuspidal ? Int(1) : Int(0))) ok = false;
        }
        if (!ok) continue;
        self.r[m - 1] = v;
        self.dfs(m - 2, l1, v);
        self.r[m - 1] = 0;
      }
    });
  }
  for (auto& t : threads) t.join();
  nodes = 1;  // the root expansion, counted once regardless of the split
  for (auto& p : parts) {
    nodes += p.nodes;
    for (auto& hit : p.found) found.push_back(std::move(hit));
  }
}

}  // namespace

SearchReport enumerate(const SearchConfig& config) {
  const Level& level = config.level;
  if (config.mode == SearchMode::weak_witness) {
    throw std::domain_error("enumerate handles holomorphic/cuspidal; use weak_witness()");
  }
  if (config.k < 2 || config.k % 2 != 0) {
    throw std::domain_error("enumerate needs even weight k >= 2");
  }
  if (!level.squarefree()) throw std::domain_error("enumerate needs a squarefree level");
  if (!level.coprime6()) throw std::domain_error("enumerate needs gcd(N, 6) = 1");

  BigInt bound_big = config.bound_override ? *config.bound_override : rw_bound(level, config.k);
  if (bound_big < 0) bound_big = 0;
  const long bound = to_long_checked(bound_big);

  const CuspMatrix A = cusp_matrix(level);
  const bool cuspidal = config.mode == SearchMode::cuspidal;

  std::vector<std::vector<long>> found;
  std::uint64_t nodes = 0;
  // int64 is safe when every partial sum |sum A[i][j] r_j| <= N * bound fits.
  BigInt worst = level.n() * (bound_big + 1);
  if (worst.fits_slong_p() && worst.get_si() < (1L << 61)) {
    auto engine = make_engine<long>(level, A, config.k, bound, cuspidal);
    run_engine(std::move(engine), config.workers, found, nodes);
  } else {
    auto engine = make_engine<BigInt>(level, A, config.k, bound, cuspidal);
    run_engine(std::move(engine), config.workers, found, nodes);
  }
  std::sort(found.begin(), found.end());

  SearchReport report(config);
  report.bound_used = bound_big;
  report.nodes_explored = nodes;
  report.hits.reserve(found.size());
  for (const auto& rv : found) {
    std::vector<BigInt> values(rv.begin(), rv.end());
    EtaExponents e(level, std::move(values));
    CuspOrderVector orders = orders_vector(e);
    const bool cusp_form = orders.all_positive();
    report.hits.push_back(SearchHit{e, character_kernel(e), std::move(orders), cusp_form});
  }
  return report;
}

SearchReport enumerate(const Level& level, long k, SearchMode mode) {
  SearchConfig config(level);
  config.k = k;
  config.mode = mode;
  return enumerate(config);
}

namespace {

constexpr long kUnreachable = std::numeric_limits<long>::max() / 4;

// Minimal l1 cost of shifting the mod-24 congruence sum by each residue,
// using +/-1 steps on the given coefficients.  Plain BFS on 24 states.
std::array<long, 24> congruence_distances(const std::vector<long>& coeffs) {
  std::array<long, 24> dist;
  dist.fill(kUnreachable);
  dist[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int at = queue.front();
    queue.pop_front();
    for (const long c : coeffs) {
      for (const long step : {c, 24 - c}) {  // +c and -c mod 24
        const int to = static_cast<int>((at + step) % 24);
        if (dist[to] > dist[at] + 1) {
          dist[to] = dist[at] + 1;
          queue.push_back(to);
        }
      }
    }
  }
  return dist;
}

struct WeakSearch {
  std::size_t m;
  long two_k;
  std::vector<long> coeff;                    // (d mod 24) - 1, per divisor index
  std::vector<std::array<long, 24>> dist;     // dist[t]: using indices in [1, t]
  long target;                                // required congruence shift
  long R = 0;
  std::vector<long> r;
  std::vector<std::vector<long>> found;

  // Assign indices m-1 .. 1; index 0 is forced by the weight sum.
  void dfs(std::size_t t, long l1, long sum, long acc) {
    if (t == 0) {
      const long v0 = two_k - sum;
      if (l1 + std::labs(v0) > R) return;
      if (acc % 24 != target) return;
      r[0] = v0;
      found.push_back(r);
      r[0] = 0;
      return;
    }
    const long room = R - l1;
    for (long v = -room; v <= room; ++v) {
      const long l1n = l1 + std::labs(v);
      const long accn = ((acc + coeff[t] * v) % 24 + 24) % 24;
      const long needed = ((target - accn) % 24 + 24) % 24;
      const long fix = dist[t - 1][needed];
      const long drift = std::labs(two_k - (sum + v));
      if (l1n + std::max(fix, drift) > R) continue;
      r[t] = v;
      dfs(t - 1, l1n, sum + v, accn);
      r[t] = 0;
    }
  }
};

}  // namespace

std::optional<EtaExponents> weak_witness(const Level& level, long k) {
  if (!level.coprime6()) throw std::domain_error("weak_witness needs gcd(N, 6) = 1");
  if (k % 2 != 0) throw std::domain_error("weak_witness needs even k");
  const unsigned h = h_of(level);
  if (k % static_cast<long>(h) != 0) return std::nullopt;

  const std::size_t m = level.divisor_count();
  WeakSearch ws;
  ws.m = m;
  ws.two_k = 2 * k;
  ws.coeff.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    ws.coeff[j] =
        (static_cast<long>(mpz_fdiv_ui(level.divisors()[j].get_mpz_t(), 24)) + 23) % 24;
  }
  ws.target = ((-ws.two_k) % 24 + 24) % 24;

  ws.dist.resize(m);
  {
    std::vector<long> cs;
    ws.dist[0] = congruence_distances(cs);  // only the forced divisor 1 left
    for (std::size_t t = 1; t < m; ++t) {
      cs.push_back(ws.coeff[t]);
      ws.dist[t] = congruence_distances(cs);
    }
  }

  // Every divisor is its own inverse mod 24, so gcd({d-1} u {24}) equals
  // gcd({p-1} u {24}) = 2h, and h | k makes the congruence solvable.  Build
  // one explicit solution to cap the shell search.
  const auto& full = ws.dist[m - 1];
  if (full[ws.target] >= kUnreachable) {
    throw ConsistencyAlarm("weak witness congruence unexpectedly unsolvable");
  }
  long cap;
  {
    // Walk the BFS distances backwards to a concrete move list.
    long t_sum = 0, t_l1 = 0;
    int at = static_cast<int>(ws.target);
    while (at != 0) {
      bool stepped = false;
      for (std::size_t j = 1; j < m && !stepped; ++j) {
        for (const long sgn : {1L, -1L}) {
          const int prev = static_cast<int>(((at - sgn * ws.coeff[j]) % 24 + 24) % 24);
          if (full[prev] + 1 == full[at]) {
            t_sum += sgn;
            t_l1 += 1;
            at = prev;
            stepped = true;
            break;
          }
        }
      }
      if (!stepped) throw ConsistencyAlarm("weak witness backtrack failed");
    }
    cap = t_l1 + std::labs(ws.two_k - t_sum);
  }

  const long start = std::labs(ws.two_k);
  for (long R = start; R <= std::max(cap, start); R += 2) {
    ws.R = R;
    ws.r.assign(m, 0);
    ws.found.clear();
    if (m == 1) {
      ws.dfs(0, 0, 0, 0);
    } else {
      ws.dfs(m - 1, 0, 0, 0);
    }
    if (!ws.found.empty()) {
      std::sort(ws.found.begin(), ws.found.end());
      std::vector<BigInt> values(ws.found.front().begin(), ws.found.front().end());
      return EtaExponents(level, std::move(values));
    }
  }
  throw ConsistencyAlarm("weak witness shell search passed its constructive cap");
}

}  // namespace etaforge
