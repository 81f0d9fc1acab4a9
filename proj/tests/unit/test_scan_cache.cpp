#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "../../tools/scan_cache.hpp"

using namespace etaforge;
using cli::ScanCache;
using cli::ScanRow;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           fs::path("etaforge-cache-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ScanRow sample_row(long n, long k) {
  ScanRow row;
  row.n = n;
  row.k = k;
  row.verdict = "EXISTS_CONSTRUCTIVE";
  row.hit_count = 3;
  row.h = 2;
  row.in_s = false;
  row.rwhyp = true;
  row.elapsed_ms = 17;
  row.mode = "decide+verify";
  return row;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("rows survive an append/load cycle") {
  TempDir tmp;
  const fs::path file = tmp.path / "cache.jsonl";
  {
    ScanCache cache(file.string());
    CHECK(cache.load().empty());
    cache.append(sample_row(35, 2));
    cache.append(sample_row(35, 4));
  }
  ScanCache cache(file.string());
  const auto rows = cache.load();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 35);
  CHECK(rows[0].k == 2);
  CHECK(rows[0].verdict == "EXISTS_CONSTRUCTIVE");
  CHECK(rows[0].hit_count == 3);
  CHECK(rows[0].h == 2);
  CHECK(rows[0].in_s == false);
  CHECK(rows[0].rwhyp == true);
  CHECK(rows[0].mode == "decide+verify");
  CHECK(rows[1].k == 4);

  // the version header is the first line
  const std::string content = slurp(file);
  CHECK(content.rfind("{\"etaforge_cache\":true,\"version\":1}", 0) == 0);
}

TEST_CASE("keys distinguish n, k and mode") {
  ScanRow a = sample_row(35, 2);
  ScanRow b = sample_row(35, 2);
  b.mode = "decide";
  ScanRow c = sample_row(35, 4);
  CHECK(key_of(a) != key_of(b));
  CHECK(key_of(a) != key_of(c));
  CHECK(key_of(a) == key_of(sample_row(35, 2)));
}

TEST_CASE("a corrupt trailing line is truncated away") {
  TempDir tmp;
  const fs::path file = tmp.path / "cache.jsonl";
  {
    ScanCache cache(file.string());
    cache.append(sample_row(35, 2));
    cache.append(sample_row(55, 2));
  }
  {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    out << "{\"n\": 65, \"k\": 2, truncated mid-wr";
  }
  ScanCache cache(file.string());
  const auto rows = cache.load();
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].n == 55);
  // the broken tail is gone from disk, and appends keep working
  const std::string content = slurp(file);
  CHECK(content.find("truncated") == std::string::npos);
  cache.append(sample_row(65, 2));
  CHECK(ScanCache(file.string()).load().size() == 3);
}

TEST_CASE("corruption in the middle is a hard error") {
  TempDir tmp;
  const fs::path file = tmp.path / "cache.jsonl";
  {
    ScanCache cache(file.string());
    cache.append(sample_row(35, 2));
  }
  {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    out << "garbage line\n";
    ScanRow tail = sample_row(55, 2);
    out << cli::scan_row_to_jsonl(tail) << "\n";
  }
  ScanCache cache(file.string());
  CHECK_THROWS_AS(cache.load(), std::runtime_error);
}

TEST_CASE("jsonl round trip keeps every field") {
  const ScanRow row = sample_row(5005, 6);
  const ScanRow back = cli::scan_row_from_jsonl(cli::scan_row_to_jsonl(row));
  CHECK(back.n == row.n);
  CHECK(back.k == row.k);
  CHECK(back.verdict == row.verdict);
  CHECK(back.hit_count == row.hit_count);
  CHECK(back.h == row.h);
  CHECK(back.in_s == row.in_s);
  CHECK(back.rwhyp == row.rwhyp);
  CHECK(back.elapsed_ms == row.elapsed_ms);
  CHECK(back.mode == row.mode);
  CHECK(back.version == row.version);
}

TEST_CASE("csv emission") {
  CHECK(cli::scan_csv_header() == "n,k,verdict,hit_count,h,in_S,rwhyp,elapsed_ms");
  CHECK(cli::scan_row_to_csv(sample_row(35, 2)) ==
        "35,2,EXISTS_CONSTRUCTIVE,3,2,false,true,17");
}
