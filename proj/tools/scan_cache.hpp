#ifndef ETAFORGE_TOOLS_SCAN_CACHE_HPP
#define ETAFORGE_TOOLS_SCAN_CACHE_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "etaforge/arithmetic.hpp"

namespace etaforge::cli {

inline constexpr int kCacheVersion = 1;

struct ScanRow {
  BigInt n;
  long k = 0;
  std::string verdict;
  long long hit_count = -1;  // -1: enumeration not run for this row
  unsigned h = 0;
  bool in_s = false;
  bool rwhyp = false;
  long long elapsed_ms = 0;
  std::string mode;          // "decide" or "decide+verify"
  int version = kCacheVersion;
};

using ScanKey = std::tuple<std::string, long, std::string, int>;  // (n, k, mode, version)

ScanKey key_of(const ScanRow& row);

std::string scan_row_to_jsonl(const ScanRow& row);
ScanRow scan_row_from_jsonl(const std::string& line);

std::string scan_csv_header();
std::string scan_row_to_csv(const ScanRow& row);

// Append-only JSON-lines cache with a version header.  load() tolerates a
// corrupt trailing line by truncating the file back to the last good row;
// corruption anywhere else is an error.
class ScanCache {
 public:
  explicit ScanCache(std::string path);
  // Read existing rows (creating nothing).  Returns the completed rows.
  std::vector<ScanRow> load();
  // Append a row, creating the file (with header) on first write.
  void append(const ScanRow& row);
  const std::string& path() const { return path_; }

 private:
  void ensure_header();
  std::string path_;
  bool header_written_ = false;
};

}  // namespace etaforge::cli

#endif
