#include "scan_cache.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace etaforge::cli {

using nlohmann::json;

ScanKey key_of(const ScanRow& row) {
  return {row.n.get_str(), row.k, row.mode, row.version};
}

std::string scan_row_to_jsonl(const ScanRow& row) {
  json j;
  j["n"] = row.n.fits_slong_p() ? json(row.n.get_si()) : json(row.n.get_str());
  j["k"] = row.k;
  j["verdict"] = row.verdict;
  j["hit_count"] = row.hit_count;
  j["h"] = row.h;
  j["in_S"] = row.in_s;
  j["rwhyp"] = row.rwhyp;
  j["elapsed_ms"] = row.elapsed_ms;
  j["mode"] = row.mode;
  j["version"] = row.version;
  return j.dump();
}

ScanRow scan_row_from_jsonl(const std::string& line) {
  const json j = json::parse(line);
  ScanRow row;
  row.n = j.at("n").is_string() ? BigInt(j.at("n").get<std::string>())
                                : BigInt(static_cast<long>(j.at("n").get<long long>()));
  row.k = j.at("k").get<long>();
  row.verdict = j.at("verdict").get<std::string>();
  row.hit_count = j.at("hit_count").get<long long>();
  row.h = j.at("h").get<unsigned>();
  row.in_s = j.at("in_S").get<bool>();
  row.rwhyp = j.at("rwhyp").get<bool>();
  row.elapsed_ms = j.at("elapsed_ms").get<long long>();
  row.mode = j.at("mode").get<std::string>();
  row.version = j.at("version").get<int>();
  return row;
}

std::string scan_csv_header() {
  return "n,k,verdict,hit_count,h,in_S,rwhyp,elapsed_ms";
}

std::string scan_row_to_csv(const ScanRow& row) {
  std::ostringstream os;
  os << row.n.get_str() << ',' << row.k << ',' << row.verdict << ',' << row.hit_count
     << ',' << row.h << ',' << (row.in_s ? "true" : "false") << ','
     << (row.rwhyp ? "true" : "false") << ',' << row.elapsed_ms;
  return os.str();
}

ScanCache::ScanCache(std::string path) : path_(std::move(path)) {}

std::vector<ScanRow> ScanCache::load() {
  std::vector<ScanRow> rows;
  std::ifstream in(path_, std::ios::binary);
  if (!in.is_open()) return rows;

  std::string line;
  std::streamoff good_end = 0;
  bool first = true;
  bool corrupt_tail = false;
  while (std::getline(in, line)) {
    const bool had_newline = !in.eof();
    try {
      if (first) {
        const json header = json::parse(line);
        if (!header.contains("etaforge_cache") || header.at("version") != kCacheVersion) {
          throw std::runtime_error("cache header mismatch at " + path_);
        }
        first = false;
      } else {
        rows.push_back(scan_row_from_jsonl(line));
      }
    } catch (const json::exception&) {
      if (!had_newline || in.peek() == EOF) {
        corrupt_tail = true;  // interrupted final write: drop it
        break;
      }
      throw std::runtime_error("cache corrupt mid-file at " + path_);
    }
    good_end += static_cast<std::streamoff>(line.size()) + (had_newline ? 1 : 0);
  }
  in.close();
  if (corrupt_tail) {
    std::filesystem::resize_file(path_, static_cast<std::uintmax_t>(good_end));
  }
  header_written_ = !first;
  return rows;
}

void ScanCache::ensure_header() {
  if (header_written_) return;
  if (!std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0) {
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    json header;
    header["etaforge_cache"] = true;
    header["version"] = kCacheVersion;
    out << header.dump() << '\n';
  }
  header_written_ = true;
}

void ScanCache::append(const ScanRow& row) {
  ensure_header();
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out.is_open()) throw std::runtime_error("cannot open cache for append: " + path_);
  out << scan_row_to_jsonl(row) << '\n';
}

}  // namespace etaforge::cli
