#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
};

// Run a shell command, capture stdout, decode the exit status.
RunResult run(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), std::move(out)};
}

const std::string kCli = ETAFORGE_CLI_PATH;
const std::string kGolden = ETAFORGE_GOLDEN_DIR;

std::string golden(const std::string& name) {
  std::ifstream in(kGolden + "/" + name, std::ios::binary);
  REQUIRE(in.is_open());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Strip the elapsed_ms column (the only line-to-line nondeterminism).
std::string drop_last_csv_column(const std::string& text) {
  std::stringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out += line.substr(0, pos);
    out += '\n';
  }
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           fs::path("etaforge-cli-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("help exits zero, unknown input exits two") {
  CHECK(run(kCli + " --help >/dev/null 2>&1").exit_code == 0);
  CHECK(run(kCli + " 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " frobnicate 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " enumerate 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " enumerate 5 2 --mode sideways 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " enumerate banana 2 2>/dev/null").exit_code == 2);
}

TEST_CASE("domain errors exit two") {
  CHECK(run(kCli + " decide 10 2 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " decide 5 3 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " enumerate 25 2 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " matrix 175 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " qexp 5 \"[[3,1]]\" 2>/dev/null").exit_code == 2);
  CHECK(run(kCli + " invariants 0 2>/dev/null").exit_code == 2);
}

TEST_CASE("enumerate output matches the golden files") {
  const RunResult json = run(kCli + " enumerate 5 2 2>/dev/null");
  CHECK(json.exit_code == 0);
  CHECK(json.out == golden("enumerate_5_2.json"));

  const RunResult csv = run(kCli + " enumerate 35 2 --format csv 2>/dev/null");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out == golden("enumerate_35_2.csv"));

  const RunResult weak = run(kCli + " enumerate 145 2 --mode weak-witness 2>/dev/null");
  CHECK(weak.exit_code == 0);
  CHECK(weak.out == golden("weak_witness_145_2.json"));
}

TEST_CASE("parallel enumeration prints the same bytes") {
  const RunResult solo = run(kCli + " enumerate 385 2 2>/dev/null");
  const RunResult multi = run(kCli + " enumerate 385 2 --parallel 4 2>/dev/null");
  CHECK(solo.exit_code == 0);
  CHECK(multi.exit_code == 0);
  CHECK(solo.out == multi.out);
}

TEST_CASE("decide output matches the golden files") {
  const RunResult no = run(kCli + " decide 29 2 2>/dev/null");
  CHECK(no.exit_code == 0);
  CHECK(no.out == golden("decide_29_2.json"));

  const RunResult yes = run(kCli + " decide 29 4 --verify 2>/dev/null");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == golden("decide_29_4.json"));

  // --verify on a non-enumerable level still re-checks the witness
  const RunResult lift = run(kCli + " decide 175 2 --verify 2>/dev/null");
  CHECK(lift.exit_code == 0);
}

TEST_CASE("matrix output matches the golden file") {
  const RunResult m = run(kCli + " matrix 15 --check-latin 2>/dev/null");
  CHECK(m.exit_code == 0);
  CHECK(m.out == golden("matrix_15.json"));
}

TEST_CASE("qexp output matches the golden files") {
  const RunResult text = run(kCli + " qexp 1 \"[[1,24]]\" --terms 8 2>/dev/null");
  CHECK(text.exit_code == 0);
  CHECK(text.out == golden("qexp_delta.txt"));

  const RunResult json =
      run(kCli + " qexp 5 \"[[1,-1],[5,5]]\" --terms 6 --format json 2>/dev/null");
  CHECK(json.exit_code == 0);
  CHECK(json.out == golden("qexp_5.json"));
}

TEST_CASE("invariants output matches the golden file") {
  const RunResult inv = run(kCli + " invariants 5005 2>/dev/null");
  CHECK(inv.exit_code == 0);
  CHECK(inv.out == golden("invariants_5005.txt"));
}

TEST_CASE("scan writes, caches, resumes") {
  TempDir tmp;
  const std::string cache = (tmp.path / "cache.jsonl").string();
  const std::string env = "ETAFORGE_CACHE=" + cache + " ";

  const RunResult first = run(env + kCli + " scan --max-n 35 --weights 2,4 2>/dev/null");
  CHECK(first.exit_code == 0);
  CHECK(drop_last_csv_column(first.out) == golden("scan_35.csv"));
  REQUIRE(fs::exists(cache));
  const auto size_after_first = fs::file_size(cache);

  // resuming re-emits the same table without recomputing
  const RunResult second =
      run(env + kCli + " scan --max-n 35 --weights 2,4 --resume 2>/dev/null");
  CHECK(second.exit_code == 0);
  CHECK(drop_last_csv_column(second.out) == golden("scan_35.csv"));
  CHECK(fs::file_size(cache) == size_after_first);

  // a verified pass records hit counts and lands in a separate cache mode
  const RunResult verified = run(
      env + kCli + " scan --max-n 35 --weights 2 --resume --verify --parallel 3 2>/dev/null");
  CHECK(verified.exit_code == 0);
  CHECK(drop_last_csv_column(verified.out) == golden("scan_35_verified.csv"));

  // a torn final line is healed on the next run
  {
    std::ofstream out(cache, std::ios::binary | std::ios::app);
    out << "{\"n\": 55, \"k\": 2, \"ver";
  }
  const RunResult healed =
      run(env + kCli + " scan --max-n 35 --weights 2,4 --resume 2>/dev/null");
  CHECK(healed.exit_code == 0);
  CHECK(drop_last_csv_column(healed.out) == golden("scan_35.csv"));

  // --out picks the format from the extension
  const std::string jsonl_path = (tmp.path / "rows.jsonl").string();
  const RunResult to_file = run(env + kCli + " scan --max-n 25 --weights 2 --out " +
                                jsonl_path + " 2>/dev/null");
  CHECK(to_file.exit_code == 0);
  std::ifstream rows(jsonl_path);
  REQUIRE(rows.is_open());
  std::string line;
  int count = 0;
  while (std::getline(rows, line)) {
    CHECK(line.front() == '{');
    CHECK(line.find("\"verdict\"") != std::string::npos);
    ++count;
  }
  CHECK(count == 8);  // 5, 7, 11, 13, 17, 19, 23, 25
}
