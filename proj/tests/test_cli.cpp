#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = AMSDU_CLI;

int run(const std::string& args) {
  const auto status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::current_path() / "cli_out" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    for (std::string cell; std::getline(l, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("default runs produce the documented files") {
  const auto per = fresh_dir("per");
  REQUIRE(run("per-sweep --out-dir " + per.string()) == 0);
  for (const char* name : {"per_rate-0.001_msdu-200.csv", "per_rate-0.0001_msdu-200.csv",
                           "per_rate-1e-05_msdu-200.csv", "per_sweep.json", "manifest.json"})
    CHECK_MESSAGE(fs::exists(per / name), name);
  CHECK(csv(per / "per_rate-0.001_msdu-200.csv").size() == 1 + 9 * 32);

  const auto air = fresh_dir("air");
  REQUIRE(run("airtime-sweep --out-dir " + air.string()) == 0);
  for (const char* name : {"airtime_msdu-100.csv", "airtime_msdu-1000.csv",
                           "airtime_msdu-10000.csv", "airtime_sweep.json", "manifest.json"})
    CHECK_MESSAGE(fs::exists(air / name), name);

  const auto pol = fresh_dir("pol");
  REQUIRE(run("policy-compare --out-dir " + pol.string()) == 0);
  for (const char* name :
       {"policy_compare.csv", "policy_compare.json", "policy_summary.txt", "manifest.json"})
    CHECK_MESSAGE(fs::exists(pol / name), name);
  CHECK(csv(pol / "policy_compare.csv").size() == 28);
}

TEST_CASE("exit codes") {
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("per-sweep --no-such-flag") == 2);
  CHECK(run("per-sweep --depths 3-1 --out-dir " + fresh_dir("bad").string()) == 2);
  CHECK(run("per-sweep --rates 2 --out-dir " + fresh_dir("bad").string()) == 2);
  CHECK(run("per-sweep --out-dir /proc/amsdu/forbidden") == 1);
  CHECK(run("per-sweep --profile /nonexistent/profile.conf") == 1);
  CHECK(run("mg1 --lambda 100 --lambda2 100 --mu 100 --sigma 1e-4") == 2);
  CHECK(run("mg1 --lambda 50") == 2);

  const auto dir = fresh_dir("profiles");
  fs::create_directories(dir);
  std::ofstream(dir / "zero_sifs.conf") << "t_sifs = 0\n";
  CHECK(run("policy-compare --profile " + (dir / "zero_sifs.conf").string() + " --out-dir " +
            (dir / "o").string()) == 2);
}

TEST_CASE("zero error rate gives zero PER everywhere") {
  const auto dir = fresh_dir("zero");
  REQUIRE(run("per-sweep --rates 0 --out-dir " + dir.string()) == 0);
  const auto rows = csv(dir / "per_rate-0_msdu-200.csv");
  REQUIRE(rows.size() == 1 + 9 * 32);
  const auto per = column(rows[0], "per");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][per] == "0");
}

TEST_CASE("Monte-Carlo column") {
  const auto dir = fresh_dir("mc");
  REQUIRE(run("per-sweep --rates 1e-3 --mcs 0 --depths 1,8 --mc-frames 2000 --seed 9 --out-dir " +
              dir.string()) == 0);
  const auto rows = csv(dir / "per_rate-0.001_msdu-200.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].back() == "per_mc");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double exact = std::stod(rows[i][2]);
    const double mc = std::stod(rows[i][4]);
    CHECK(std::abs(mc - exact) < 0.05);
  }
}

TEST_CASE("policy-compare options") {
  const auto lax = fresh_dir("lax");
  REQUIRE(run("policy-compare --target 0.99 --out-dir " + lax.string()) == 0);
  const auto rows = csv(lax / "policy_compare.csv");
  REQUIRE(rows.size() == 1 + 9);
  const auto verdict = column(rows[0], "verdict");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][verdict] == "equivalent");

  const auto mg1 = fresh_dir("mg1");
  REQUIRE(run("policy-compare --retry-airtime --mg1 50,60,100,1e-4 --out-dir " + mg1.string()) ==
          0);
  CHECK(slurp(mg1 / "policy_summary.txt").find("0.4499999999999999") != std::string::npos);
  CHECK(csv(mg1 / "policy_compare.csv")[0].back() == "ad_retry_airtime_us");
  CHECK(run("policy-compare --mg1 1,2 --out-dir " + mg1.string()) == 2);
}

TEST_CASE("airtime-sweep options") {
  const auto dir = fresh_dir("basic");
  REQUIRE(run("airtime-sweep --msdu 200 --basic-rate 6,12,24 --out-dir " + dir.string()) == 0);
  std::size_t csvs = 0;
  for (const auto& e : fs::directory_iterator(dir))
    csvs += e.path().filename().string().rfind("airtime_msdu-", 0) == 0;
  CHECK(csvs == 1);

  const auto rows = csv(dir / "basic_rate_sweep.csv");
  REQUIRE(rows.size() == 1 + 3 * 9);
  for (std::size_t i = 1 + 9; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 9][2]));
    CHECK(rows[i][3] == rows[i - 9][3]);
  }
}

TEST_CASE("profile-dump round trip") {
  const auto dir = fresh_dir("dump");
  fs::create_directories(dir);
  std::ofstream(dir / "in.conf") << "basic_rate = 12\nuse_long_preamble = false\n";
  REQUIRE(run("profile-dump --profile " + (dir / "in.conf").string() + " --out " +
              (dir / "a.conf").string()) == 0);
  REQUIRE(run("profile-dump --profile " + (dir / "a.conf").string() + " --out " +
              (dir / "b.conf").string()) == 0);
  CHECK(slurp(dir / "a.conf") == slurp(dir / "b.conf"));
  CHECK(slurp(dir / "a.conf").find("basic_rate = 12") != std::string::npos);
}

TEST_CASE("reruns are byte-identical apart from the manifest") {
  for (const std::string sub : {"per-sweep --mc-frames 100", "airtime-sweep", "policy-compare"}) {
    const auto a = fresh_dir("rerun_a");
    const auto b = fresh_dir("rerun_b");
    REQUIRE(run(sub + " --out-dir " + a.string()) == 0);
    REQUIRE(run(sub + " --out-dir " + b.string()) == 0);
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().filename() == "manifest.json") continue;
      CAPTURE(e.path().string());
      CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
  }
}
