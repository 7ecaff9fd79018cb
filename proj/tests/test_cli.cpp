#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "endolift/modrep.hpp"
#include "endolift/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool with_stderr = false) {
  const char* bin = std::getenv("ENDOLIFT_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "ENDOLIFT_CLI not set");
  const std::string cmd = std::string("\"") + bin + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  static const auto base = fs::temp_directory_path() / ("endolift_cli_" + std::to_string(std::random_device{}()));
  const auto p = base / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify exit codes") {
  const auto dir = scratch("verify");
  auto r = run("verify --check a-series --d 3 --json --out " + dir.string());
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["reports"].size() == 6);
  for (const auto& rep : j["reports"]) {
    CHECK(rep["schema_version"] == endolift::kReportSchemaVersion);
    CHECK(rep.contains("config_hash"));
    CHECK_FALSE(rep.contains("seconds"));
  }
  const auto one = json::parse(slurp(dir / "a-series.d3.sigma.n1.json"));
  CHECK(one["invariants"]["dim"] == 5);
  CHECK(one["pass"] == true);

  CHECK(run("verify --d 2").code == 1);
  CHECK(run("verify --d 3 --check nonsense").code == 1);
  CHECK(run("verify --d 3 --nu rho").code == 1);
  CHECK(run("verify --d 3 --n 1..0").code == 1);
  CHECK(run("verify --d 3 --level 1").code == 1);
  CHECK(run("verify --bogus").code == 1);
  CHECK(run("").code == 1);
  // lemma alias
  CHECK(run("verify --lemma xi --d 3 --n 0..1 --out " + dir.string()).code == 0);
}

TEST_CASE("verify --check all at d = 4, n = 2") {
  const auto dir = scratch("all");
  const auto r = run("verify --check all --d 4 --n 2 --level 3 --jobs 2 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(fs::exists(dir / "theorem.d4.sigma.n2.json"));
  CHECK(fs::exists(dir / "kd-structure.d4.json"));
}

TEST_CASE("reports are deterministic and seed-dependent only through the config") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  CHECK(run("verify --check sequences,lifts --d 3 --n 0..1 --jobs 1 --out " + a.string()).code == 0);
  CHECK(run("verify --check sequences,lifts --d 3 --n 0..1 --jobs 3 --out " + b.string()).code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
  CHECK(files == 8);
  const auto c = scratch("det_c");
  setenv("ENDOLIFT_SEED", "0x1234", 1);
  CHECK(run("verify --check xi --d 3 --n 0 --nu sigma --out " + c.string()).code == 0);
  unsetenv("ENDOLIFT_SEED");
  const auto rep = json::parse(slurp(c / "xi.d3.sigma.n0.json"));
  CHECK(rep["config"]["seed"] == "0x1234");
  CHECK(run("verify --d 3 --seed zzz").code == 1);
}

TEST_CASE("inspect") {
  auto r = run("inspect A --nu sigma --n 1 --d 3 --json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["dim"] == 5);
  CHECK(j["xi"] == json::array({2, 0}));
  CHECK(j["endotrivial"] == true);
  CHECK(j["stable_end_dim"] == 1);

  r = run("inspect kD --d 3 --json");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["dim"] == 8);
  CHECK(j["free_rank"] == 1);
  CHECK(j["endotrivial"] == false);
  CHECK_FALSE(j.contains("xi"));

  r = run("inspect A --nu tau --n 2 --d 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("xi: (0,4)") != std::string::npos);

  r = run("inspect E --nu tau --d 4 --json");
  j = json::parse(r.out);
  CHECK(j["dim"] == 7);
  CHECK(j["xi"] == json::array({-1, 1}));

  CHECK(run("inspect Q --d 3").code == 1);
  CHECK(run("inspect").code == 1);
  CHECK(run("inspect A --d 2").code == 1);
}

TEST_CASE("inspect reads module files and rejects malformed ones") {
  const auto dir = scratch("files");
  const auto g = endolift::GroupSpec::make(3);
  {
    std::ofstream(dir / "k.json") << endolift::module_to_json(endolift::trivial_module(g)).dump();
  }
  auto r = run("inspect --file " + (dir / "k.json").string() + " --json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["xi"] == json::array({0, 0}));

  { std::ofstream(dir / "junk.json") << "{ not json"; }
  r = run("inspect --file " + (dir / "junk.json").string(), true);
  CHECK(r.code == 1);
  CHECK(r.out.find("\"error\"") != std::string::npos);

  { std::ofstream(dir / "shape.json") << R"({"group": "nope"})"; }
  CHECK(run("inspect --file " + (dir / "shape.json").string()).code == 1);

  // sigma acting by 0
  auto bad = endolift::module_to_json(endolift::trivial_module(g));
  bad["S"]["data"][0][0] = "0000000000000000";
  { std::ofstream(dir / "rel.json") << bad.dump(); }
  r = run("inspect --file " + (dir / "rel.json").string(), true);
  CHECK(r.code == 1);
  CHECK(r.out.find("relation") != std::string::npos);

  CHECK(run("inspect --file " + (dir / "missing.json").string()).code == 1);
}

TEST_CASE("char-table") {
  auto r = run("char-table --d 3 --json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["classes"].size() == 5);
  CHECK(j["characters"].size() == 5);
  for (const auto& row : j["characters"]) CHECK(row["values"].size() == 5);
  r = run("char-table --d 4 --json");
  CHECK(json::parse(r.out)["characters"].size() == 7);
  CHECK(run("char-table --d 2").code == 1);
}

TEST_CASE("golden corpus round trip") {
  const auto dir = scratch("golden");
  CHECK(run("golden --out " + dir.string()).code == 0);
  auto r = run("golden --check --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("clean") != std::string::npos);

  // flip one byte in a matrix
  const auto victim = dir / "modules" / "A_d3_sigma_n1.json";
  std::string body = slurp(victim);
  const auto data = body.find("\"data\"", body.find("\"S\""));
  REQUIRE(data != std::string::npos);
  const auto open = body.find('"', data + 6);
  const auto close = body.find('"', open + 1);
  char& c = body[close - 1];
  c = c == '0' ? '1' : '0';
  { std::ofstream(victim, std::ios::binary) << body; }
  r = run("golden --check --out " + dir.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("modules/A_d3_sigma_n1.json") != std::string::npos);
  CHECK(r.out.find("A_d3_tau_n1") == std::string::npos);

  fs::remove(dir / "char_table_d4.json");
  r = run("golden --check --out " + dir.string());
  CHECK(r.out.find("char_table_d4.json (missing)") != std::string::npos);
}
