// Runs the built executable and checks exit codes and output files.
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = HOMRICCI_CLI_PATH;
const std::string kConfigs = HOMRICCI_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("homricci_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& log = {}) {
  std::string cmd = kCli + " " + args;
  cmd += log.empty() ? " >/dev/null 2>&1" : " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run writes CSV and JSON with exit 0") {
  const fs::path d = scratch("run");
  CHECK(run("run --config " + kConfigs + "/run_so3r3_exact.ini --out-csv " +
            (d / "t.csv").string() + " --out-json " + (d / "s.json").string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(d / "s.json"));
  CHECK(doc["termination"] == "Extinct");
  CHECK(std::abs(doc["extinction_time"].get<double>() - 0.5) < 1e-6);
  CHECK(slurp(d / "t.csv").rfind("t,alpha,beta,gamma,mu,nu,eps,x,scal,lambda_min\n", 0) == 0);
  fs::remove_all(d);
}

TEST_CASE("output paths can come from the config") {
  const fs::path d = scratch("run_output_section");
  write(d / "c.ini", "[model]\ncase=sl2c\nalpha=1\nbeta=1\ngamma=1\n[output]\ncsv=" +
                         (d / "t.csv").string() + "\njson=" + (d / "s.json").string() + "\n");
  CHECK(run("run --config " + (d / "c.ini").string()) == 0);
  CHECK(fs::exists(d / "t.csv"));
  CHECK(fs::exists(d / "s.json"));
  fs::remove_all(d);
}

TEST_CASE("malformed config exits 1 and writes nothing") {
  const fs::path d = scratch("malformed");
  write(d / "bad.ini", "[model]\ncase = so3r3\nalpha = one\n");
  const std::string out = " --out-csv " + (d / "t.csv").string() + " --out-json " +
                          (d / "s.json").string();
  CHECK(run("run --config " + (d / "bad.ini").string() + out, d / "log.txt") == 1);
  CHECK(slurp(d / "log.txt").find("alpha") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "t.csv"));
  CHECK_FALSE(fs::exists(d / "s.json"));

  CHECK(run("run --config " + (d / "missing.ini").string() + out) == 1);
  CHECK(run("run" + out) == 1);
  CHECK(run("frobnicate") == 1);
  write(d / "bad_sweep.ini", "[sweep]\ncase=so3r3\n[grid]\nalpha=1\nbeta=1\ngamma=1\nnu=0 3 2 linear\n");
  CHECK(run("sweep --config " + (d / "bad_sweep.ini").string() + " --out-json " +
            (d / "w.json").string()) == 1);
  CHECK_FALSE(fs::exists(d / "w.json"));
  fs::remove_all(d);
}

TEST_CASE("horizon 0 gives a one-row CSV") {
  const fs::path d = scratch("horizon0");
  write(d / "c.ini", "[model]\ncase=so3r3\nalpha=1\nbeta=2\ngamma=3\nnu=0.5\n[flow]\nhorizon=0\n");
  REQUIRE(run("run --config " + (d / "c.ini").string() + " --out-csv " +
              (d / "t.csv").string() + " --out-json " + (d / "s.json").string()) == 0);
  const std::string csv = slurp(d / "t.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(nlohmann::json::parse(slurp(d / "s.json"))["termination"] == "HorizonReached");
  fs::remove_all(d);
}

TEST_CASE("identical config gives identical outputs") {
  const fs::path d = scratch("determinism");
  const std::string cfg = " --config " + kConfigs + "/run_so3r3_twisted.ini";
  for (const char* tag : {"a", "b"}) {
    REQUIRE(run("run" + cfg + " --out-csv " + (d / (std::string(tag) + ".csv")).string() +
                " --out-json " + (d / (std::string(tag) + ".json")).string()) == 0);
  }
  CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
  CHECK(slurp(d / "a.json") == slurp(d / "b.json"));

  const std::string sweep = "sweep --config " + kConfigs + "/sweep_so3r3_random.ini --out-json ";
  REQUIRE(run(sweep + (d / "s1.json").string()) == 0);
  REQUIRE(run(sweep + (d / "s2.json").string() + " --parallel") == 0);
  CHECK(slurp(d / "s1.json") == slurp(d / "s2.json"));
  fs::remove_all(d);
}

TEST_CASE("verify exit codes") {
  const fs::path d = scratch("verify");
  CHECK(run("verify --samples 0", d / "v0.txt") == 0);
  CHECK(slurp(d / "v0.txt").find("0 failed") != std::string::npos);
  // Exit 2 iff the report lists a failure.
  const int rc = run("verify --samples 200 --seed 5", d / "v1.txt");
  const bool any_fail = slurp(d / "v1.txt").find("FAIL") != std::string::npos;
  CHECK(rc == (any_fail ? 2 : 0));
  run("verify --samples 200 --seed 5", d / "v2.txt");
  CHECK(slurp(d / "v1.txt") == slurp(d / "v2.txt"));
  fs::remove_all(d);
}

}  // TEST_SUITE
