#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "heatcoef/cli.hpp"
#include "heatcoef/json_io.hpp"

using namespace heatcoef;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "heatcoef");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "heatcoef_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("envelope layout") {
  const auto r = run({"patodi", "--m", "4", "--p", "1"});
  REQUIRE(r.code == kExitPass);
  const auto j = json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"version", "config", "result", "pass", "failures"});
  CHECK(j["version"] == version());
  CHECK(j["config"]["command"] == "patodi");
  CHECK(j["pass"] == true);
  CHECK(j["failures"].empty());
}

TEST_CASE("exceptional pairs") {
  const auto r = run({"exceptional", "--kind", "real", "--count", "4"});
  REQUIRE(r.code == kExitPass);
  CHECK(json::parse(r.out)["result"] == json::parse("[[0,1],[1,6],[5,25],[20,96]]"));

  const auto scan = run({"exceptional", "--scan", "10000"});
  CHECK(scan.code == kExitPass);
  CHECK(json::parse(scan.out)["result"]["match"] == true);
}

TEST_CASE("certify c1") {
  const auto r = run({"certify", "--combo", "c1", "--m-max", "200"});
  REQUIRE(r.code == kExitPass);
  const auto j = json::parse(r.out)["result"];
  CHECK(j["valid"] == true);
  CHECK(j["zero_set"].size() == 3);
}

TEST_CASE("tensor csv report") {
  const auto r = run({"tensor", "--m", "4", "--seeds", "3", "--report", "csv"});
  REQUIRE(r.code == kExitPass);
  std::istringstream lines(r.out);
  std::string header, line;
  std::getline(lines, header);
  CHECK(header.rfind("seed,", 0) == 0);
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"patodi"}).code == kExitUsage);
  CHECK(run({"patodi", "--m", "4", "--bogus"}).code == kExitUsage);
  CHECK(run({"certify", "--combo", "nonsense"}).code == kExitUsage);
  CHECK(run({"patodi", "--m", "4", "--p", "9"}).code == kExitUsage);
  CHECK(run({"heat-fit", "--spec", "x.json", "--grid", "1:2"}).code != kExitPass);
}

TEST_CASE("missing and malformed files exit 3") {
  const auto dir = scratch_dir();
  CHECK(run({"heat-fit", "--spec", (dir / "nope.json").string()}).code == kExitIo);
  std::ofstream(dir / "broken.json") << "[1, 2";
  CHECK(run({"heat-fit", "--spec", (dir / "broken.json").string()}).code == kExitIo);
}

TEST_CASE("spectrum, heat-fit and almost-iso through files") {
  const auto dir = scratch_dir();
  const auto s = (dir / "s2.json").string();
  const auto p = (dir / "s2p.json").string();
  REQUIRE(run({"spectrum", "--kind", "sphere", "--m", "2", "--max-level", "2000", "--out", s}).code == kExitPass);
  REQUIRE(run({"spectrum", "--kind", "sphere", "--m", "2", "--max-level", "2000", "--perturb-alpha", "1.5",
               "--amplitude", "1", "--seed", "4", "--out", p})
              .code == kExitPass);
  CHECK(load_spectrum(p).label.find("seed=4") != std::string::npos);

  const auto fit = run({"heat-fit", "--spec", s});
  REQUIRE(fit.code == kExitPass);
  const auto a = json::parse(fit.out)["result"]["a_hat"];
  CHECK(a[0].get<double>() == doctest::Approx(4.0 * 3.14159265358979).epsilon(1e-3));

  // Identical bytes on a rerun.
  CHECK(run({"heat-fit", "--spec", s}).out == fit.out);

  const auto iso = run({"almost-iso", "--spec1", s, "--spec2", p, "--alpha", "1.5"});
  CHECK(iso.code == kExitPass);
  CHECK(json::parse(iso.out)["result"]["agreement"]["pass"] == true);
}

TEST_CASE("relative outputs land in HEATCOEF_OUT_DIR") {
  const auto dir = scratch_dir() / "out";
  std::filesystem::create_directories(dir);
  const auto s = (scratch_dir() / "s2_out.json").string();
  REQUIRE(run({"spectrum", "--kind", "sphere", "--m", "2", "--max-level", "2000", "--out", s}).code == kExitPass);
  std::filesystem::remove(dir / "heat_fit.csv");
  ::setenv("HEATCOEF_OUT_DIR", dir.c_str(), 1);
  CHECK(output_path("x.json") == dir / "x.json");
  CHECK(output_path("/abs/x.json") == std::filesystem::path("/abs/x.json"));
  const auto r = run({"heat-fit", "--spec", s, "--json", "fit.json"});
  ::unsetenv("HEATCOEF_OUT_DIR");
  REQUIRE(r.code == kExitPass);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp(dir / "fit.json"))["pass"] == true);
  const auto csv = slurp(dir / "heat_fit.csv");
  CHECK(csv.rfind("t,trace,model,residual\n", 0) == 0);
}

TEST_CASE("all --quick on a subset") {
  const auto r = run({"all", "--quick", "--only", "1", "2", "3"});
  REQUIRE(r.code == kExitPass);
  const auto j = json::parse(r.out);
  REQUIRE(j["result"].size() == 3);
  for (const auto& c : j["result"]) CHECK(c["pass"] == true);
  CHECK(r.err.find("PASS [1]") != std::string::npos);
  CHECK(r.err.find("PASS [3]") != std::string::npos);
}
