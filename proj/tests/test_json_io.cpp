#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "heatcoef/json_io.hpp"
#include "heatcoef/pell.hpp"

using namespace heatcoef;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "heatcoef_test_json_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("rationals keep every digit") {
  const Rational q = make_rational(BigInt("-1000000000000000000000000000001"), BigInt("7"));
  const json j = to_json(q);
  CHECK(j["num"] == "-1000000000000000000000000000001");
  CHECK(j["den"] == "7");
  CHECK(rational_from_json(j) == q);
  CHECK(rational_from_json(json::parse(R"({"num":"6","den":"-4"})")) == Rational(-3, 2));
}

TEST_CASE("dimension pairs switch to strings past 64 bits") {
  const auto pairs = exceptional_real(40);
  const json j = to_json(pairs);
  REQUIRE(j.size() == 40);
  CHECK(j[1] == json::array({1, 6}));
  CHECK(j[39][1].is_string());
  CHECK(j[39][1].get<std::string>() == pairs[39].m.get_str());
}

TEST_CASE("spectrum file round trip") {
  const auto s = sphere_spectrum(2, 2.5, 80);
  const auto path = scratch("s2.json");
  save_spectrum(s, path);
  const auto back = load_spectrum(path);
  CHECK(back == s);
  CHECK(back.label == s.label);
}

TEST_CASE("malformed spectra are rejected") {
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"m":2,"p":0,"volume":1.0})")), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"m":2,"p":0,"volume":1.0,"levels":[[0.0]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"m":2,"p":0,"volume":1.0,"levels":[[1.0,1],[0.5,1]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"m":2,"p":0,"volume":-1.0,"levels":[[1.0,1]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"m":"two","p":0,"volume":1.0,"levels":[[1.0,1]]})")),
                  std::invalid_argument);

  const auto bad = scratch("bad.json");
  write_text(bad, "{ not json");
  CHECK_THROWS_AS(load_spectrum(bad), std::invalid_argument);
  CHECK_THROWS_AS(load_spectrum(scratch("missing.json")), IoError);
}

TEST_CASE("fit csv") {
  HeatTraceFit fit;
  fit.t_grid = {0.1, 0.2};
  fit.rescaled_trace = {1.5, 2.0};
  fit.model = {1.25, 2.0};
  const auto csv = fit_csv(fit);
  CHECK(csv == "t,trace,model,residual\n0.10000000000000001,1.5,1.25,0.25\n0.20000000000000001,2,2,0\n");
}
