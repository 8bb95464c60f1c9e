#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "subplanck/cli/commands.hpp"

using namespace subplanck;
using namespace subplanck::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "subplanck_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(SUBPLANCK_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("state shorthand") {
  const StateSpec s = state_from_shorthand("fock:10");
  REQUIRE(std::holds_alternative<Fock>(s.kind));
  CHECK(std::get<Fock>(s.kind).n == 10);
  const StateSpec c = state_from_shorthand(R"({"kind":"cat","alpha":2.5,"nbar":0.1})");
  REQUIRE(std::holds_alternative<Cat>(c.kind));
  CHECK(std::get<Cat>(c.kind).alpha == 2.5);
  CHECK(c.thermal_nbar == 0.1);
}

TEST_CASE("report JSON is deterministic and keeps key order") {
  RunConfig cfg;
  cfg.input = StateSpec{Fock{1}};
  cfg.pipeline.layers = 2;
  const std::string a = to_json_text(cmd_quantify(cfg));
  const std::string b = to_json_text(cmd_quantify(cfg));
  CHECK(a == b);
  const Json j = Json::parse(a);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(!keys.empty());
  CHECK(keys.front() == "min_variance");
  CHECK(keys.back() == "copies");
  CHECK(j.contains("min_variance"));
  CHECK(j.contains("asymptotic_variance"));
}

TEST_CASE("density CSV round trip") {
  const GridDensity d = fock_density(3);
  const auto path = scratch("fock3.csv");
  {
    std::ofstream os(path);
    write_density_csv(os, d);
  }
  const GridDensity r = read_density_csv(path.string());
  REQUIRE(r.size() == d.size());
  CHECK(r.x_min() == doctest::Approx(d.x_min()).epsilon(1e-15));
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) worst = std::max(worst, std::abs(r.value(i) - d.value(i)));
  CHECK(worst < 1e-12);
}

TEST_CASE("sweep rows are sorted by the swept parameter") {
  RunConfig cfg;
  cfg.input = StateSpec{Fock{1}};
  cfg.pipeline.layers = 1;
  cfg.sweep.param = "fock_n";
  cfg.sweep.values = {4, 1, 2, 0};
  cfg.sweep.workers = 3;
  const std::string csv = cmd_sweep(cfg);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("param,value,", 0) == 0);
  std::vector<std::string> vals;
  while (std::getline(is, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    vals.push_back(line.substr(a + 1, b - a - 1));
  }
  CHECK(vals == std::vector<std::string>{"0", "1", "2", "4"});
  cfg.sweep.workers = 1;
  CHECK(cmd_sweep(cfg) == csv);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"pipeline":{"layers":-2}})")), Error);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  try {
    load_run_config(bad.string());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}

TEST_CASE("exit code classes") {
  CHECK(exit_code_for(Errc::InvalidConfig) == 2);
  CHECK(exit_code_for(Errc::ParseError) == 2);
  CHECK(exit_code_for(Errc::IoError) == 2);
  CHECK(exit_code_for(Errc::NoRootInBracket) == 4);
  CHECK(exit_code_for(Errc::FitDiverged) == 4);
  CHECK(exit_code_for(Errc::NoAcceptedSamples) == 4);
  CHECK(exit_code_for(Errc::GridTooNarrow) == 3);
}

TEST_CASE("tool exit codes") {
  CHECK(run_tool("--state fock:1 --layers 1 quantify") == 0);
  CHECK(run_tool("--state fock:0 depth") == 3);
  CHECK(run_tool("--state fock:1 --layers 5 oracle") == 3);
  const auto bad = scratch("bad_tool.json");
  std::ofstream(bad) << "{ not json";
  CHECK(run_tool("--config " + bad.string() + " quantify") == 2);
  CHECK(run_tool("--no-such-flag") == 2);
  const auto out = scratch("tool_density.csv");
  CHECK(run_tool("--state fock:2 --out " + out.string() + " export-density") == 0);
  CHECK(read_density_csv(out.string()).size() == 4096);
}
