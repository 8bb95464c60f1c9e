#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subplanck/cli/formats.hpp"
#include "subplanck/error.hpp"

namespace subplanck::cli {

struct DensityCsvInput {
  std::string path;
};

struct RabiCsvInput {
  std::string path;
  RabiModel model;
};

using InputSource = std::variant<std::monostate, StateSpec, DensityCsvInput, RabiCsvInput>;

struct OracleSettings {
  double eps = 0.02;
  double xbar = 0.0;
  std::uint64_t target_accepted = 50000;
  int max_batches = 4096;
  std::uint64_t draws_per_batch = std::uint64_t{1} << 22;
};

struct DepthSettings {
  std::string witness = "subplanck";  // subplanck | wigner | fano
  bool asymptotic = true;
};

struct SweepSettings {
  std::string param = "fock_n";  // fock_n | layers_N | nbar | alpha | gamma | spacing
  std::vector<double> values;
  std::vector<int> layers;       // empty: pipeline.layers
  bool depth = false;
  int workers = 1;
};

struct Outputs {
  std::string report_json;
  std::string table_csv;
  std::string samples_csv;
};

struct RunConfig {
  InputSource input;
  DistillConfig pipeline;
  GridSpec grid;
  OracleSettings oracle;
  DepthSettings depth;
  SweepSettings sweep;
  Outputs outputs;
  std::uint64_t seed = 1;

  void validate() const;
};

RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::string& path);

/// Resolves the configured input to a density (catalog state, CSV, or Rabi fit).
GridDensity resolve_input(const RunConfig& cfg);

Json cmd_quantify(const RunConfig& cfg);
Json cmd_depth(const RunConfig& cfg);
Json cmd_oracle(const RunConfig& cfg);
Json cmd_fit_phonons(const RunConfig& cfg);
/// Sweep table as CSV text, rows ordered by parameter value then layers.
std::string cmd_sweep(const RunConfig& cfg);
std::string cmd_export_density(const RunConfig& cfg);

/// Process exit code for an error class: 2 config, 3 numeric, 4 solver.
int exit_code_for(Errc code);

}  // namespace subplanck::cli
