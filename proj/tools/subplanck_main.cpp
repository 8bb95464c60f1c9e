// Command-line front end: quantify, sweep, depth, oracle, fit-phonons, export-density.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "subplanck/cli/commands.hpp"
#include "subplanck/error.hpp"

namespace {

using namespace subplanck;
using namespace subplanck::cli;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> grid_nodes;
  std::optional<double> grid_extent;
  std::string state;
  std::optional<int> layers;
  std::string witness;
  bool finite = false;
  std::optional<double> eps;
  std::string param;
  std::vector<double> values;
  std::vector<int> sweep_layers;
  std::optional<int> workers;
  bool depth_column = false;
};

RunConfig build_config(const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_run_config(f.config);
  if (!f.state.empty()) cfg.input = state_from_shorthand(f.state);
  if (f.seed) cfg.seed = *f.seed;
  if (f.grid_nodes) cfg.grid.nodes = *f.grid_nodes;
  if (f.grid_extent) {
    if (!(*f.grid_extent > 0.0)) throw Error(Errc::InvalidConfig, "--grid-extent must be positive");
    cfg.grid.lo = -*f.grid_extent;
    cfg.grid.hi = *f.grid_extent;
  }
  if (f.layers) cfg.pipeline.layers = *f.layers;
  if (!f.witness.empty()) cfg.depth.witness = f.witness;
  if (f.finite) cfg.depth.asymptotic = false;
  if (f.eps) cfg.oracle.eps = *f.eps;
  if (!f.param.empty()) cfg.sweep.param = f.param;
  if (!f.values.empty()) cfg.sweep.values = f.values;
  if (!f.sweep_layers.empty()) cfg.sweep.layers = f.sweep_layers;
  if (f.workers) cfg.sweep.workers = *f.workers;
  if (f.depth_column) cfg.sweep.depth = true;
  return cfg;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) std::cout << text;
  else write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-Planck structure quantification by distillable squeezing.\n"
               "Units: quadrature variance of the oscillator ground state is 1/2."};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "Run configuration (JSON)");
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--out", f.out, "Output file (default: stdout)");
  app.add_option("--grid-nodes", f.grid_nodes, "Grid node count");
  app.add_option("--grid-extent", f.grid_extent, "Symmetric grid half-width");
  app.add_option("--state", f.state, "State shorthand (fock:10, cat:2, gkp:0.3,3, cubic:1, mixture:...) or JSON");
  app.add_option("--layers", f.layers, "Distillation layers N (M = 2^N copies)");

  auto* quantify = app.add_subcommand("quantify", "Distillable squeezing report");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep table (CSV)");
  sweep->add_option("--param", f.param, "fock_n | layers_N | nbar | alpha | gamma | spacing");
  sweep->add_option("--values", f.values, "Sweep values")->delimiter(',');
  sweep->add_option("--sweep-layers", f.sweep_layers, "Layer counts per value")->delimiter(',');
  sweep->add_option("--workers", f.workers, "Concurrent rows");
  sweep->add_flag("--depth", f.depth_column, "Also solve the thermalisation depth per row");
  auto* depth = app.add_subcommand("depth", "Thermalisation depth");
  depth->add_option("--witness", f.witness, "subplanck | wigner | fano");
  depth->add_flag("--finite", f.finite, "Use the finite-copy pipeline instead of the asymptotic estimate");
  auto* oracle = app.add_subcommand("oracle", "Monte Carlo protocol check");
  oracle->add_option("--eps", f.eps, "Post-selection window");
  auto* fit = app.add_subcommand("fit-phonons", "Fock populations from a Rabi trace");
  auto* exportd = app.add_subcommand("export-density", "Write the input density as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = build_config(f);
    const std::string out = !f.out.empty() ? f.out : cfg.outputs.report_json;
    if (quantify->parsed()) emit(to_json_text(cmd_quantify(cfg)), out);
    else if (depth->parsed()) emit(to_json_text(cmd_depth(cfg)), out);
    else if (oracle->parsed()) emit(to_json_text(cmd_oracle(cfg)), out);
    else if (fit->parsed()) emit(to_json_text(cmd_fit_phonons(cfg)), out);
    else if (sweep->parsed()) emit(cmd_sweep(cfg), !f.out.empty() ? f.out : cfg.outputs.table_csv);
    else if (exportd->parsed()) emit(cmd_export_density(cfg), !f.out.empty() ? f.out : cfg.outputs.table_csv);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
