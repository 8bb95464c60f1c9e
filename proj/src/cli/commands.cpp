#include "subplanck/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "subplanck/error.hpp"

namespace subplanck::cli {

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("field '") + key + "': " + e.what());
  }
}

const StateSpec& require_state(const RunConfig& cfg, const char* what) {
  if (const auto* s = std::get_if<StateSpec>(&cfg.input)) return *s;
  throw Error(Errc::InvalidConfig, std::string(what) + " needs a state input");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

}  // namespace

void RunConfig::validate() const {
  if (std::holds_alternative<std::monostate>(input)) throw Error(Errc::InvalidConfig, "no input source configured");
  pipeline.validate();
  if (!(oracle.eps > 0.0)) throw Error(Errc::InvalidConfig, "oracle eps must be positive");
  if (oracle.max_batches < 1 || oracle.draws_per_batch < 2) throw Error(Errc::InvalidConfig, "oracle batch settings invalid");
  if (sweep.workers < 1) throw Error(Errc::InvalidConfig, "sweep workers must be positive");
  std::set<std::string> paths;
  for (const auto* p : {&outputs.report_json, &outputs.table_csv, &outputs.samples_csv}) {
    if (p->empty()) continue;
    if (!paths.insert(*p).second) throw Error(Errc::InvalidConfig, "output paths must be distinct");
  }
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "config must be a JSON object");
  RunConfig c;
  if (j.contains("input")) {
    const Json& in = j["input"];
    if (!in.is_object()) throw Error(Errc::InvalidConfig, "input must be an object");
    int sources = 0;
    if (in.contains("state")) {
      c.input = state_from_json(in["state"]);
      ++sources;
    }
    if (in.contains("density_csv")) {
      c.input = DensityCsvInput{get_or<std::string>(in, "density_csv", "")};
      ++sources;
    }
    if (in.contains("rabi_csv")) {
      if (!in.contains("rabi_model")) throw Error(Errc::InvalidConfig, "rabi_csv needs rabi_model");
      c.input = RabiCsvInput{get_or<std::string>(in, "rabi_csv", ""), rabi_model_from_json(in["rabi_model"])};
      ++sources;
    }
    if (sources != 1) throw Error(Errc::InvalidConfig, "input needs exactly one of state, density_csv, rabi_csv");
  }
  if (j.contains("pipeline")) c.pipeline = pipeline_from_json(j["pipeline"]);
  if (j.contains("grid")) c.grid = grid_from_json(j["grid"]);
  if (j.contains("oracle")) {
    const Json& o = j["oracle"];
    c.oracle.eps = get_or(o, "eps", c.oracle.eps);
    c.oracle.xbar = get_or(o, "xbar", c.oracle.xbar);
    c.oracle.target_accepted = get_or(o, "target_accepted", c.oracle.target_accepted);
    c.oracle.max_batches = get_or(o, "max_batches", c.oracle.max_batches);
    c.oracle.draws_per_batch = get_or(o, "draws_per_batch", c.oracle.draws_per_batch);
  }
  if (j.contains("depth")) {
    const Json& d = j["depth"];
    c.depth.witness = get_or(d, "witness", c.depth.witness);
    c.depth.asymptotic = get_or(d, "asymptotic", c.depth.asymptotic);
  }
  if (j.contains("sweep")) {
    const Json& s = j["sweep"];
    c.sweep.param = get_or(s, "param", c.sweep.param);
    c.sweep.values = get_or(s, "values", c.sweep.values);
    c.sweep.layers = get_or(s, "layers", c.sweep.layers);
    c.sweep.depth = get_or(s, "depth", c.sweep.depth);
    c.sweep.workers = get_or(s, "workers", c.sweep.workers);
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    c.outputs.report_json = get_or<std::string>(o, "report_json", "");
    c.outputs.table_csv = get_or<std::string>(o, "table_csv", "");
    c.outputs.samples_csv = get_or<std::string>(o, "samples_csv", "");
  }
  c.seed = get_or(j, "seed", c.seed);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return run_config_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

GridDensity resolve_input(const RunConfig& cfg) {
  if (const auto* s = std::get_if<StateSpec>(&cfg.input)) return realize(*s, cfg.grid);
  if (const auto* d = std::get_if<DensityCsvInput>(&cfg.input)) return read_density_csv(d->path);
  if (const auto* r = std::get_if<RabiCsvInput>(&cfg.input)) {
    auto [ts, ps] = read_rabi_csv(r->path);
    FitOptions fo;
    fo.seed = cfg.seed;
    const PhononDistribution pd = fit_populations(ts, ps, r->model, fo);
    return fock_mixture_density(pd.populations, cfg.grid);
  }
  throw Error(Errc::InvalidConfig, "no input source configured");
}

Json cmd_quantify(const RunConfig& cfg) {
  cfg.validate();
  const DistillReport r = quantify(resolve_input(cfg), cfg.pipeline);
  if (r.super_asymptotic)
    std::cerr << "warning: efficiency " << r.efficiency << " exceeds 1 (finite-copy variance below the asymptotic value)\n";
  return to_json(r);
}

Json cmd_depth(const RunConfig& cfg) {
  cfg.validate();
  const StateSpec& s = require_state(cfg, "depth");
  const std::string& w = cfg.depth.witness;
  if (w == "subplanck") {
    DepthOptions o;
    o.asymptotic = cfg.depth.asymptotic;
    o.grid = cfg.grid;
    return to_json(subplanck_depth(s, cfg.pipeline, o));
  }
  const auto* f = std::get_if<Fock>(&s.kind);
  if (!f) throw Error(Errc::InvalidConfig, "wigner and fano depths need a Fock state");
  if (w == "wigner") return to_json(wigner_negativity_depth(f->n));
  if (w == "fano") return to_json(fano_depth(f->n));
  throw Error(Errc::InvalidConfig, "witness must be subplanck, wigner or fano");
}

Json cmd_oracle(const RunConfig& cfg) {
  cfg.validate();
  const int N = cfg.pipeline.layers;
  if (N > 4) throw Error(Errc::InvalidArgument, "the protocol simulation supports N <= 4");
  const GridDensity P = resolve_input(cfg);
  ProtocolOptions po;
  po.draws_per_batch = cfg.oracle.draws_per_batch;
  const ProtocolRun run = simulate_until(P, N, cfg.oracle.xbar, cfg.oracle.eps, cfg.oracle.target_accepted, cfg.seed,
                                         cfg.oracle.max_batches, po);
  const GridDensity Q = cfg.oracle.xbar != 0.0 ? general_distill(P, N, cfg.oracle.xbar) : universal_distill(P, N);
  const double ks = ks_distance(run.samples_out, Q);
  if (!cfg.outputs.samples_csv.empty()) {
    std::string text = "x\n";
    for (double v : run.samples_out) text += fmt(v) + "\n";
    write_text_file(cfg.outputs.samples_csv, text);
  }
  return to_json(run, ks);
}

Json cmd_fit_phonons(const RunConfig& cfg) {
  cfg.validate();
  const auto* r = std::get_if<RabiCsvInput>(&cfg.input);
  if (!r) throw Error(Errc::InvalidConfig, "fit-phonons needs a rabi_csv input");
  auto [ts, ps] = read_rabi_csv(r->path);
  FitOptions fo;
  fo.seed = cfg.seed;
  return to_json(fit_populations(ts, ps, r->model, fo));
}

std::string cmd_sweep(const RunConfig& cfg) {
  cfg.validate();
  const StateSpec& base = require_state(cfg, "sweep");
  const SweepSettings& sw = cfg.sweep;
  static const std::set<std::string> known{"fock_n", "layers_N", "nbar", "alpha", "gamma", "spacing"};
  if (!known.count(sw.param)) throw Error(Errc::InvalidConfig, "unknown sweep parameter '" + sw.param + "'");
  if (sw.values.empty()) throw Error(Errc::InvalidConfig, "sweep needs at least one value");

  struct Row {
    double value;
    int layers;
  };
  std::vector<double> values = sw.values;
  std::sort(values.begin(), values.end());
  std::vector<Row> rows;
  for (double v : values) {
    if (sw.param == "layers_N") {
      rows.push_back({v, static_cast<int>(v)});
    } else {
      const std::vector<int> ls = sw.layers.empty() ? std::vector<int>{cfg.pipeline.layers} : sw.layers;
      for (int l : ls) rows.push_back({v, l});
    }
  }

  auto run_row = [&](const Row& row) -> std::string {
    std::string head = sw.param + "," + fmt(row.value) + "," + std::to_string(row.layers) + ",";
    try {
      StateSpec s = base;
      DistillConfig pc = cfg.pipeline;
      pc.layers = row.layers;
      auto mismatch = [&](const char* kind) {
        throw Error(Errc::InvalidConfig, sw.param + " sweep needs a " + kind + " state");
      };
      if (sw.param == "fock_n") {
        if (!std::holds_alternative<Fock>(s.kind)) mismatch("fock");
        s.kind = Fock{static_cast<int>(row.value)};
      } else if (sw.param == "nbar") {
        s.thermal_nbar = row.value;
      } else if (sw.param == "alpha") {
        auto* c = std::get_if<Cat>(&s.kind);
        if (!c) mismatch("cat");
        c->alpha = row.value;
      } else if (sw.param == "gamma") {
        auto* c = std::get_if<CubicPhase>(&s.kind);
        if (!c) mismatch("cubic");
        c->gamma = row.value;
      } else if (sw.param == "spacing") {
        auto* g = std::get_if<Gkp>(&s.kind);
        if (!g) mismatch("gkp");
        g->spacing = row.value;
      }
      const DistillReport r = quantify(realize(s, cfg.grid), pc);
      std::string depth;
      if (sw.depth) {
        DepthOptions o;
        o.asymptotic = cfg.depth.asymptotic;
        o.grid = cfg.grid;
        StateSpec s0 = s;
        s0.thermal_nbar = 0.0;
        depth = fmt(subplanck_depth(s0, pc, o).nbar_star);
      }
      return head + std::to_string(r.copies) + "," + fmt(r.min_variance) + "," + fmt(r.squeezing_db) + "," +
             fmt(r.asymptotic_variance) + "," + fmt(r.efficiency) + "," + fmt(r.T_opt) + "," +
             (r.is_squeezed ? "true" : "false") + "," + depth + ",";
    } catch (const std::exception& e) {
      const long long copies = row.layers >= 0 && row.layers < 63 ? (1LL << row.layers) : 0;
      return head + std::to_string(copies) + ",,,,,,,," + csv_escape(e.what());
    }
  };

  std::vector<std::string> out(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) out[i] = run_row(rows[i]);
  };
  const int nw = std::min<int>(sw.workers, static_cast<int>(rows.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string text =
      "param,value,layers,copies,min_variance,squeezing_db,asymptotic_variance,efficiency,T_opt,is_squeezed,depth_nbar,"
      "error\n";
  for (const auto& line : out) text += line + "\n";
  return text;
}

std::string cmd_export_density(const RunConfig& cfg) {
  cfg.validate();
  std::ostringstream os;
  write_density_csv(os, resolve_input(cfg));
  return os.str();
}

int exit_code_for(Errc code) {
  switch (classify(code)) {
    case ErrorClass::Config: return 2;
    case ErrorClass::Numeric: return 3;
    case ErrorClass::Solver: return 4;
  }
  return 3;
}

}  // namespace subplanck::cli
