#include "subplanck/cli/formats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subplanck/error.hpp"

namespace subplanck::cli {

namespace {

void emit(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        emit(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        emit(out, j[i], indent + 1);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

double num(const Json& j, const char* key, double fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_number()) throw Error(Errc::InvalidConfig, std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

int integer(const Json& j, const char* key, int fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_number_integer()) throw Error(Errc::InvalidConfig, std::string("field '") + key + "' must be an integer");
  return j[key].get<int>();
}

std::string text(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_string()) throw Error(Errc::InvalidConfig, std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "not a number: '" + item + "'");
    }
  }
  return out;
}

// Parses "a,b" rows; returns false for a line that is not numeric.
bool parse_row(const std::string& line, double& a, double& b) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string s1 = line.substr(0, comma), s2 = line.substr(comma + 1);
    a = std::stod(s1, &u1);
    b = std::stod(s2, &u2);
    return s1.find_first_not_of(" \t\r", u1) == std::string::npos && s2.find_first_not_of(" \t\r", u2) == std::string::npos;
  } catch (const std::exception&) {
    return false;
  }
}

std::pair<std::vector<double>, std::vector<double>> read_two_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double a, b;
    if (!parse_row(line, a, b)) {
      if (lineno == 1) continue;  // header
      throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": expected two numeric columns");
    }
    xs.push_back(a);
    ys.push_back(b);
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace

std::string to_json_text(const Json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

Json to_json(const DistillReport& r) {
  Json j;
  j["min_variance"] = r.min_variance;
  j["squeezing_db"] = r.squeezing_db;
  j["T_opt"] = r.T_opt;
  j["maximum_a"] = r.maximum.a;
  j["asymptotic_variance"] = r.asymptotic_variance;
  j["efficiency"] = r.efficiency;
  j["is_squeezed"] = r.is_squeezed;
  j["layers"] = r.layers;
  j["copies"] = r.copies;
  return j;
}

Json to_json(const DepthResult& r) {
  Json j;
  j["witness"] = r.witness_label();
  j["nbar_star"] = r.nbar_star;
  j["bracket_lo"] = r.bracket_lo;
  j["bracket_hi"] = r.bracket_hi;
  j["iterations"] = r.iterations;
  return j;
}

Json to_json(const ProtocolRun& r, double ks) {
  Json j;
  j["accepted"] = r.accepted;
  j["attempted"] = r.attempted;
  j["acceptance_rate"] = r.acceptance_rate();
  j["ks_vs_deterministic"] = ks;
  j["window_eps"] = r.window_eps;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const PhononDistribution& d) {
  Json j;
  j["populations"] = d.populations;
  j["mean"] = d.mean;
  j["variance"] = d.variance;
  j["fano"] = d.fano ? Json(*d.fano) : Json(nullptr);
  j["snr"] = d.snr ? Json(*d.snr) : Json(nullptr);
  j["residual_norm"] = d.residual_norm;
  j["rms_residual"] = d.rms_residual;
  j["condition_number"] = d.condition_number;
  return j;
}

Json to_json(const StateSpec& s) {
  Json j;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Fock>) {
          j["kind"] = "fock";
          j["n"] = k.n;
        } else if constexpr (std::is_same_v<K, FockMixture>) {
          j["kind"] = "mixture";
          j["populations"] = k.populations;
        } else if constexpr (std::is_same_v<K, Cat>) {
          j["kind"] = "cat";
          j["alpha"] = k.alpha;
        } else if constexpr (std::is_same_v<K, Gkp>) {
          j["kind"] = "gkp";
          j["delta"] = k.delta;
          j["peaks"] = k.peaks;
          j["spacing"] = k.spacing;
          j["envelope"] = k.envelope == GkpEnvelope::Position ? "position" : "literal";
        } else {
          j["kind"] = "cubic";
          j["gamma"] = k.gamma;
        }
      },
      s.kind);
  j["nbar"] = s.thermal_nbar;
  j["angle"] = s.quadrature_angle;
  return j;
}

StateSpec state_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "state must be an object");
  const std::string kind = text(j, "kind", "");
  StateSpec s;
  if (kind == "fock") {
    s.kind = Fock{integer(j, "n", 0)};
  } else if (kind == "mixture") {
    if (!j.contains("populations") || !j["populations"].is_array())
      throw Error(Errc::InvalidConfig, "mixture needs a populations array");
    s.kind = FockMixture{j["populations"].get<std::vector<double>>()};
  } else if (kind == "cat") {
    s.kind = Cat{num(j, "alpha", 1.0)};
  } else if (kind == "gkp") {
    Gkp g;
    g.delta = num(j, "delta", g.delta);
    g.peaks = integer(j, "peaks", g.peaks);
    g.spacing = num(j, "spacing", g.spacing);
    const std::string env = text(j, "envelope", "position");
    if (env != "position" && env != "literal") throw Error(Errc::InvalidConfig, "envelope must be position or literal");
    g.envelope = env == "position" ? GkpEnvelope::Position : GkpEnvelope::Literal;
    s.kind = g;
  } else if (kind == "cubic") {
    s.kind = CubicPhase{num(j, "gamma", 1.0)};
  } else {
    throw Error(Errc::InvalidConfig, "unknown state kind '" + kind + "'");
  }
  s.thermal_nbar = num(j, "nbar", 0.0);
  s.quadrature_angle = num(j, "angle", 0.0);
  return s;
}

StateSpec state_from_shorthand(const std::string& t) {
  if (!t.empty() && t.front() == '{') {
    try {
      return state_from_json(Json::parse(t));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, e.what());
    }
  }
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  const std::vector<double> v = colon == std::string::npos ? std::vector<double>{} : split_numbers(t.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (v.size() < k) throw Error(Errc::InvalidConfig, "state shorthand '" + t + "' has too few parameters");
  };
  StateSpec s;
  if (kind == "fock") {
    need(1);
    s.kind = Fock{static_cast<int>(v[0])};
  } else if (kind == "mixture") {
    need(1);
    s.kind = FockMixture{v};
  } else if (kind == "cat") {
    need(1);
    s.kind = Cat{v[0]};
  } else if (kind == "gkp") {
    need(2);
    Gkp g;
    g.delta = v[0];
    g.peaks = static_cast<int>(v[1]);
    if (v.size() > 2) g.spacing = v[2];
    s.kind = g;
  } else if (kind == "cubic") {
    need(1);
    s.kind = CubicPhase{v[0]};
  } else {
    throw Error(Errc::InvalidConfig, "unknown state kind '" + kind + "'");
  }
  return s;
}

DistillConfig pipeline_from_json(const Json& j, DistillConfig c) {
  if (j.is_null()) return c;
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "pipeline must be an object");
  c.layers = integer(j, "layers", c.layers);
  c.conditioning_xbar = num(j, "conditioning_xbar", c.conditioning_xbar);
  c.nonuniversal_prelayers = integer(j, "nonuniversal_prelayers", c.nonuniversal_prelayers);
  c.prelayer_xbar = num(j, "prelayer_xbar", c.prelayer_xbar);
  c.max_rel_tol = num(j, "max_rel_tol", c.max_rel_tol);
  c.transmissivity_grid = integer(j, "transmissivity_grid", c.transmissivity_grid);
  c.curvature_window = integer(j, "curvature_window", c.curvature_window);
  c.max_layers = integer(j, "max_layers", c.max_layers);
  const std::string fe = text(j, "filter_exponent", c.filter_exponent == FilterExponent::Derived ? "derived" : "literal");
  if (fe != "derived" && fe != "literal") throw Error(Errc::InvalidConfig, "filter_exponent must be derived or literal");
  c.filter_exponent = fe == "derived" ? FilterExponent::Derived : FilterExponent::Literal;
  c.validate();
  return c;
}

GridSpec grid_from_json(const Json& j) {
  GridSpec g;
  if (j.is_null()) return g;
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "grid must be an object");
  g.nodes = integer(j, "nodes", g.nodes);
  if (j.contains("extent") && !j["extent"].is_null()) {
    const double L = num(j, "extent", 0.0);
    if (!(L > 0.0)) throw Error(Errc::InvalidConfig, "grid extent must be positive");
    g.lo = -L;
    g.hi = L;
  }
  if (j.contains("lo") && !j["lo"].is_null()) g.lo = num(j, "lo", 0.0);
  if (j.contains("hi") && !j["hi"].is_null()) g.hi = num(j, "hi", 0.0);
  if (g.nodes < 64) throw Error(Errc::InvalidConfig, "grid needs at least 64 nodes");
  return g;
}

RabiModel rabi_model_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "rabi_model must be an object");
  RabiModel m;
  m.omega01 = num(j, "omega01", m.omega01);
  m.gamma_decay = num(j, "gamma_decay", m.gamma_decay);
  m.n_max = integer(j, "n_max", m.n_max);
  const std::string sc = text(j, "scaling", "sqrt");
  if (sc != "sqrt" && sc != "lamb_dicke") throw Error(Errc::InvalidConfig, "scaling must be sqrt or lamb_dicke");
  m.scaling = sc == "sqrt" ? RabiScaling::Sqrt : RabiScaling::LambDicke;
  m.lamb_dicke = num(j, "lamb_dicke", m.lamb_dicke);
  m.decay_exponent = num(j, "decay_exponent", m.decay_exponent);
  try {
    m.validate();
  } catch (const Error& e) {
    throw Error(Errc::InvalidConfig, e.what());
  }
  return m;
}

GridDensity read_density_csv(const std::string& path) {
  auto [xs, ps] = read_two_columns(path);
  return make_grid_density(xs, ps, "csv:" + path);
}

void write_density_csv(std::ostream& os, const GridDensity& d) {
  os << "x,density\n";
  char buf[96];
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", d.x(i), d.value(i));
    os << buf;
  }
}

std::pair<std::vector<double>, std::vector<double>> read_rabi_csv(const std::string& path) {
  return read_two_columns(path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

}  // namespace subplanck::cli
