#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "subplanck/depth.hpp"
#include "subplanck/distill.hpp"
#include "subplanck/oracle.hpp"
#include "subplanck/phonon.hpp"
#include "subplanck/states.hpp"

namespace subplanck::cli {

using Json = nlohmann::ordered_json;

/// Serialises with fixed key order and 12 significant digits; non-finite numbers become null.
std::string to_json_text(const Json& j);

Json to_json(const DistillReport& r);
Json to_json(const DepthResult& r);
Json to_json(const ProtocolRun& r, double ks);
Json to_json(const PhononDistribution& d);
Json to_json(const StateSpec& s);

StateSpec state_from_json(const Json& j);
/// Shorthand such as "fock:10", "cat:2", "gkp:0.3,3,1.7725", "cubic:1", "mixture:0.1,0.9".
StateSpec state_from_shorthand(const std::string& text);
DistillConfig pipeline_from_json(const Json& j, DistillConfig base = {});
GridSpec grid_from_json(const Json& j);
RabiModel rabi_model_from_json(const Json& j);

/// Two columns x,density; a non-numeric first line is treated as a header.
GridDensity read_density_csv(const std::string& path);
void write_density_csv(std::ostream& os, const GridDensity& d);

/// Two columns t_seconds,p_excited.
std::pair<std::vector<double>, std::vector<double>> read_rabi_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace subplanck::cli
