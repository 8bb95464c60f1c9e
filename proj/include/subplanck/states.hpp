#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subplanck/density.hpp"

namespace subplanck {

struct GridSpec {
  int nodes = 4096;
  std::optional<double> lo;
  std::optional<double> hi;

  static GridSpec symmetric(double extent, int nodes = 4096) { return GridSpec{nodes, -extent, extent}; }
};

struct Fock {
  int n = 0;
};

struct FockMixture {
  std::vector<double> populations;
};

struct Cat {
  double alpha = 1.0;
};

/// Peak weights of the approximate GKP comb. Position weights are
/// exp(-delta^2 c^2) at peak centre c; Literal weights are exp(-4 pi delta^2 s^2).
/// Both coincide at the default spacing.
enum class GkpEnvelope { Position, Literal };

struct Gkp {
  double delta = 0.3;
  int peaks = 3;
  double spacing = 1.7724538509055159;  // sqrt(pi)
  GkpEnvelope envelope = GkpEnvelope::Position;
};

struct CubicPhase {
  double gamma = 1.0;
};

using StateKind = std::variant<Fock, FockMixture, Cat, Gkp, CubicPhase>;

struct StateSpec {
  StateKind kind = Fock{};
  double thermal_nbar = 0.0;
  /// 0 selects the variable the catalog formula is written in; pi/2 its conjugate.
  double quadrature_angle = 0.0;
};

std::string describe(const StateSpec& spec);

/// Default [lo, hi] range for the catalog state before thermalisation.
std::pair<double, double> default_range(const StateSpec& spec);

GridDensity fock_density(int n, const GridSpec& grid = {});
GridDensity fock_mixture_density(const std::vector<double>& populations, const GridSpec& grid = {});
GridDensity cat_momentum_density(double alpha, const GridSpec& grid = {});
GridDensity cat_position_density(double alpha, const GridSpec& grid = {});
GridDensity gkp_position_density(double delta, int peaks, double spacing, const GridSpec& grid = {},
                                 GkpEnvelope envelope = GkpEnvelope::Position);
GridDensity cubic_momentum_density(double gamma, const GridSpec& grid = {});

/// Catalog constructor, quadrature selection, then thermalisation.
GridDensity realize(const StateSpec& spec, const GridSpec& grid = {});

/// Checks population vectors: entries >= 0 and sum 1 within 1e-9.
void validate_populations(const std::vector<double>& populations);

}  // namespace subplanck
