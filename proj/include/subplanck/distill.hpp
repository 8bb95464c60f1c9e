#pragma once

#include <utility>

#include "subplanck/density.hpp"

namespace subplanck {

/// Gaussian factor applied by the ground-state filter. Derived uses
/// exp(-(1-T) x^2); Literal uses exp(-sqrt(1-T) x^2).
enum class FilterExponent { Derived, Literal };

struct DistillConfig {
  int layers = 4;                   // N, copies M = 2^N
  double conditioning_xbar = 0.0;   // nonzero runs every layer non-universally (N <= 4)
  int nonuniversal_prelayers = 0;   // 0 or 1
  double prelayer_xbar = 0.0;
  double max_rel_tol = 1e-3;
  int transmissivity_grid = 64;
  FilterExponent filter_exponent = FilterExponent::Derived;
  int curvature_window = 8;
  int max_layers = 12;

  bool universal() const { return conditioning_xbar == 0.0 && nonuniversal_prelayers == 0; }
  long long copies() const { return 1LL << layers; }
  void validate() const;
};

struct DistillReport {
  GridDensity output;
  MaximumLocation maximum;
  double T_opt = 1.0;
  double min_variance = 0.0;
  double squeezing_db = 0.0;
  double asymptotic_variance = 0.0;
  double efficiency = 0.0;
  bool is_squeezed = false;
  bool super_asymptotic = false;  // efficiency above one
  int layers = 0;
  long long copies = 1;
};

struct FilterOptimum {
  double T_opt = 1.0;
  double min_variance = 0.0;
};

GridDensity universal_distill(const GridDensity& P, int N);

/// Two copies conditioned on the difference port reading xbar.
GridDensity nonuniversal_layer(const GridDensity& P, double xbar);

/// Product over all 2^N binary conditioning sequences (N <= 4).
GridDensity general_distill(const GridDensity& P, int N, double xbar);

/// Shifts the tie-break global maximum to the origin.
std::pair<GridDensity, MaximumLocation> displace_to_origin(const GridDensity& Q, double rel_tol,
                                                           int window = 8);

GridDensity filter_with_ground_state(const GridDensity& Qd, double T,
                                     FilterExponent exponent = FilterExponent::Derived);

FilterOptimum optimize_filter(const GridDensity& Qd, const DistillConfig& cfg);

/// P(a) / |P''(a)| at the tie-break global maximum.
double asymptotic_variance(const GridDensity& P, double rel_tol, int window = 8);

double efficiency(double asym, double achieved);

double squeezing_db(double variance);

DistillReport quantify(const GridDensity& P, const DistillConfig& cfg);

}  // namespace subplanck
