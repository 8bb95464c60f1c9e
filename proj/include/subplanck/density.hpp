#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace subplanck {

/// Probability density on a uniform grid, stored as log values.
///
/// Node i sits at x_min + i * x_step. Entries of -inf are exact zeros. The
/// density is normalised on construction so that the trapezoid integral of
/// exp(log_p - norm_log) is one.
class GridDensity {
 public:
  static constexpr std::size_t kMinNodes = 64;

  GridDensity(double x_min, double x_step, std::vector<double> log_p, std::string meta = {});

  std::size_t size() const noexcept { return log_p_.size(); }
  double x_min() const noexcept { return x_min_; }
  double x_step() const noexcept { return x_step_; }
  double x_max() const noexcept { return x_min_ + x_step_ * static_cast<double>(size() - 1); }
  double x(std::size_t i) const noexcept { return x_min_ + x_step_ * static_cast<double>(i); }
  double norm_log() const noexcept { return norm_log_; }
  const std::string& meta() const noexcept { return meta_; }

  /// Unnormalised log values as stored.
  std::span<const double> log_values() const noexcept { return log_p_; }
  /// Normalised log density at node i.
  double log_value(std::size_t i) const noexcept { return log_p_[i] - norm_log_; }
  double value(std::size_t i) const;
  std::vector<double> values() const;
  std::vector<double> abscissae() const;

  /// Linear interpolation of the normalised log density; -inf outside the grid.
  double log_density_at(double x) const;
  double density_at(double x) const;

  /// Same density translated by c (exact shift of the grid origin).
  GridDensity shifted(double c) const;
  GridDensity with_meta(std::string meta) const;

  /// True when both edge values are at most ratio times the maximum.
  bool edges_decayed(double ratio = 1e-12) const;

 private:
  double x_min_;
  double x_step_;
  std::vector<double> log_p_;
  double norm_log_ = 0.0;
  std::string meta_;
};

struct MaximumLocation {
  double a = 0.0;
  double value = 0.0;
  double curvature = 0.0;
  bool is_global = false;
};

struct QuarticFit {
  double value = 0.0;
  double slope = 0.0;
  double curvature = 0.0;
};

GridDensity make_grid_density(std::span<const double> xs, std::span<const double> ps,
                              std::string meta = "samples");

double mean(const GridDensity& d);
double variance(const GridDensity& d);

/// Trapezoid cumulative distribution at the grid nodes (last entry is 1).
std::vector<double> cumulative(const GridDensity& d);

/// All discrete local maxima, refined by a parabola through the log values of
/// each peak node and its neighbours. Sorted by value, largest first.
std::vector<MaximumLocation> global_maxima(const GridDensity& d, double rel_tol, int window = 8);

/// Among the global maxima, the one with the smallest nonnegative abscissa,
/// or the one closest to zero when all are negative.
MaximumLocation select_tie_break(const std::vector<MaximumLocation>& maxima);

/// Least-squares quartic through y[center-window .. center+window] with
/// spacing h, evaluated at offset t from the centre node.
QuarticFit local_quartic_fit(std::span<const double> y, double h, std::size_t center, int window,
                             double t);

/// Quartic fit of the normalised density values centred at the node nearest a.
QuarticFit quartic_fit_at(const GridDensity& d, double a, int window = 8);

/// d''(a) from a quartic fit of the density values.
double curvature_at(const GridDensity& d, double a, int window = 8);

/// d''(a) / d(a) from a quartic fit of the log density. Accurate on coarse
/// grids where the density itself is far from polynomial over the window.
double relative_curvature_at(const GridDensity& d, double a, int window = 8);

/// Convolution with a zero-mean Gaussian of the given variance (FFT based).
/// The grid is padded so the result keeps decayed edges.
GridDensity convolve_gaussian(const GridDensity& d, double var);

/// Density proportional to d(x / sqrt(M))^M, computed in the log domain.
GridDensity pow_scale(const GridDensity& d, long long M);

}  // namespace subplanck
