#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace subplanck {

struct PhononDistribution {
  std::vector<double> populations;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> fano;  // absent when the mean is zero
  std::optional<double> snr;   // absent when the variance is zero
  // fit diagnostics, zero unless produced by fit_populations
  double residual_norm = 0.0;
  double rms_residual = 0.0;
  double condition_number = 0.0;
};

PhononDistribution phonon_stats(const std::vector<double>& populations);

enum class RabiScaling { Sqrt, LambDicke };

struct RabiModel {
  double omega01 = 1.0;        // rad/s
  double gamma_decay = 0.0;    // 1/s
  int n_max = 1;
  RabiScaling scaling = RabiScaling::Sqrt;
  double lamb_dicke = 0.063;
  double decay_exponent = 0.7;

  void validate() const;
  /// Omega_{n,n+1}.
  double rabi_frequency(int n) const;
};

/// Excited-state probability sum_n P_n sin^2(Omega_{n,n+1} t / 2) exp(-gamma t (n+1)^k).
double rabi_signal(const std::vector<double>& populations, const RabiModel& model, double t);

struct FitOptions {
  int restarts = 8;
  std::uint64_t seed = 1;
  double max_rms = 0.05;
  int max_iterations = 400;
};

/// Simplex-constrained least squares for the populations 0..n_max.
PhononDistribution fit_populations(std::span<const double> times, std::span<const double> pe,
                                   const RabiModel& model, const FitOptions& options = {});

}  // namespace subplanck
