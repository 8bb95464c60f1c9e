#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "subplanck/density.hpp"

namespace subplanck {

struct ProtocolRun {
  std::vector<double> samples_out;
  std::uint64_t accepted = 0;
  std::uint64_t attempted = 0;  // raw draws / 2^N
  double window_eps = 0.0;
  std::uint64_t seed = 0;
  int layers = 0;
  int batches = 0;

  double acceptance_rate() const {
    return attempted ? static_cast<double>(accepted) / static_cast<double>(attempted) : 0.0;
  }
};

struct ProtocolOptions {
  std::uint64_t draws_per_batch = std::uint64_t{1} << 22;
};

/// splitmix64 step, used to derive independent per-batch seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Inverse-CDF sampling (mt19937_64, 53-bit uniforms) from the trapezoid CDF.
std::vector<double> sample_density(const GridDensity& P, std::size_t count, std::uint64_t seed);

/// Runs `batches` independent batches of the interference tree. Within a batch
/// the survivors of one layer are paired at the next; the difference port must
/// read xbar within eps at every layer.
ProtocolRun simulate_protocol(const GridDensity& P, int N, double xbar, double eps, int batches, std::uint64_t seed,
                              const ProtocolOptions& options = {});

/// Keeps adding batches until at least target_accepted samples survive.
ProtocolRun simulate_until(const GridDensity& P, int N, double xbar, double eps, std::uint64_t target_accepted,
                           std::uint64_t seed, int max_batches = 4096, const ProtocolOptions& options = {});

/// Kolmogorov-Smirnov statistic against the density's trapezoid CDF.
double ks_distance(std::span<const double> samples, const GridDensity& P);

}  // namespace subplanck
