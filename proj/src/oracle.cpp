#include "subplanck/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "subplanck/error.hpp"

namespace subplanck {

namespace {

// Inverse of the piecewise-linear trapezoid CDF with a guide table.
class InverseCdf {
 public:
  explicit InverseCdf(const GridDensity& P) : cdf_(cumulative(P)), x0_(P.x_min()), h_(P.x_step()) {
    const std::size_t n = cdf_.size();
    guide_.resize(n);
    std::size_t j = 0;
    for (std::size_t g = 0; g < n; ++g) {
      const double u = static_cast<double>(g) / static_cast<double>(n);
      while (j + 1 < n && cdf_[j + 1] <= u) ++j;
      guide_[g] = j;
    }
  }

  double operator()(double u) const {
    const std::size_t n = cdf_.size();
    std::size_t j = guide_[std::min(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1)];
    while (j + 2 < n && cdf_[j + 1] <= u) ++j;
    const double lo = cdf_[j], hi = cdf_[j + 1];
    const double t = hi > lo ? (u - lo) / (hi - lo) : 0.5;
    return x0_ + h_ * (static_cast<double>(j) + t);
  }

 private:
  std::vector<double> cdf_;
  std::vector<std::size_t> guide_;
  double x0_, h_;
};

inline double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) { return splitmix64(seed ^ splitmix64(batch + 1)); }

void run_batch(const InverseCdf& inv, int N, double xbar, double eps, std::uint64_t draws, std::uint64_t seed,
               ProtocolRun& run) {
  std::mt19937_64 rng(seed);
  const double r2 = std::sqrt(0.5);
  std::vector<double> cur;
  if (N == 0) {
    cur.resize(draws);
    for (auto& v : cur) v = inv(uniform53(rng));
  } else {
    // first layer is paired as it is drawn
    for (std::uint64_t i = 0; i + 1 < draws; i += 2) {
      const double a = inv(uniform53(rng));
      const double b = inv(uniform53(rng));
      if (std::abs((a - b) * r2 - xbar) <= eps) cur.push_back((a + b) * r2);
    }
  }
  for (int layer = 1; layer < N; ++layer) {
    std::vector<double> next;
    next.reserve(cur.size() / 8 + 16);
    for (std::size_t i = 0; i + 1 < cur.size(); i += 2) {
      const double d = (cur[i] - cur[i + 1]) * r2;
      if (std::abs(d - xbar) <= eps) next.push_back((cur[i] + cur[i + 1]) * r2);
    }
    cur.swap(next);
  }
  run.attempted += draws >> N;
  run.accepted += cur.size();
  run.samples_out.insert(run.samples_out.end(), cur.begin(), cur.end());
  ++run.batches;
}

void check_protocol_args(int N, double eps) {
  if (N < 0 || N > 4) throw Error(Errc::InvalidArgument, "protocol simulation supports N <= 4");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::InvalidArgument, "window eps must be positive");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> sample_density(const GridDensity& P, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw Error(Errc::InvalidArgument, "sample count must be positive");
  const InverseCdf inv(P);
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = inv(uniform53(rng));
  return out;
}

ProtocolRun simulate_protocol(const GridDensity& P, int N, double xbar, double eps, int batches, std::uint64_t seed,
                              const ProtocolOptions& options) {
  check_protocol_args(N, eps);
  if (batches < 1) throw Error(Errc::InvalidArgument, "need at least one batch");
  const InverseCdf inv(P);
  ProtocolRun run;
  run.window_eps = eps;
  run.seed = seed;
  run.layers = N;
  for (int b = 0; b < batches; ++b) run_batch(inv, N, xbar, eps, options.draws_per_batch, batch_seed(seed, b), run);
  if (run.accepted == 0) throw Error(Errc::NoAcceptedSamples, "no attempt survived post-selection");
  return run;
}

ProtocolRun simulate_until(const GridDensity& P, int N, double xbar, double eps, std::uint64_t target_accepted,
                           std::uint64_t seed, int max_batches, const ProtocolOptions& options) {
  check_protocol_args(N, eps);
  const InverseCdf inv(P);
  ProtocolRun run;
  run.window_eps = eps;
  run.seed = seed;
  run.layers = N;
  for (int b = 0; b < max_batches && run.accepted < target_accepted; ++b)
    run_batch(inv, N, xbar, eps, options.draws_per_batch, batch_seed(seed, b), run);
  if (run.accepted == 0) throw Error(Errc::NoAcceptedSamples, "no attempt survived post-selection");
  return run;
}

double ks_distance(std::span<const double> samples, const GridDensity& P) {
  if (samples.size() < 100) throw Error(Errc::TooFewSamples, "KS distance needs at least 100 samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const std::vector<double> cdf = cumulative(P);
  auto F = [&](double x) {
    const double t = (x - P.x_min()) / P.x_step();
    if (t <= 0.0) return 0.0;
    if (t >= static_cast<double>(cdf.size() - 1)) return 1.0;
    const std::size_t j = static_cast<std::size_t>(t);
    const double f = t - static_cast<double>(j);
    return cdf[j] + f * (cdf[j + 1] - cdf[j]);
  };
  const double n = static_cast<double>(s.size());
  double D = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double Fi = F(s[i]);
    D = std::max({D, (static_cast<double>(i) + 1.0) / n - Fi, Fi - static_cast<double>(i) / n});
  }
  return std::min(D, 1.0);
}

}  // namespace subplanck
