#include "subplanck/depth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "subplanck/error.hpp"
#include "subplanck/numerics.hpp"
#include "subplanck/special.hpp"

namespace subplanck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// First sign change of f on an even sweep of [lo, hi], followed by bisection.
DepthResult sweep_and_bisect(const std::function<double(double)>& f, double lo, double hi, int points, double tol,
                             bool check_start) {
  std::vector<double> xs(points), fs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = lo + (hi - lo) * i / (points - 1);
    fs[i] = f(xs[i]);
  }
  if (check_start && !(fs[0] < 0.0)) throw Error(Errc::NoSqueezingAtZero, "witness is classical at zero thermalisation");
  for (int i = 0; i + 1 < points; ++i) {
    if (fs[i] < 0.0 && fs[i + 1] >= 0.0) {
      const Bracket b = bisect(f, xs[i], xs[i + 1], fs[i], fs[i + 1], tol);
      DepthResult r;
      r.nbar_star = b.root;
      r.bracket_lo = b.lo;
      r.bracket_hi = b.hi;
      r.iterations = b.iterations;
      return r;
    }
  }
  throw Error(Errc::NoRootInBracket, "witness does not change sign on the bracket");
}

}  // namespace

std::string DepthResult::witness_label() const {
  switch (witness) {
    case WitnessKind::SubPlanck: return "subplanck(N=" + std::to_string(layers) + ")";
    case WitnessKind::SubPlanckAsymptotic: return "subplanck(asymptotic)";
    case WitnessKind::WignerNegativity: return "wigner";
    case WitnessKind::Fano: return "fano";
  }
  return "unknown";
}

double subplanck_witness(const StateSpec& spec, const DistillConfig& cfg, double nbar, const DepthOptions& options) {
  StateSpec s = spec;
  s.thermal_nbar = nbar;
  const GridDensity P = realize(s, options.grid);
  try {
    if (options.asymptotic) {
      const GridDensity P1 = cfg.nonuniversal_prelayers ? nonuniversal_layer(P, cfg.prelayer_xbar) : P;
      return asymptotic_variance(P1, cfg.max_rel_tol, cfg.curvature_window);
    }
    return quantify(P, cfg).min_variance;
  } catch (const Error& e) {
    if (e.code() == Errc::FlatMaximum) return kInf;
    throw;
  }
}

DepthResult subplanck_depth(const StateSpec& spec, const DistillConfig& cfg, const DepthOptions& options) {
  if (spec.thermal_nbar != 0.0) throw Error(Errc::InvalidArgument, "depth starts from an unthermalised state");
  if (!(options.nbar_max > 0.0) || options.sweep_points < 2 || !(options.tol > 0.0))
    throw Error(Errc::InvalidConfig, "invalid depth options");
  cfg.validate();
  auto f = [&](double nbar) { return subplanck_witness(spec, cfg, nbar, options) - 0.5; };
  DepthResult r = sweep_and_bisect(f, 0.0, options.nbar_max, options.sweep_points, options.tol, true);
  r.witness = options.asymptotic ? WitnessKind::SubPlanckAsymptotic : WitnessKind::SubPlanck;
  r.layers = options.asymptotic ? 0 : cfg.layers;
  return r;
}

double thermal_fock_wigner_origin(int n, double nbar) {
  if (n < 0 || !(nbar >= 0.0)) throw Error(Errc::InvalidArgument, "need n >= 0 and nbar >= 0");
  const double sign = n % 2 ? -1.0 : 1.0;
  if (nbar == 0.0) return 2.0 / std::numbers::pi * sign;
  // (2/nbar) int r e^{-r^2/nbar} W_n(r) dr, W_n(r) = (2/pi)(-1)^n e^{-2r^2} L_n(4r^2)
  const double rmax = std::sqrt(std::log(1e16) / (1.0 / nbar + 2.0));
  auto g = [&](double r) {
    return r * std::exp(-r * r / nbar - 2.0 * r * r) * laguerre(n, 0.0, 4.0 * r * r);
  };
  return (2.0 / nbar) * (2.0 / std::numbers::pi) * sign * integrate_adaptive(g, 0.0, rmax, 1e-15);
}

double thermal_fock_wigner(int n, double nbar, double rho) {
  if (n < 0 || !(nbar >= 0.0)) throw Error(Errc::InvalidArgument, "need n >= 0 and nbar >= 0");
  const double s = 1.0 + 2.0 * nbar;
  if (nbar == 0.5) {
    // Husimi limit: the vanishing ratio^n cancels the divergent Laguerre argument
    const double r2 = rho * rho;
    return 2.0 / (std::numbers::pi * s) * std::exp(-2.0 * r2 / s + n * std::log(2.0 * r2 / s) - std::lgamma(n + 1.0));
  }
  const double ratio = (2.0 * nbar - 1.0) / s;
  return 2.0 / (std::numbers::pi * s) * std::pow(ratio, n) * std::exp(-2.0 * rho * rho / s) *
         laguerre(n, 0.0, 4.0 * rho * rho / (1.0 - 4.0 * nbar * nbar));
}

double wigner_negativity_witness(int n, double nbar) {
  if (n < 1) throw Error(Errc::InvalidArgument, "Wigner negativity depth needs n >= 1");
  if (!(nbar >= 0.0)) throw Error(Errc::InvalidArgument, "nbar must be nonnegative");
  if (nbar >= 0.5) return 0.0;  // L_n of a nonpositive argument is positive
  // In y = 4 rho^2 / (1 - 4 nbar^2) the shape is e^{-y (1 - 2 nbar) / 2} L_n(y) with overall sign (-1)^n.
  const double sign = n % 2 ? -1.0 : 1.0;
  const double c = 0.5 * (1.0 - 2.0 * nbar);
  const double ymax = 4.0 * n + 12.0;
  const int pts = 400 * (n + 1);
  double best = kInf;
  for (int i = 0; i <= pts; ++i) {
    const double y = ymax * i / pts;
    best = std::min(best, sign * std::exp(-c * y) * laguerre(n, 0.0, y));
  }
  return best;
}

DepthResult wigner_negativity_depth(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "Wigner negativity depth needs n >= 1");
  auto f = [n](double nbar) { return wigner_negativity_witness(n, nbar); };
  DepthResult r = sweep_and_bisect(f, 0.0, 1.0, 9, 1e-6, true);
  r.witness = WitnessKind::WignerNegativity;
  return r;
}

PhononDistribution thermal_fock_number_distribution(int n, double nbar, int cutoff) {
  if (n < 0 || !(nbar >= 0.0) || !std::isfinite(nbar)) throw Error(Errc::InvalidArgument, "need n >= 0 and nbar >= 0");
  if (cutoff < n + 10.0 * (1.0 + nbar)) throw Error(Errc::CutoffTooSmall, "cutoff below n + 10 (1 + nbar)");
  std::vector<double> p(cutoff + 1, 0.0);
  if (nbar == 0.0) {
    p[n] = 1.0;
    return phonon_stats(p);
  }
  // p_m = (1/nbar) int_0^U e^{-u/nbar} |<m|D|n>|^2 du with u = |alpha|^2
  const double U = nbar * std::log(1e16);
  double total = 0.0;
  for (int m = 0; m <= cutoff; ++m) {
    auto g = [&](double u) {
      const double l = log_displaced_fock_overlap(m, n, u);
      return std::exp(l - u / nbar - std::log(nbar));
    };
    p[m] = integrate_adaptive(g, 0.0, U, 1e-14);
    total += p[m];
  }
  if (1.0 - total > 1e-8) throw Error(Errc::CutoffTooSmall, "truncated mass exceeds 1e-8");
  for (double& v : p) v /= total;
  return phonon_stats(p);
}

PhononDistribution thermal_fock_number_distribution(int n, double nbar) {
  int cutoff = static_cast<int>(std::ceil(n + 10.0 * (1.0 + nbar)));
  for (int attempt = 0; attempt < 12; ++attempt) {
    try {
      return thermal_fock_number_distribution(n, nbar, cutoff);
    } catch (const Error& e) {
      if (e.code() != Errc::CutoffTooSmall) throw;
      cutoff = cutoff * 3 / 2 + 8;
    }
  }
  throw Error(Errc::CutoffTooSmall, "could not reach the truncation target");
}

DepthResult fano_depth(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "Fano depth needs n >= 1");
  auto f = [n](double nbar) {
    const PhononDistribution d = thermal_fock_number_distribution(n, nbar);
    return d.variance / d.mean - 1.0;
  };
  DepthResult r = sweep_and_bisect(f, 0.0, 1.0, 9, 1e-4, true);
  r.witness = WitnessKind::Fano;
  return r;
}

}  // namespace subplanck
