#include "subplanck/distill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "subplanck/error.hpp"
#include "subplanck/numerics.hpp"

namespace subplanck {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

GridDensity build(double lo, double hi, std::size_t nodes, std::vector<double> lp, const std::string& meta) {
  bool any = false;
  for (double v : lp) any = any || std::isfinite(v);
  if (!any) throw Error(Errc::ZeroMassCondition, "conditioned density vanishes everywhere");
  return GridDensity(lo, (hi - lo) / static_cast<double>(nodes - 1), std::move(lp), meta);
}

}  // namespace

void DistillConfig::validate() const {
  if (layers < 0 || layers > max_layers || max_layers > 30)
    throw Error(Errc::InvalidConfig, "layers must lie in [0, max_layers]");
  if (nonuniversal_prelayers != 0 && nonuniversal_prelayers != 1)
    throw Error(Errc::InvalidConfig, "nonuniversal_prelayers must be 0 or 1");
  if (!std::isfinite(conditioning_xbar) || !std::isfinite(prelayer_xbar))
    throw Error(Errc::InvalidConfig, "conditioning values must be finite");
  if (conditioning_xbar != 0.0 && layers > 4)
    throw Error(Errc::InvalidConfig, "non-universal layers are limited to N <= 4");
  if (!(max_rel_tol > 0.0 && max_rel_tol < 1.0)) throw Error(Errc::InvalidConfig, "max_rel_tol must lie in (0, 1)");
  if (transmissivity_grid < 3) throw Error(Errc::InvalidConfig, "transmissivity_grid must be at least 3");
  if (curvature_window < 5) throw Error(Errc::InvalidConfig, "curvature_window must be at least 5");
}

// Grid noise on the vacuum is ~2e-6; below this margin a variance is not reported as squeezed.
constexpr double kSqueezeMargin = 1e-5;

GridDensity universal_distill(const GridDensity& P, int N) {
  if (N < 0 || N > 30) throw Error(Errc::InvalidArgument, "layer count out of range");
  return pow_scale(P, 1LL << N);
}

GridDensity general_distill(const GridDensity& P, int N, double xbar) {
  if (N < 0 || N > 4) throw Error(Errc::InvalidArgument, "general distillation supports N <= 4");
  if (N == 0) return P;
  const int count = 1 << N;
  std::vector<double> shifts(count);
  double S = 0.0;
  for (int c = 0; c < count; ++c) {
    double s = 0.0;
    for (int j = 1; j <= N; ++j) {
      const int bit = (c >> (j - 1)) & 1;
      s += (bit ? -1.0 : 1.0) / std::pow(std::sqrt(2.0), j);
    }
    shifts[c] = xbar * s;
    S = std::max(S, std::abs(shifts[c]));
  }
  const double scale = std::pow(std::sqrt(2.0), N);
  const double lo = scale * (P.x_min() + S), hi = scale * (P.x_max() - S);
  if (!(lo < hi)) throw Error(Errc::ZeroMassCondition, "conditioning value leaves no common support");
  const std::size_t n = P.size();
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> lp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + h * static_cast<double>(i);
    double acc = 0.0;
    for (int c = 0; c < count && acc != kNegInf; ++c) acc += P.log_density_at(x / scale + shifts[c]);
    lp[i] = acc;
  }
  return build(lo, hi, n, std::move(lp), P.meta());
}

GridDensity nonuniversal_layer(const GridDensity& P, double xbar) {
  if (!std::isfinite(xbar)) throw Error(Errc::InvalidArgument, "conditioning value must be finite");
  const double r2 = std::sqrt(2.0);
  const double ax = std::abs(xbar);
  const double lo = r2 * P.x_min() + ax, hi = r2 * P.x_max() - ax;
  if (!(lo < hi)) throw Error(Errc::ZeroMassCondition, "conditioning value leaves no common support");
  const std::size_t n = P.size();
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> lp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + h * static_cast<double>(i);
    const double a = P.log_density_at((x + xbar) / r2);
    lp[i] = a == kNegInf ? kNegInf : a + P.log_density_at((x - xbar) / r2);
  }
  return build(lo, hi, n, std::move(lp), P.meta());
}

std::pair<GridDensity, MaximumLocation> displace_to_origin(const GridDensity& Q, double rel_tol, int window) {
  const auto maxima = global_maxima(Q, rel_tol, window);
  const MaximumLocation m = select_tie_break(maxima);
  return {Q.shifted(-m.a), m};
}

GridDensity filter_with_ground_state(const GridDensity& Qd, double T, FilterExponent exponent) {
  if (!(T > 0.0 && T <= 1.0)) throw Error(Errc::InvalidArgument, "transmissivity must lie in (0, 1]");
  if (T == 1.0) return Qd;
  const double c = exponent == FilterExponent::Derived ? 1.0 - T : std::sqrt(1.0 - T);
  const double sT = std::sqrt(T);
  const double R = std::sqrt(40.0 / c);
  const double lo = std::max(Qd.x_min() / sT, -R), hi = std::min(Qd.x_max() / sT, R);
  if (!(lo < hi)) throw Error(Errc::ZeroMassCondition, "filtered support is empty");
  const std::size_t n = Qd.size();
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> lp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + h * static_cast<double>(i);
    lp[i] = Qd.log_density_at(sT * x) - c * x * x;
  }
  return build(lo, hi, n, std::move(lp), Qd.meta());
}

FilterOptimum optimize_filter(const GridDensity& Qd, const DistillConfig& cfg) {
  const int K = cfg.transmissivity_grid;
  auto var_at = [&](double T) { return variance(filter_with_ground_state(Qd, T, cfg.filter_exponent)); };
  std::vector<double> Ts(K), vs(K);
  int best = 0;
  for (int k = 0; k < K; ++k) {
    Ts[k] = k + 1 == K ? 1.0 : std::pow(10.0, -4.0 + 4.0 * k / (K - 1));
    vs[k] = var_at(Ts[k]);
    if (vs[k] < vs[best]) best = k;
  }
  FilterOptimum opt{Ts[best], vs[best]};
  const double a = Ts[std::max(best - 1, 0)];
  const double b = Ts[std::min(best + 1, K - 1)];
  if (b - a > 1e-5) {
    const Minimum m = golden_section(var_at, a, b, 1e-5);
    if (m.f < opt.min_variance) opt = {m.x, m.f};
  }
  return opt;
}

double asymptotic_variance(const GridDensity& P, double rel_tol, int window) {
  const auto maxima = global_maxima(P, rel_tol, window);
  const MaximumLocation& m = select_tie_break(maxima);
  const QuarticFit f = quartic_fit_at(P, m.a, window);
  const double curv = f.curvature, val = f.value;
  if (!(curv < 0.0) || std::abs(curv) < 1e-12 * val) throw Error(Errc::FlatMaximum, "maximum has no strict concavity");
  return val / std::abs(curv);
}

double efficiency(double asym, double achieved) {
  if (!(asym > 0.0) || !(achieved > 0.0)) throw Error(Errc::NonPositiveVariance, "variances must be positive");
  return asym / achieved;
}

double squeezing_db(double variance) { return 10.0 * std::log10(variance / 0.5); }

DistillReport quantify(const GridDensity& P, const DistillConfig& cfg) {
  cfg.validate();
  const GridDensity P1 = cfg.nonuniversal_prelayers ? nonuniversal_layer(P, cfg.prelayer_xbar) : P;
  const double asym = asymptotic_variance(P1, cfg.max_rel_tol, cfg.curvature_window);
  const GridDensity Q = cfg.conditioning_xbar != 0.0 ? general_distill(P1, cfg.layers, cfg.conditioning_xbar)
                                                     : universal_distill(P1, cfg.layers);
  auto [Qd, mx] = displace_to_origin(Q, cfg.max_rel_tol, cfg.curvature_window);
  const FilterOptimum opt = optimize_filter(Qd, cfg);
  if (!(opt.min_variance > 0.0)) throw Error(Errc::NonPositiveVariance, "filtered variance is not positive");
  DistillReport r{filter_with_ground_state(Qd, opt.T_opt, cfg.filter_exponent), mx};
  r.T_opt = opt.T_opt;
  r.min_variance = opt.min_variance;
  r.squeezing_db = squeezing_db(opt.min_variance);
  r.asymptotic_variance = asym;
  r.efficiency = efficiency(asym, opt.min_variance);
  r.super_asymptotic = r.efficiency > 1.0 + 1e-6;
  r.is_squeezed = opt.min_variance < 0.5 - kSqueezeMargin;
  r.layers = cfg.layers;
  r.copies = cfg.copies();
  return r;
}

}  // namespace subplanck
