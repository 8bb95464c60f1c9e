#include "subplanck/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "subplanck/error.hpp"
#include "subplanck/special.hpp"

namespace subplanck {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;

double fock_extent(int n) { return 6.0 + 2.0 * std::sqrt(2.0 * n + 1.0); }

int highest_occupied(const std::vector<double>& p) {
  int top = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) top = static_cast<int>(i);
  return top;
}

struct Range {
  double lo, hi;
};

Range resolve(const GridSpec& g, Range fallback) {
  if (g.nodes < static_cast<int>(GridDensity::kMinNodes)) throw Error(Errc::TooFewPoints, "grid needs at least 64 nodes");
  Range r{g.lo.value_or(fallback.lo), g.hi.value_or(fallback.hi)};
  if (!(r.lo < r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw Error(Errc::InvalidArgument, "grid range must be finite with lo < hi");
  return r;
}

GridDensity tabulate(Range r, int nodes, const std::function<double(double)>& log_p, std::string meta) {
  const double h = (r.hi - r.lo) / (nodes - 1);
  std::vector<double> lp(nodes);
  for (int i = 0; i < nodes; ++i) lp[i] = log_p(r.lo + h * i);
  return GridDensity(r.lo, h, std::move(lp), std::move(meta));
}

void require_decay(const GridDensity& d, const char* what) {
  if (!d.edges_decayed(1e-12)) throw Error(Errc::GridTooNarrow, std::string(what) + ": density does not decay at the grid edges");
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// log of the cubic phase momentum density for gamma > 0
double cubic_log_density(double g, double p) {
  const double g13 = std::cbrt(g);
  const double z = (1.0 - 4.0 * g * p) / (4.0 * g13 * g13 * g13 * g13);
  const double la = log_abs_airy_ai(z);
  if (la == kNegInf) return kNegInf;
  const double lpre = 0.5 * std::log(2.0) + 0.25 * std::log(std::numbers::pi) - std::log(g13);
  return 2.0 * (lpre + (1.0 - 6.0 * g * p) / (12.0 * g * g) + la);
}

// Left edge where the cubic density has fallen below 1e-14 of its peak.
double cubic_left_edge(double g) {
  double peak = kNegInf;
  for (int i = 0; i <= 1000; ++i) peak = std::max(peak, cubic_log_density(g, -5.0 + 0.01 * i));
  double lo = -7.0;
  while (cubic_log_density(g, lo) - peak > std::log(1e-14) && lo > -200.0) lo -= 1.0;
  return lo;
}

// 0 for the designated variable, 1 for its conjugate; anything else is rejected.
int angle_class(double phi) {
  const double r = std::remainder(phi, 2.0 * std::numbers::pi);
  if (std::abs(r) < 1e-12) return 0;
  if (std::abs(r - kHalfPi) < 1e-12) return 1;
  return -1;
}

void check_spec(const StateSpec& spec) {
  if (!(spec.thermal_nbar >= 0.0) || !std::isfinite(spec.thermal_nbar))
    throw Error(Errc::InvalidState, "thermal nbar must be finite and nonnegative");
  if (!std::isfinite(spec.quadrature_angle)) throw Error(Errc::InvalidState, "quadrature angle must be finite");
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Fock>) {
          if (k.n < 0) throw Error(Errc::InvalidState, "Fock number must be nonnegative");
        } else if constexpr (std::is_same_v<K, FockMixture>) {
          validate_populations(k.populations);
        } else if constexpr (std::is_same_v<K, Cat>) {
          if (!(k.alpha > 0.0) || !std::isfinite(k.alpha)) throw Error(Errc::InvalidState, "cat amplitude must be positive");
        } else if constexpr (std::is_same_v<K, Gkp>) {
          if (!(k.delta > 0.0) || k.peaks < 1 || !(k.spacing > 0.0) || !std::isfinite(k.delta) || !std::isfinite(k.spacing))
            throw Error(Errc::InvalidState, "GKP needs delta > 0, peaks >= 1, spacing > 0");
        } else {
          if (!(k.gamma != 0.0) || !std::isfinite(k.gamma)) throw Error(Errc::InvalidState, "cubic gamma must be nonzero");
        }
      },
      spec.kind);
}

}  // namespace

void validate_populations(const std::vector<double>& p) {
  if (p.empty()) throw Error(Errc::InvalidPopulations, "population vector is empty");
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::InvalidPopulations, "populations must be finite and nonnegative");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-9) throw Error(Errc::InvalidPopulations, "populations must sum to one");
}

std::string describe(const StateSpec& spec) {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Fock>) os << "fock(n=" << k.n << ")";
        else if constexpr (std::is_same_v<K, FockMixture>) os << "mixture(len=" << k.populations.size() << ")";
        else if constexpr (std::is_same_v<K, Cat>) os << "cat(alpha=" << k.alpha << ")";
        else if constexpr (std::is_same_v<K, Gkp>) os << "gkp(delta=" << k.delta << ",peaks=" << k.peaks << ",spacing=" << k.spacing << ")";
        else os << "cubic(gamma=" << k.gamma << ")";
      },
      spec.kind);
  if (spec.thermal_nbar > 0.0) os << ",nbar=" << spec.thermal_nbar;
  if (spec.quadrature_angle != 0.0) os << ",angle=" << spec.quadrature_angle;
  return os.str();
}

std::pair<double, double> default_range(const StateSpec& spec) {
  const bool conj = angle_class(spec.quadrature_angle) == 1;
  return std::visit(
      [&](const auto& k) -> std::pair<double, double> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Fock>) {
          const double L = fock_extent(k.n);
          return {-L, L};
        } else if constexpr (std::is_same_v<K, FockMixture>) {
          const double L = fock_extent(highest_occupied(k.populations));
          return {-L, L};
        } else if constexpr (std::is_same_v<K, Cat>) {
          const double L = conj ? std::max(8.0, k.alpha + 6.0) : 8.0;
          return {-L, L};
        } else if constexpr (std::is_same_v<K, Gkp>) {
          const double L = std::max(8.0, 2.0 * k.peaks * k.spacing + 6.0 * k.delta + 1.0);
          return {-L, L};
        } else {
          if (conj) return {-8.0, 8.0};
          const double g = std::abs(k.gamma);
          const double left = cubic_left_edge(g);
          if (k.gamma > 0.0) return {left, 7.0 + 32.0 * g};
          return {-7.0 - 32.0 * g, -left};
        }
      },
      spec.kind);
}

GridDensity fock_density(int n, const GridSpec& grid) {
  if (n < 0) throw Error(Errc::InvalidState, "Fock number must be nonnegative");
  const double L = fock_extent(n);
  const Range r = resolve(grid, {-L, L});
  if (r.lo > -L + 1e-12 || r.hi < L - 1e-12) throw Error(Errc::GridTooNarrow, "grid narrower than the Fock default extent");
  return tabulate(r, grid.nodes, [n](double x) { return fock_log_density(n, x); }, "fock(n=" + std::to_string(n) + ")");
}

GridDensity fock_mixture_density(const std::vector<double>& populations, const GridSpec& grid) {
  validate_populations(populations);
  const double L = fock_extent(highest_occupied(populations));
  const Range r = resolve(grid, {-L, L});
  std::vector<double> logw(populations.size());
  for (std::size_t k = 0; k < populations.size(); ++k) logw[k] = populations[k] > 0.0 ? std::log(populations[k]) : kNegInf;
  GridDensity d = tabulate(
      r, grid.nodes,
      [&](double x) {
        double acc = kNegInf;
        for (std::size_t k = 0; k < logw.size(); ++k)
          if (logw[k] != kNegInf) acc = log_add(acc, logw[k] + fock_log_density(static_cast<int>(k), x));
        return acc;
      },
      "mixture");
  require_decay(d, "mixture");
  return d;
}

GridDensity cat_momentum_density(double alpha, const GridSpec& grid) {
  if (!(alpha > 0.0)) throw Error(Errc::InvalidState, "cat amplitude must be positive");
  const Range r = resolve(grid, {-8.0, 8.0});
  // 2 e^{-p^2} cos^2(p alpha) e^{alpha^2} / (sqrt(pi) (1 + e^{alpha^2}))
  const double lc = std::log(2.0) - 0.5 * std::log(std::numbers::pi) - std::log1p(std::exp(-alpha * alpha));
  GridDensity d = tabulate(
      r, grid.nodes,
      [&](double p) {
        const double c = std::cos(p * alpha);
        return c == 0.0 ? kNegInf : lc - p * p + 2.0 * std::log(std::abs(c));
      },
      "cat(alpha)");
  require_decay(d, "cat");
  return d;
}

GridDensity cat_position_density(double alpha, const GridSpec& grid) {
  if (!(alpha > 0.0)) throw Error(Errc::InvalidState, "cat amplitude must be positive");
  // peaks at +-alpha: the conjugate of the cos^2(p alpha) momentum fringes
  const double c = alpha;
  const double L = std::max(8.0, c + 6.0);
  const Range r = resolve(grid, {-L, L});
  GridDensity d = tabulate(
      r, grid.nodes,
      [&](double x) {
        const double a = -(x - c) * (x - c), b = -(x + c) * (x + c);
        return log_add(log_add(a, b), std::log(2.0) - x * x - c * c);
      },
      "cat_position(alpha)");
  require_decay(d, "cat");
  return d;
}

GridDensity gkp_position_density(double delta, int peaks, double spacing, const GridSpec& grid, GkpEnvelope envelope) {
  if (!(delta > 0.0) || peaks < 1 || !(spacing > 0.0)) throw Error(Errc::InvalidState, "GKP needs delta > 0, peaks >= 1, spacing > 0");
  const double L = std::max(8.0, 2.0 * peaks * spacing + 6.0 * delta + 1.0);
  const Range r = resolve(grid, {-L, L});
  GridDensity d = tabulate(
      r, grid.nodes,
      [&](double x) {
        double acc = kNegInf;
        for (int s = -peaks; s <= peaks; ++s) {
          const double c = 2.0 * s * spacing;
          const double lw = envelope == GkpEnvelope::Position ? -delta * delta * c * c
                                                              : -4.0 * std::numbers::pi * delta * delta * s * s;
          acc = log_add(acc, lw - (x - c) * (x - c) / (delta * delta));
        }
        return acc;
      },
      "gkp");
  require_decay(d, "gkp");
  return d;
}

GridDensity cubic_momentum_density(double gamma, const GridSpec& grid) {
  if (!(gamma != 0.0) || !std::isfinite(gamma)) throw Error(Errc::InvalidState, "cubic gamma must be nonzero");
  const double g = std::abs(gamma);
  const double sign = gamma > 0.0 ? 1.0 : -1.0;
  const auto def = default_range(StateSpec{CubicPhase{gamma}, 0.0, 0.0});
  const Range r = resolve(grid, {def.first, def.second});
  GridDensity d = tabulate(r, grid.nodes, [&](double p0) { return cubic_log_density(g, sign * p0); }, "cubic(gamma)");
  require_decay(d, "cubic");
  return d;
}

GridDensity realize(const StateSpec& spec, const GridSpec& grid) {
  check_spec(spec);
  const int ac = angle_class(spec.quadrature_angle);
  GridDensity base = std::visit(
      [&](const auto& k) -> GridDensity {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Fock>) {
          return fock_density(k.n, grid);
        } else if constexpr (std::is_same_v<K, FockMixture>) {
          return fock_mixture_density(k.populations, grid);
        } else {
          if (ac < 0) throw Error(Errc::UnsupportedAngle, "only angles 0 and pi/2 are available for this state");
          if constexpr (std::is_same_v<K, Cat>) {
            return ac == 0 ? cat_momentum_density(k.alpha, grid) : cat_position_density(k.alpha, grid);
          } else if constexpr (std::is_same_v<K, Gkp>) {
            if (ac != 0) throw Error(Errc::UnsupportedAngle, "GKP density is available only in position");
            return gkp_position_density(k.delta, k.peaks, k.spacing, grid, k.envelope);
          } else {
            if (ac == 0) return cubic_momentum_density(k.gamma, grid);
            const Range r = resolve(grid, {-8.0, 8.0});
            return tabulate(r, grid.nodes, [](double q) { return -q * q; }, "cubic_position");
          }
        }
      },
      spec.kind);
  GridDensity out = spec.thermal_nbar > 0.0 ? convolve_gaussian(base, spec.thermal_nbar) : base;
  return out.with_meta(describe(spec));
}

}  // namespace subplanck
