#include "subplanck/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "subplanck/error.hpp"

namespace subplanck {

Bracket bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
               int max_iter) {
  return bisect(f, lo, hi, f(lo), f(hi), tol, max_iter);
}

Bracket bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
               double f_hi, double tol, int max_iter) {
  if (!(lo < hi) || !(tol > 0.0)) throw Error(Errc::InvalidArgument, "bisect: bad bracket or tolerance");
  if (!(f_lo < 0.0 && f_hi >= 0.0)) throw Error(Errc::NoRootInBracket, "bisect: no sign change in bracket");
  Bracket b{lo, hi, f_lo, f_hi, 0.0, 0};
  while (b.hi - b.lo > tol && b.iterations < max_iter) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double fm = f(mid);
    ++b.iterations;
    if (fm < 0.0) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  const double span = b.f_hi - b.f_lo;
  b.root = (std::isfinite(span) && span > 0.0) ? b.lo + (b.hi - b.lo) * (-b.f_lo / span)
                                               : 0.5 * (b.lo + b.hi);
  return b;
}

Minimum golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc <= fd ? Minimum{c, fc, evals} : Minimum{d, fd, evals};
}

double trapezoid(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

namespace {

GaussLegendreRule build_rule(int order) {
  GaussLegendreRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.nodes[i] = -z;
    r.nodes[order - 1 - i] = z;
    r.weights[i] = r.weights[order - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

double panel(const std::function<double(double)>& f, double a, double b, const GaussLegendreRule& r) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole, double tol,
             int depth, const GaussLegendreRule& r) {
  const double m = 0.5 * (a + b);
  const double left = panel(f, a, m, r);
  const double right = panel(f, m, b, r);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adapt(f, a, m, left, 0.5 * tol, depth - 1, r) + adapt(f, m, b, right, 0.5 * tol, depth - 1, r);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  if (order < 1) throw Error(Errc::InvalidArgument, "gauss_legendre: order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_depth) {
  const auto& r = gauss_legendre(20);
  // Start from a few panels so narrow features are not missed entirely.
  constexpr int kPanels = 8;
  const double w = (b - a) / kPanels;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + k * w, hi = lo + w;
    total += adapt(f, lo, hi, panel(f, lo, hi, r), abs_tol / kPanels, max_depth, r);
  }
  return total;
}

}  // namespace subplanck
