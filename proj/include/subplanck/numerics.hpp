#pragma once

#include <functional>
#include <span>
#include <vector>

namespace subplanck {

/// Result of a sign-change bisection. The invariant f(lo) < 0 <= f(hi) holds
/// on return; `root` is the secant estimate inside the final bracket.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  double root = 0.0;
  int iterations = 0;
};

/// Bisection on [lo, hi] for a function with f(lo) < 0 <= f(hi). The bracket
/// is shrunk until hi - lo <= tol. `f_lo`/`f_hi` may be passed when already
/// known to avoid re-evaluation.
Bracket bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
               int max_iter = 200);
Bracket bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
               double f_hi, double tol, int max_iter = 200);

struct Minimum {
  double x = 0.0;
  double f = 0.0;
  int evaluations = 0;
};

/// Golden-section minimisation on [a, b] until the bracket is narrower than tol.
Minimum golden_section(const std::function<double(double)>& f, double a, double b, double tol);

/// Trapezoid rule on a uniform grid with spacing h.
double trapezoid(std::span<const double> y, double h);

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (cached, thread-safe).
const GaussLegendreRule& gauss_legendre(int order);

/// Adaptive Gauss-Legendre quadrature on [a, b]. Panels are split until the
/// one-panel and two-panel estimates agree within abs_tol (scaled per depth).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-14, int max_depth = 40);

}  // namespace subplanck
