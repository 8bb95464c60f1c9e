#include "subplanck/density.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "subplanck/error.hpp"

namespace subplanck {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxNodes = std::size_t{1} << 22;

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

double log_trapezoid_mass(std::span<const double> lp, double h) {
  double m = kNegInf;
  for (double v : lp) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    const double w = (i == 0 || i + 1 == lp.size()) ? 0.5 : 1.0;
    s += w * std::exp(lp[i] - m);
  }
  return m + std::log(s * h);
}

}  // namespace

GridDensity::GridDensity(double x_min, double x_step, std::vector<double> log_p, std::string meta)
    : x_min_(x_min), x_step_(x_step), log_p_(std::move(log_p)), meta_(std::move(meta)) {
  if (log_p_.size() < kMinNodes) throw Error(Errc::TooFewPoints, "density needs at least 64 nodes");
  if (!(x_step_ > 0.0) || !std::isfinite(x_step_) || !std::isfinite(x_min_))
    throw Error(Errc::NonUniformGrid, "grid step must be positive and finite");
  for (double v : log_p_) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw Error(Errc::NegativeDensity, "density values must be finite and nonnegative");
  }
  norm_log_ = log_trapezoid_mass(log_p_, x_step_);
  if (!std::isfinite(norm_log_)) throw Error(Errc::ZeroMass, "density has zero mass");
}

double GridDensity::value(std::size_t i) const { return std::exp(log_p_[i] - norm_log_); }

std::vector<double> GridDensity::values() const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = value(i);
  return v;
}

std::vector<double> GridDensity::abscissae() const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = x(i);
  return v;
}

double GridDensity::log_density_at(double xq) const {
  const double s = (xq - x_min_) / x_step_;
  const double last = static_cast<double>(size() - 1);
  if (!(s >= -1e-9) || !(s <= last + 1e-9)) return kNegInf;
  const double sc = std::clamp(s, 0.0, last);
  std::size_t i = static_cast<std::size_t>(sc);
  if (i >= size() - 1) i = size() - 2;
  const double t = sc - static_cast<double>(i);
  const double a = log_p_[i], b = log_p_[i + 1];
  double l;
  if (t == 0.0) l = a;
  else if (t == 1.0) l = b;
  else if (a == kNegInf || b == kNegInf) return kNegInf;
  else l = a + t * (b - a);
  return l - norm_log_;
}

double GridDensity::density_at(double xq) const { return std::exp(log_density_at(xq)); }

GridDensity GridDensity::shifted(double c) const {
  GridDensity out = *this;
  out.x_min_ += c;
  return out;
}

GridDensity GridDensity::with_meta(std::string meta) const {
  GridDensity out = *this;
  out.meta_ = std::move(meta);
  return out;
}

bool GridDensity::edges_decayed(double ratio) const {
  const double mx = *std::max_element(log_p_.begin(), log_p_.end());
  const double lim = mx + std::log(ratio);
  return log_p_.front() <= lim && log_p_.back() <= lim;
}

GridDensity make_grid_density(std::span<const double> xs, std::span<const double> ps, std::string meta) {
  if (xs.size() != ps.size()) throw Error(Errc::InvalidArgument, "x and density columns differ in length");
  if (xs.size() < GridDensity::kMinNodes) throw Error(Errc::TooFewPoints, "density needs at least 64 nodes");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(h > 0.0)) throw Error(Errc::NonUniformGrid, "abscissae must be strictly increasing");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expect = xs.front() + h * static_cast<double>(i);
    if (std::abs(xs[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)) + 1e-9 * h ||
        (i > 0 && !(xs[i] > xs[i - 1])))
      throw Error(Errc::NonUniformGrid, "abscissae are not uniformly spaced");
  }
  std::vector<double> lp(ps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!(ps[i] >= 0.0) || !std::isfinite(ps[i])) throw Error(Errc::NegativeDensity, "negative or non-finite density value");
    lp[i] = ps[i] > 0.0 ? std::log(ps[i]) : kNegInf;
    total += ps[i];
  }
  if (!(total > 0.0)) throw Error(Errc::ZeroMass, "density has zero mass");
  return GridDensity(xs.front(), h, std::move(lp), std::move(meta));
}

double mean(const GridDensity& d) {
  double s = 0.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    s += w * d.x(i) * d.value(i);
  }
  return s * d.x_step();
}

double variance(const GridDensity& d) {
  const double mu = mean(d);
  double s = 0.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double dx = d.x(i) - mu;
    s += w * dx * dx * d.value(i);
  }
  return s * d.x_step();
}

std::vector<double> cumulative(const GridDensity& d) {
  std::vector<double> c(d.size(), 0.0);
  double prev = d.value(0);
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double cur = d.value(i);
    c[i] = c[i - 1] + 0.5 * (prev + cur) * d.x_step();
    prev = cur;
  }
  // trapezoid mass is one by construction; remove rounding drift
  const double last = c.back();
  for (double& v : c) v /= last;
  return c;
}

QuarticFit local_quartic_fit(std::span<const double> y, double h, std::size_t center, int window, double t) {
  if (window < 2 || center < static_cast<std::size_t>(window) || center + window >= y.size())
    throw Error(Errc::WindowOutOfRange, "quartic window exceeds the grid");
  const int m = 2 * window + 1;
  Eigen::MatrixXd A(m, 5);
  Eigen::VectorXd b(m);
  for (int j = 0; j < m; ++j) {
    const double s = static_cast<double>(j - window) / window;
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      A(j, k) = p;
      p *= s;
    }
    b(j) = y[center - window + j];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  const double scale = h * window;
  const double s = t / scale;
  QuarticFit f;
  f.value = c(0) + s * (c(1) + s * (c(2) + s * (c(3) + s * c(4))));
  f.slope = (c(1) + s * (2.0 * c(2) + s * (3.0 * c(3) + s * 4.0 * c(4)))) / scale;
  f.curvature = (2.0 * c(2) + s * (6.0 * c(3) + s * 12.0 * c(4))) / (scale * scale);
  return f;
}

namespace {

// Node nearest a, with the window fully inside the grid.
std::size_t window_center(const GridDensity& d, double a, int window) {
  if (window < 5) throw Error(Errc::WindowOutOfRange, "curvature window must be at least 5");
  const double s = std::round((a - d.x_min()) / d.x_step());
  if (!(s >= window) || !(s + window <= static_cast<double>(d.size()) - 1.0))
    throw Error(Errc::WindowOutOfRange, "curvature window exceeds the grid");
  return static_cast<std::size_t>(s);
}

}  // namespace

QuarticFit quartic_fit_at(const GridDensity& d, double a, int window) {
  const std::size_t c = window_center(d, a, window);
  std::vector<double> y(2 * window + 1);
  for (int j = -window; j <= window; ++j) y[j + window] = d.value(c + j);
  return local_quartic_fit(y, d.x_step(), window, window, a - d.x(c));
}

double curvature_at(const GridDensity& d, double a, int window) { return quartic_fit_at(d, a, window).curvature; }

double relative_curvature_at(const GridDensity& d, double a, int window) {
  const std::size_t c = window_center(d, a, window);
  std::vector<double> y(2 * window + 1);
  for (int j = -window; j <= window; ++j) {
    y[j + window] = d.log_value(c + j);
    if (!std::isfinite(y[j + window])) throw Error(Errc::WindowOutOfRange, "log window touches an exact zero");
  }
  const QuarticFit f = local_quartic_fit(y, d.x_step(), window, window, a - d.x(c));
  return f.curvature + f.slope * f.slope;
}

std::vector<MaximumLocation> global_maxima(const GridDensity& d, double rel_tol, int window) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(Errc::InvalidArgument, "rel_tol must lie in (0, 1)");
  const auto lp = d.log_values();
  const std::size_t n = lp.size();
  const auto top = std::max_element(lp.begin(), lp.end());
  const double top_v = *top;
  std::size_t interior_best = 1;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (lp[i] > lp[interior_best]) interior_best = i;
  if (lp.front() >= lp[interior_best] || lp.back() >= lp[interior_best] || top_v == kNegInf)
    throw Error(Errc::NoInteriorMaximum, "density is maximal at a grid edge");

  std::vector<MaximumLocation> out;
  const double h = d.x_step();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = lp[i];
    if (!(v > lp[i - 1] && v >= lp[i + 1])) continue;
    double t = 0.0;
    double peak = v;
    if (std::isfinite(lp[i - 1]) && std::isfinite(lp[i + 1])) {
      const double den = lp[i - 1] - 2.0 * v + lp[i + 1];
      if (den < 0.0) {
        t = std::clamp(0.5 * (lp[i - 1] - lp[i + 1]) / den, -1.0, 1.0);
        peak = v - 0.25 * (lp[i - 1] - lp[i + 1]) * t;
      }
    }
    MaximumLocation m;
    m.a = d.x(i) + t * h;
    m.value = std::exp(peak - d.norm_log());
    if (i >= static_cast<std::size_t>(window) && i + window < n && window >= 5) {
      m.curvature = curvature_at(d, m.a, window);
    } else {
      m.curvature = (d.value(i - 1) - 2.0 * d.value(i) + d.value(i + 1)) / (h * h);
    }
    m.curvature = std::min(m.curvature, 0.0);
    out.push_back(m);
  }
  if (out.empty()) throw Error(Errc::NoInteriorMaximum, "no interior local maximum");
  std::sort(out.begin(), out.end(), [](const MaximumLocation& l, const MaximumLocation& r) {
    if (l.value != r.value) return l.value > r.value;
    return l.a < r.a;
  });
  const double lim = (1.0 - rel_tol) * out.front().value;
  for (auto& m : out) m.is_global = m.value >= lim;
  return out;
}

MaximumLocation select_tie_break(const std::vector<MaximumLocation>& maxima) {
  const MaximumLocation* best_pos = nullptr;
  const MaximumLocation* best_neg = nullptr;
  for (const auto& m : maxima) {
    if (!m.is_global) continue;
    if (m.a >= 0.0) {
      if (!best_pos || m.a < best_pos->a) best_pos = &m;
    } else if (!best_neg || m.a > best_neg->a) {
      best_neg = &m;
    }
  }
  if (best_pos) return *best_pos;
  if (best_neg) return *best_neg;
  throw Error(Errc::NoInteriorMaximum, "no global maximum to select");
}

GridDensity convolve_gaussian(const GridDensity& d, double var) {
  if (!(var >= 0.0) || !std::isfinite(var)) throw Error(Errc::InvalidArgument, "variance must be nonnegative");
  if (var == 0.0) return d;
  const double h = d.x_step();
  const std::size_t n = d.size();
  const std::size_t pad = static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(var) / h)) + 1;
  const std::size_t total = n + 2 * pad;
  std::size_t len = 1;
  while (len < total) len <<= 1;
  if (len > kMaxNodes) throw Error(Errc::InsufficientSupport, "convolution grid exceeds the node cap");

  const auto lp = d.log_values();
  const double mx = *std::max_element(lp.begin(), lp.end());
  double* buf = fftw_alloc_real(len);
  fftw_complex* spec = fftw_alloc_complex(len / 2 + 1);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(len), buf, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(len), spec, buf, FFTW_ESTIMATE);
  }
  std::fill(buf, buf + len, 0.0);
  for (std::size_t i = 0; i < n; ++i) buf[pad + i] = std::exp(lp[i] - mx);
  fftw_execute(fwd);
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(len) * h);
  for (std::size_t j = 0; j <= len / 2; ++j) {
    const double w = dw * static_cast<double>(j);
    const double g = std::exp(-0.5 * var * w * w) / static_cast<double>(len);
    spec[j][0] *= g;
    spec[j][1] *= g;
  }
  fftw_execute(bwd);

  double peak = 0.0;
  for (std::size_t i = 0; i < total; ++i) peak = std::max(peak, buf[i]);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * peak;
  std::size_t first = 0, last = total - 1;
  while (first < total && buf[first] <= floor) ++first;
  while (last > first && buf[last] <= floor) --last;
  // keep one exact zero on each side when available
  if (first > 0) --first;
  if (last + 1 < total) ++last;
  while (last - first + 1 < GridDensity::kMinNodes) {
    if (first > 0) --first;
    if (last + 1 < total) ++last;
  }
  std::vector<double> out(last - first + 1);
  for (std::size_t i = first; i <= last; ++i) {
    const double v = buf[i];
    out[i - first] = v > floor ? std::log(v) + mx : kNegInf;
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(buf);
  fftw_free(spec);
  const double x0 = d.x_min() + (static_cast<double>(first) - static_cast<double>(pad)) * h;
  return GridDensity(x0, h, std::move(out), d.meta());
}

GridDensity pow_scale(const GridDensity& d, long long M) {
  if (M < 1 || (M & (M - 1)) != 0) throw Error(Errc::NotPowerOfTwo, "copy count must be a power of two");
  if (M == 1) return d;
  const double s = std::sqrt(static_cast<double>(M));
  std::vector<double> lp(d.size());
  bool any = false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    lp[i] = static_cast<double>(M) * d.log_value(i);
    any = any || std::isfinite(lp[i]);
  }
  if (!any) throw Error(Errc::DegenerateResult, "power-scaled density has no mass");
  try {
    return GridDensity(d.x_min() * s, d.x_step() * s, std::move(lp), d.meta());
  } catch (const Error& e) {
    throw Error(Errc::DegenerateResult, e.what());
  }
}

}  // namespace subplanck
