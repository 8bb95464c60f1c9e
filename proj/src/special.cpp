#include "subplanck/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace subplanck {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Seams between the Maclaurin series and the asymptotic branches.
constexpr double kAiryNegSeam = -7.5;
constexpr double kAiryPosSeam = 5.0;

long double airy_series(long double x) {
  // Ai(x) = c1 f(x) - c2 g(x)
  const long double c1 = 0.355028053887817239260063186004183176L;
  const long double c2 = 0.258819403792806798405183560189203963L;
  const long double x3 = x * x * x;
  long double tf = 1.0L, tg = x;
  long double f = tf, g = tg;
  for (int k = 1; k < 400; ++k) {
    tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::fabs(tf) < 1e-22L * std::fabs(f) && std::fabs(tg) < 1e-22L * (std::fabs(g) + 1e-300L)) break;
  }
  return c1 * f - c2 * g;
}

// Asymptotic coefficients u_k of the Airy expansions.
double airy_u(int k) {
  double u = 1.0;
  for (int j = 1; j <= k; ++j) u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
  return u;
}

// Sum of (-1)^k u_k / zeta^k truncated at the smallest term.
double airy_pos_series(double zeta) {
  double s = 1.0, prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double t = airy_u(k) / std::pow(zeta, k);
    if (t > prev) break;
    s += (k % 2 ? -t : t);
    prev = t;
    if (t < 1e-17) break;
  }
  return s;
}

double airy_neg(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double p = 1.0, q = 0.0, prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double t = airy_u(k) / std::pow(zeta, k);
    if (t > prev) break;
    prev = t;
    // k even -> P series with sign (-1)^(k/2); k odd -> Q series with sign (-1)^((k-1)/2)
    if (k % 2 == 0) p += ((k / 2) % 2 ? -t : t);
    else q += (((k - 1) / 2) % 2 ? -t : t);
    if (t < 1e-17) break;
  }
  const double ph = zeta + std::numbers::pi / 4.0;
  return (std::sin(ph) * p - std::cos(ph) * q) / (std::sqrt(std::numbers::pi) * std::pow(z, 0.25));
}

}  // namespace

double hermite(int n, double x) {
  if (n <= 0) return 1.0;
  double h0 = 1.0, h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double log_abs_hermite(int n, double x) {
  if (n <= 0) return 0.0;
  double h0 = 1.0, h1 = 2.0 * x, scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
    const double m = std::abs(h1);
    if (m > 1e150) {
      h0 /= m;
      h1 /= m;
      scale += std::log(m);
    }
  }
  return h1 == 0.0 ? kNegInf : std::log(std::abs(h1)) + scale;
}

double laguerre(int n, double alpha, double x) {
  if (n <= 0) return 1.0;
  double l0 = 1.0, l1 = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

double airy_ai(double x) {
  if (x > kAiryPosSeam) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    return std::exp(-zeta) * airy_pos_series(zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
  }
  if (x < kAiryNegSeam) return airy_neg(x);
  return static_cast<double>(airy_series(x));
}

double log_abs_airy_ai(double x) {
  if (x > kAiryPosSeam) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    return -zeta + std::log(airy_pos_series(zeta)) - std::log(2.0 * std::sqrt(std::numbers::pi)) -
           0.25 * std::log(x);
  }
  const double v = airy_ai(x);
  return v == 0.0 ? kNegInf : std::log(std::abs(v));
}

double fock_log_density(int n, double x) {
  const double lh = log_abs_hermite(n, x);
  if (lh == kNegInf) return kNegInf;
  return -x * x - 0.5 * std::log(std::numbers::pi) - n * std::numbers::ln2 - std::lgamma(n + 1.0) + 2.0 * lh;
}

double log_displaced_fock_overlap(int m, int n, double u) {
  if (u <= 0.0) return m == n ? 0.0 : kNegInf;
  int lo = m, hi = n;
  if (lo > hi) std::swap(lo, hi);
  const int d = hi - lo;
  const double l = laguerre(lo, d, u);
  if (l == 0.0) return kNegInf;
  return std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0) + d * std::log(u) - u + 2.0 * std::log(std::abs(l));
}

}  // namespace subplanck
