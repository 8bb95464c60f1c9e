#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "subplanck/density.hpp"
#include "subplanck/error.hpp"

using namespace subplanck;

namespace {

GridDensity gaussian(double mu, double var, double lo = -12.0, double hi = 12.0, int nodes = 4096) {
  const double h = (hi - lo) / (nodes - 1);
  std::vector<double> lp(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double x = lo + h * i;
    lp[i] = -(x - mu) * (x - mu) / (2 * var);
  }
  return GridDensity(lo, h, lp, "gaussian");
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("construction normalises and validates") {
  const GridDensity g = gaussian(0.3, 0.7);
  double s = 0.0;
  const auto v = g.values();
  for (std::size_t i = 0; i < v.size(); ++i) s += (i == 0 || i + 1 == v.size() ? 0.5 : 1.0) * v[i];
  CHECK(s * g.x_step() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean(g) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(variance(g) == doctest::Approx(0.7).epsilon(1e-10));

  CHECK(code_of([] { GridDensity(0.0, 0.1, std::vector<double>(10, 0.0)); }) == Errc::TooFewPoints);
  std::vector<double> bad(100, 0.0);
  bad[5] = std::nan("");
  CHECK(code_of([&] { GridDensity(0.0, 0.1, bad); }) == Errc::NegativeDensity);
  std::vector<double> zero(100, -INFINITY);
  CHECK(code_of([&] { GridDensity(0.0, 0.1, zero); }) == Errc::ZeroMass);
}

TEST_CASE("make_grid_density rejects bad input") {
  std::vector<double> xs(100), ps(100, 1.0);
  for (int i = 0; i < 100; ++i) xs[i] = 0.1 * i;
  CHECK_NOTHROW(make_grid_density(xs, ps));
  auto xs2 = xs;
  xs2[50] += 0.01;
  CHECK(code_of([&] { make_grid_density(xs2, ps); }) == Errc::NonUniformGrid);
  auto ps2 = ps;
  ps2[3] = -1.0;
  CHECK(code_of([&] { make_grid_density(xs, ps2); }) == Errc::NegativeDensity);
}

TEST_CASE("interpolation and cumulative") {
  const GridDensity g = gaussian(0.0, 1.0);
  CHECK(g.density_at(0.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-5));
  CHECK(g.density_at(100.0) == 0.0);
  const auto c = cumulative(g);
  CHECK(c.back() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] >= c[i - 1]);
}

TEST_CASE("maxima of a symmetric bimodal density and the tie-break rule") {
  const int n = 4001;
  const double lo = -10, h = 20.0 / (n - 1);
  std::vector<double> lp(n);
  for (int i = 0; i < n; ++i) {
    const double x = lo + h * i;
    lp[i] = std::log(std::exp(-(x - 2.5) * (x - 2.5)) + std::exp(-(x + 2.5) * (x + 2.5)));
  }
  const GridDensity d(lo, h, lp);
  const auto m = global_maxima(d, 1e-3);
  REQUIRE(m.size() >= 2);
  CHECK(m[0].is_global);
  CHECK(m[1].is_global);
  const auto& t = select_tie_break(m);
  CHECK(t.a == doctest::Approx(2.5).epsilon(1e-3));
  CHECK(t.curvature < 0.0);
}

TEST_CASE("curvature of a Gaussian peak") {
  const GridDensity g = gaussian(0.0, 0.5);
  // p(0) = 1/sqrt(pi), p''(0) = -p(0)/var
  CHECK(curvature_at(g, 0.0) == doctest::Approx(-2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-6));
  CHECK(relative_curvature_at(g, 0.0) == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("Gaussian convolution adds variance and preserves mass") {
  const GridDensity g = gaussian(1.0, 0.5);
  const GridDensity c = convolve_gaussian(g, 0.8);
  CHECK(mean(c) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(variance(c) == doctest::Approx(1.3).epsilon(1e-8));
  CHECK(c.edges_decayed());
}

TEST_CASE("convolution semigroup") {
  const GridDensity g = gaussian(0.0, 0.5);
  const GridDensity a = convolve_gaussian(convolve_gaussian(g, 0.3), 0.4);
  const GridDensity b = convolve_gaussian(g, 0.7);
  double worst = 0.0;
  for (double x = -6.0; x <= 6.0; x += 0.05) worst = std::max(worst, std::abs(a.density_at(x) - b.density_at(x)));
  CHECK(worst < 1e-8);
}

TEST_CASE("pow_scale maps a Gaussian onto itself") {
  const GridDensity g = gaussian(0.0, 0.7);
  for (long long M : {2LL, 4LL, 16LL}) {
    const GridDensity q = pow_scale(g, M);
    CHECK(variance(q) == doctest::Approx(0.7).epsilon(1e-8));
  }
  CHECK(code_of([&] { pow_scale(g, 3); }) == Errc::NotPowerOfTwo);
}

TEST_CASE("shift moves the mean") {
  const GridDensity g = gaussian(0.0, 1.0);
  CHECK(mean(g.shifted(2.0)) == doctest::Approx(2.0).epsilon(1e-10));
}
