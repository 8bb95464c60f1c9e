#include <doctest.h>

#include <cmath>
#include <vector>

#include "subplanck/error.hpp"
#include "subplanck/numerics.hpp"

using namespace subplanck;

TEST_CASE("bisect keeps the sign invariant and shrinks below tolerance") {
  auto f = [](double x) { return x * x - 2.0; };
  const Bracket b = bisect(f, 0.0, 2.0, 1e-10);
  CHECK(b.f_lo < 0.0);
  CHECK(b.f_hi >= 0.0);
  CHECK(b.hi - b.lo <= 1e-10);
  CHECK(b.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("bisect rejects brackets without a sign change") {
  auto f = [](double x) { return x + 10.0; };
  CHECK_THROWS_AS(bisect(f, 0.0, 1.0, 1e-6), Error);
  try {
    bisect(f, 0.0, 1.0, 1e-6);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoRootInBracket);
  }
}

TEST_CASE("golden section finds a parabola minimum") {
  const Minimum m = golden_section([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, 0.0, 1.0, 1e-8);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(m.f == doctest::Approx(1.0));
}

TEST_CASE("trapezoid is exact for linear data") {
  std::vector<double> y{0.0, 1.0, 2.0, 3.0};
  CHECK(trapezoid(y, 0.5) == doctest::Approx(2.25));
}

TEST_CASE("Gauss-Legendre weights sum to two and integrate polynomials exactly") {
  for (int order : {1, 5, 20, 40}) {
    const auto& r = gauss_legendre(order);
    double s = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      s += r.weights[i];
      m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    if (order >= 2) CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("adaptive quadrature of a Gaussian") {
  const double v = integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-14);
  CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
}
