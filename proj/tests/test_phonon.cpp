#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "subplanck/error.hpp"
#include "subplanck/phonon.hpp"

using namespace subplanck;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

RabiModel model() {
  RabiModel m;
  m.omega01 = 2 * std::numbers::pi * 2000.0;
  m.gamma_decay = 50.0;
  m.n_max = 15;
  return m;
}

}  // namespace

TEST_CASE("population statistics") {
  const PhononDistribution d = phonon_stats({0.25, 0.5, 0.25});
  CHECK(d.mean == doctest::Approx(1.0));
  CHECK(d.variance == doctest::Approx(0.5));
  REQUIRE(d.fano.has_value());
  CHECK(*d.fano == doctest::Approx(0.5));
  const PhononDistribution v = phonon_stats({1.0});
  CHECK(!v.fano.has_value());
  CHECK(!v.snr.has_value());
}

TEST_CASE("Rabi frequency scalings") {
  RabiModel m = model();
  CHECK(m.rabi_frequency(3) == doctest::Approx(m.omega01 * 2.0));
  m.scaling = RabiScaling::LambDicke;
  const double eta2 = m.lamb_dicke * m.lamb_dicke;
  // L_1^1(x) = 2 - x
  CHECK(m.rabi_frequency(1) == doctest::Approx(m.omega01 * (2 - eta2) / std::sqrt(2.0)));
}

TEST_CASE("signal bounds") {
  const RabiModel m = model();
  std::vector<double> p(16, 0.0);
  p[4] = 1.0;
  for (double t = 0; t < 4e-3; t += 1e-5) {
    const double s = rabi_signal(p, m, t);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("noise-free Fock traces are recovered") {
  const RabiModel m = model();
  std::vector<double> t(400);
  for (int i = 0; i < 400; ++i) t[i] = 4e-3 * i / 399.0;
  for (int n : {1, 5, 10}) {
    std::vector<double> p(16, 0.0);
    p[n] = 1.0;
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = rabi_signal(p, m, t[i]);
    const PhononDistribution d = fit_populations(t, y, m);
    double tv = 0.0;
    for (int k = 0; k < 16; ++k) tv += std::abs(d.populations[k] - p[k]);
    CHECK(tv / 2 < 1e-3);
    CHECK(d.mean == doctest::Approx(n).epsilon(1e-3));
  }
}

TEST_CASE("noisy trace keeps the dominant population") {
  const RabiModel m = model();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> t(400), y(400), p(16, 0.0);
  p[9] = 0.05;
  p[10] = 0.9;
  p[11] = 0.05;
  for (int i = 0; i < 400; ++i) {
    t[i] = 4e-3 * i / 399.0;
    y[i] = std::clamp(rabi_signal(p, m, t[i]) + noise(rng), 0.0, 1.0);
  }
  const PhononDistribution d = fit_populations(t, y, m);
  CHECK(d.populations[10] == doctest::Approx(0.9).epsilon(0.03 / 0.9));
  CHECK(d.rms_residual < 0.02);
  REQUIRE(d.fano.has_value());
  CHECK(*d.fano < 1.0);
  std::vector<double> outside(400, 0.5);
  outside[7] = 1.2;
  CHECK(code_of([&] { fit_populations(t, outside, m); }) == Errc::InvalidArgument);
}

TEST_CASE("fit error paths") {
  const RabiModel m = model();
  std::vector<double> t(10, 0.0), y(10, 0.5);
  CHECK(code_of([&] { fit_populations(t, y, m); }) == Errc::InsufficientData);
  std::vector<double> t2(400), y2(400);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    t2[i] = 4e-3 * i / 399.0;
    y2[i] = u(rng) < 0.5 ? 0.0 : 1.0;
  }
  CHECK(code_of([&] { fit_populations(t2, y2, m); }) == Errc::FitDiverged);
}
