// Acceptance checks. Usage: acceptance [criterion ...]; no arguments runs all.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "subplanck/depth.hpp"
#include "subplanck/distill.hpp"
#include "subplanck/error.hpp"
#include "subplanck/oracle.hpp"
#include "subplanck/phonon.hpp"
#include "subplanck/states.hpp"

using namespace subplanck;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  if (!ok) o.pass = false;
  if (!ok || o.detail.size() < 400) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += buf;
    if (!ok) o.detail += " [x]";
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DistillConfig layers(int N) {
  DistillConfig c;
  c.layers = N;
  return c;
}

Outcome c01() {
  Outcome o;
  double worst_min = 0.0, worst_asym = 0.0, slowest = 0.0;
  for (int N = 0; N <= 8; ++N) {
    const auto t0 = std::chrono::steady_clock::now();
    const DistillReport r = quantify(realize(StateSpec{Fock{0}}), layers(N));
    slowest = std::max(slowest, seconds_since(t0));
    worst_min = std::max(worst_min, std::abs(r.min_variance - 0.5));
    worst_asym = std::max(worst_asym, std::abs(r.asymptotic_variance - 0.5));
  }
  note(o, worst_min <= 1e-4, "max |min_variance-0.5| = %.2e", worst_min);
  note(o, worst_asym <= 1e-6, "max |asymptotic-0.5| = %.2e", worst_asym);
  note(o, slowest < 1.0, "slowest call %.3f s", slowest);
  return o;
}

Outcome c02() {
  Outcome o;
  const double a = asymptotic_variance(fock_density(1), 1e-3);
  note(o, std::abs(a - 0.25) <= 1e-4, "asymptotic(Fock 1) = %.6f", a);
  for (double nb : {0.0, 0.1, 0.2}) {
    const double got = asymptotic_variance(realize(StateSpec{Fock{1}, nb}), 1e-3);
    const double want = (1 + 2 * nb) / (4 * std::abs(1 - nb));
    note(o, std::abs(got - want) <= 1e-3, "nbar %.1f: %.6f vs %.6f", nb, got, want);
  }
  return o;
}

Outcome c03() {
  Outcome o;
  const DepthResult r = subplanck_depth(StateSpec{Fock{1}}, DistillConfig{});
  note(o, std::abs(r.nbar_star - 0.25) <= 1e-3, "depth(Fock 1) = %.6f", r.nbar_star);
  return o;
}

Outcome c04() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 4; n <= 10; ++n) {
    const DepthResult r = subplanck_depth(StateSpec{Fock{n}}, DistillConfig{});
    note(o, r.nbar_star >= 0.27 && r.nbar_star <= 0.29, "n=%d: %.5f", n, r.nbar_star);
  }
  const double t = seconds_since(t0);
  note(o, t < 120.0, "sweep %.1f s", t);
  return o;
}

Outcome c05() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) worst = std::max(worst, std::abs(wigner_negativity_depth(n).nbar_star - 0.5));
  note(o, worst <= 1e-3, "max |depth-0.5| = %.2e", worst);
  return o;
}

Outcome c06() {
  Outcome o;
  const std::vector<int> ns{2, 4, 6, 8, 10};
  std::vector<std::vector<DistillReport>> tab;
  for (int n : ns) {
    tab.emplace_back();
    for (int N = 1; N <= 4; ++N) tab.back().push_back(quantify(fock_density(n), layers(N)));
  }
  int bad_N = 0, bad_n = 0, bad_half = 0, bad_eff = 0;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      const DistillReport& r = tab[i][k];
      if (!(r.min_variance < 0.5)) ++bad_half;
      if (k > 0 && !(r.min_variance < tab[i][k - 1].min_variance)) ++bad_N;
      if (k > 0 && !(r.efficiency > tab[i][k - 1].efficiency)) ++bad_eff;
      if (i > 0 && !(r.min_variance < tab[i - 1][k].min_variance)) ++bad_n;
    }
  note(o, bad_N == 0, "non-decreasing in N: %d", bad_N);
  note(o, bad_n == 0, "non-decreasing in n: %d", bad_n);
  note(o, bad_half == 0, "entries >= 0.5: %d", bad_half);
  note(o, bad_eff == 0, "efficiency not increasing: %d", bad_eff);
  note(o, true, "Fock 10, N=4: %.5f", tab.back().back().min_variance);
  return o;
}

Outcome c07() {
  Outcome o;
  const double nb = 0.2, v0 = 0.5, s = v0 + nb;
  const GridDensity d = convolve_gaussian(fock_density(1), nb);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.x(i);
    const double g = std::exp(-x * x / (2 * s)) / std::sqrt(2 * std::numbers::pi * s);
    worst = std::max(worst, std::abs(d.value(i) - g * (v0 * x * x / (s * s) + nb / s)));
  }
  note(o, worst <= 1e-6, "max pointwise error %.2e", worst);
  return o;
}

Outcome c08() {
  Outcome o;
  const double target = 0.09 / 2;
  const double a = asymptotic_variance(gkp_position_density(0.3, 3, std::sqrt(std::numbers::pi)), 1e-3);
  note(o, std::abs(a - target) <= 1e-3, "spacing sqrt(pi): %.6f", a);
  const GridDensity tight = gkp_position_density(0.3, 3, std::sqrt(std::numbers::pi) / 4);
  const double raw = variance(tight);
  const double b = asymptotic_variance(tight, 1e-3);
  note(o, raw > 0.5, "spacing sqrt(pi)/4 raw variance %.4f", raw);
  note(o, std::abs(b - target) <= 0.03 * target, "recovered %.6f", b);
  return o;
}

Outcome c09() {
  Outcome o;
  const GridDensity p = cubic_momentum_density(1.0);
  const DistillReport plain = quantify(p, DistillConfig{});
  note(o, plain.asymptotic_variance >= 0.5, "no prelayer: %.4f", plain.asymptotic_variance);
  DistillConfig cfg;
  cfg.nonuniversal_prelayers = 1;
  cfg.prelayer_xbar = 5.0;
  const DistillReport pre = quantify(p, cfg);
  note(o, std::abs(pre.asymptotic_variance - 0.152) <= 0.005, "prelayer x=5: %.5f", pre.asymptotic_variance);
  return o;
}

Outcome c10() {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int false_pos = 0;
  double lowest = 1e9;
  for (int trial = 0; trial < 100; ++trial) {
    const int K = trial < 30 ? 1 : 2 + static_cast<int>(U(rng) * 3);
    std::vector<double> w(K), mu(K), var(K);
    double ws = 0.0, reach = 0.0;
    for (int k = 0; k < K; ++k) {
      w[k] = 0.1 + U(rng);
      ws += w[k];
      mu[k] = K == 1 ? 0.0 : -4.0 + 8.0 * U(rng);
      var[k] = 0.5 + 2.5 * U(rng) * U(rng);
      reach = std::max(reach, std::abs(mu[k]) + 12.0 * std::sqrt(var[k]));
    }
    const int nodes = 4096;
    const double h = 2 * reach / (nodes - 1);
    std::vector<double> lp(nodes);
    for (int i = 0; i < nodes; ++i) {
      const double x = -reach + h * i;
      double s = 0.0;
      for (int k = 0; k < K; ++k)
        s += w[k] / ws * std::exp(-(x - mu[k]) * (x - mu[k]) / (2 * var[k])) / std::sqrt(var[k]);
      lp[i] = std::log(s);
    }
    const GridDensity P(-reach, h, lp);
    for (int N = 0; N <= 6; ++N) {
      const DistillReport r = quantify(P, layers(N));
      lowest = std::min(lowest, r.min_variance);
      if (r.min_variance < 0.5 - 1e-3) ++false_pos;
    }
  }
  note(o, false_pos == 0, "false positives %d of 700", false_pos);
  note(o, true, "lowest min_variance %.6f", lowest);
  return o;
}

Outcome c11() {
  Outcome o;
  const double sp = std::sqrt(std::numbers::pi);
  const std::vector<std::pair<const char*, GridDensity>> catalog{
      {"fock1", fock_density(1)},
      {"fock4", fock_density(4)},
      {"fock10", fock_density(10)},
      {"thermal fock1", realize(StateSpec{Fock{1}, 0.1})},
      {"cat p", cat_momentum_density(2.0)},
      {"cat x", cat_position_density(2.0)},
      {"gkp", gkp_position_density(0.3, 3, sp)},
      {"cubic", cubic_momentum_density(1.0)},
  };
  double worst = 0.0;
  const char* worst_name = "";
  for (const auto& [name, P] : catalog) {
    const auto maxima = global_maxima(P, 1e-3);
    const MaximumLocation& m = select_tie_break(maxima);
    const double base = relative_curvature_at(P, m.a);
    for (int N = 1; N <= 6; ++N) {
      const GridDensity Q = universal_distill(P, N);
      const double a = m.a * std::sqrt(static_cast<double>(1 << N));
      const double rel = std::abs(relative_curvature_at(Q, a) / base - 1.0);
      if (rel > worst) {
        worst = rel;
        worst_name = name;
      }
    }
  }
  note(o, worst <= 1e-3, "worst relative change %.2e (%s)", worst, worst_name);
  return o;
}

Outcome c12() {
  Outcome o;
  for (int n : {1, 4}) {
    const GridDensity P = fock_density(n);
    const ProtocolRun r = simulate_until(P, 2, 0.0, 0.02, 50000, 7);
    const double ks = ks_distance(r.samples_out, universal_distill(P, 2));
    note(o, r.accepted >= 50000 && ks <= 0.02, "Fock %d: %llu accepted, KS %.4f", n,
         static_cast<unsigned long long>(r.accepted), ks);
  }
  ProtocolOptions opt;
  opt.draws_per_batch = std::uint64_t{1} << 22;
  double prev = 2.0;
  for (int N = 1; N <= 3; ++N) {
    const ProtocolRun r = simulate_protocol(fock_density(1), N, 0.0, 0.02, 8, 7, opt);
    note(o, r.acceptance_rate() < prev, "N=%d rate %.3e", N, r.acceptance_rate());
    prev = r.acceptance_rate();
  }
  return o;
}

Outcome c13() {
  Outcome o;
  RabiModel m;
  m.omega01 = 2 * std::numbers::pi * 2000.0;
  m.gamma_decay = 50.0;
  m.n_max = 15;
  std::vector<double> t(400);
  for (int i = 0; i < 400; ++i) t[i] = 4e-3 * i / 399.0;
  for (int n : {1, 5, 10}) {
    std::vector<double> p(16, 0.0), y(t.size());
    p[n] = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = rabi_signal(p, m, t[i]);
    const PhononDistribution d = fit_populations(t, y, m);
    double tv = 0.0;
    for (int k = 0; k < 16; ++k) tv += std::abs(d.populations[k] - p[k]);
    note(o, tv / 2 <= 1e-3, "n=%d TV %.2e", n, tv / 2);
  }
  std::mt19937_64 rng(13);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> p(16, 0.0), y(t.size());
  p[9] = 0.05;
  p[10] = 0.9;
  p[11] = 0.05;
  for (std::size_t i = 0; i < t.size(); ++i) y[i] = std::clamp(rabi_signal(p, m, t[i]) + noise(rng), 0.0, 1.0);
  const PhononDistribution d = fit_populations(t, y, m);
  note(o, std::abs(d.populations[10] - 0.9) <= 0.03, "noisy {9,10,11}: p10 = %.4f", d.populations[10]);
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria{
    {"ground-state fixed point", c01},      {"Fock-1 asymptotics", c02},
    {"Fock-1 depth", c03},                  {"depth convergence n=4..10", c04},
    {"Wigner-negativity depth", c05},       {"monotonicity suite", c06},
    {"thermalised closed form", c07},       {"GKP recovery", c08},
    {"cubic phase", c09},                   {"faithfulness property suite", c10},
    {"concavity preservation", c11},        {"oracle equivalence", c12},
    {"phonon round trip", c13},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) which.push_back(i);
  int failed = 0;
  for (int c : which) {
    if (c < 1 || c > static_cast<int>(kCriteria.size())) {
      std::printf("criterion %d: FAIL unknown criterion\n", c);
      ++failed;
      continue;
    }
    const auto& [name, fn] = kCriteria[c - 1];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %-30s %s  (%.1f s) %s\n", c, name, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
