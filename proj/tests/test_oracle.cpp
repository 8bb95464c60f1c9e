#include <doctest.h>

#include <cmath>
#include <vector>

#include "subplanck/distill.hpp"
#include "subplanck/error.hpp"
#include "subplanck/oracle.hpp"
#include "subplanck/states.hpp"

using namespace subplanck;

TEST_CASE("splitmix64 reference output") {
  // first output of the reference generator seeded with 0
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("inverse-CDF sampling reproduces the density") {
  const GridDensity f = fock_density(2);
  const auto s = sample_density(f, 200000, 11);
  CHECK(ks_distance(s, f) < 0.005);
  const auto s2 = sample_density(f, 1000, 11);
  CHECK(std::equal(s2.begin(), s2.end(), s.begin()));
}

TEST_CASE("KS distance needs enough samples") {
  std::vector<double> few(10, 0.0);
  try {
    ks_distance(few, fock_density(0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooFewSamples);
  }
}

TEST_CASE("protocol runs are deterministic and accounted") {
  ProtocolOptions o;
  o.draws_per_batch = 1 << 16;
  const GridDensity f = fock_density(1);
  const ProtocolRun a = simulate_protocol(f, 1, 0.0, 0.05, 4, 9, o);
  const ProtocolRun b = simulate_protocol(f, 1, 0.0, 0.05, 4, 9, o);
  CHECK(a.accepted == b.accepted);
  CHECK(a.samples_out == b.samples_out);
  CHECK(a.attempted == 4u * (1u << 16) / 2u);
  CHECK(a.accepted == a.samples_out.size());
  CHECK(a.acceptance_rate() > 0.0);
}

TEST_CASE("one layer on the vacuum leaves the vacuum") {
  ProtocolOptions o;
  o.draws_per_batch = 1 << 20;
  const GridDensity g = fock_density(0);
  const ProtocolRun r = simulate_until(g, 1, 0.0, 0.02, 20000, 3, 64, o);
  CHECK(r.accepted >= 20000u);
  CHECK(ks_distance(r.samples_out, universal_distill(g, 1)) < 0.02);
}
