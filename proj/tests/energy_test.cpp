#include <cmath>

#include "doctest.h"
#include "vecoff/energy.hpp"

using namespace vecoff;

namespace {

ScenarioConfig radio() {
  ScenarioConfig cfg;
  cfg.noise_psd_w_per_hz = 3.981e-15;
  return cfg;
}

}  // namespace

TEST_CASE("local energy is the cubic clock law") {
  CHECK(local_energy(0.0, 1550.7, 1e-28, 25.0) == 0.0);
  CHECK(local_energy(2e7, 1550.7, 1e-28, 25.0) ==
        doctest::Approx(4.77302083691904).epsilon(1e-13));
  const double one = local_energy(1e6, 1550.7, 1e-28, 10.0);
  CHECK(local_energy(2e6, 1550.7, 1e-28, 10.0) == doctest::Approx(8.0 * one));

  VehicleTask t;
  t.input_bits = 1e6;
  const double h = 1.0;
  const double fd = (local_energy(5e6 + h, t, 25.0) - local_energy(5e6 - h, t, 25.0)) / (2 * h);
  CHECK(local_marginal_energy(5e6, t, 25.0) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("one-by-one energy matches the frame formula") {
  const auto cfg = radio();
  CHECK(one_by_one_comm_energy(false, 6e5, 1e-10, cfg) == 0.0);
  CHECK(one_by_one_comm_energy(true, 0.0, 1e-10, cfg) == 0.0);
  const double bd = cfg.frame_bits();
  CHECK(one_by_one_comm_energy(true, bd, 1e-10, cfg) ==
        doctest::Approx(cfg.noise_power_w() * cfg.frame_duration_s / 1e-10));
  CHECK(one_by_one_comm_energy(true, 6e5, 1e-10, cfg) == doctest::Approx(23.886).epsilon(1e-13));
  CHECK_THROWS_AS(one_by_one_comm_energy(true, 1.0, 0.0, cfg), Error);
}

TEST_CASE("orthogonal energy uses a slot of frame over K") {
  const auto cfg = radio();
  CHECK(orthogonal_comm_energy(2e5, 1e-10, cfg, 3) == doctest::Approx(7.962).epsilon(1e-13));
  CHECK(orthogonal_comm_energy(0.0, 1e-10, cfg, 3) == 0.0);
  for (double l : {1e3, 1e5, 6e5}) {
    CHECK(orthogonal_comm_energy(l, 3e-9, cfg, 1) ==
          doctest::Approx(one_by_one_comm_energy(true, l, 3e-9, cfg)).epsilon(1e-15));
  }
}

TEST_CASE("communication energies are convex with the analytic marginal") {
  const auto cfg = radio();
  const double g = 2e-9;
  for (int K : {1, 2, 4}) {
    const double tau = cfg.frame_duration_s / K;
    const double top = 4.0 * cfg.bandwidth_hz * tau;
    const double h = top / 100.0;
    for (int i = 1; i < 100; ++i) {
      const double l = i * h;
      const double second = link_energy(l + h, g, tau, cfg) - 2.0 * link_energy(l, g, tau, cfg) +
                            link_energy(l - h, g, tau, cfg);
      CHECK(second >= 0.0);
      const double d = 1e-3 * h;
      const double fd = (link_energy(l + d, g, tau, cfg) - link_energy(l - d, g, tau, cfg)) / (2 * d);
      CHECK(link_marginal_energy(l, g, tau, cfg) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("the rate cap is the full-power boundary") {
  const auto cfg = radio();
  for (double g : {1e-10, 3e-9, 5e-8}) {
    const double cap = link_capacity_bits(g, cfg.vehicle_max_power_w, cfg.frame_duration_s, cfg);
    CHECK(implied_transmit_power(cap, g, cfg.frame_duration_s, cfg) ==
          doctest::Approx(cfg.vehicle_max_power_w).epsilon(1e-12));
    CHECK(implied_transmit_power(cap * (1 - 1e-9), g, cfg.frame_duration_s, cfg) <=
          cfg.vehicle_max_power_w);
    CHECK(implied_transmit_power(cap * (1 + 1e-9), g, cfg.frame_duration_s, cfg) >
          cfg.vehicle_max_power_w);
  }
}

TEST_CASE("uplink score subtracts the rate credit") {
  const auto cfg = radio();
  CHECK(uplink_score(0.0, 1e-10, 0.0, cfg) == 0.0);
  for (double l : {0.0, 1e3, 2e5, 6e5}) {
    CHECK(uplink_score(l, 1e-10, 0.0, cfg) == one_by_one_comm_energy(true, l, 1e-10, cfg));
  }
  CHECK(uplink_score(0.0, 1e-10, 1.0, cfg) ==
        doctest::Approx(-1.8108387477084690e-3).epsilon(1e-12));
}

TEST_CASE("downlink score is a non-positive rate credit") {
  const auto cfg = radio();
  CHECK(downlink_score(0.0, 1e-10, cfg) == 0.0);
  CHECK(downlink_score(3.0, 0.0, cfg) == 0.0);
  CHECK(downlink_score(2.0, 1e-10, cfg) ==
        doctest::Approx(-7.238814839844024e-3).epsilon(1e-12));
  CHECK(downlink_score(0.5, 4e-9, cfg) <= 0.0);
}

TEST_CASE("spectral efficiency above the guard raises") {
  const auto cfg = radio();
  CHECK_THROWS_AS(link_energy(65.0 * cfg.frame_bits(), 1e-10, cfg.frame_duration_s, cfg), Error);
  CHECK_NOTHROW(link_energy(63.0 * cfg.frame_bits(), 1e-10, cfg.frame_duration_s, cfg));
}
