#pragma once

#include <cstdint>

#include "vecoff/experiment.hpp"

namespace testing {

/// A desk-scale world where offloading is interior: five frames right under
/// a strong RSU and tasks small enough for exhaustive enumeration.
inline vecoff::ExperimentSpec small_spec(int vehicles = 2) {
  vecoff::ExperimentSpec spec;
  spec.scenario.ref_gain = 1e-3;
  spec.scenario.rsu_radius_m = 5.0;
  spec.scenario.mission_time_s = 0.15;
  spec.tasks.num_vehicles = vehicles;
  spec.tasks.input_bits = 1e4;
  spec.tasks.arrival_window_s = 0.0375;
  spec.axis = vecoff::SweepAxis::kDeadline;
  spec.values = {0.15};
  return spec;
}

struct Instance {
  vecoff::ExperimentPoint point;
  vecoff::ChannelTrace trace;
};

inline Instance small_instance(std::uint64_t seed, int vehicles = 2) {
  auto point = vecoff::make_point(small_spec(vehicles), 0.15, seed);
  auto trace = vecoff::generate_channel_trace(point.scenario, point.tasks);
  return {std::move(point), std::move(trace)};
}

}  // namespace testing
