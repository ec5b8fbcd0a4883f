#pragma once

// Brute-force reference solvers. They re-derive every formula from the
// model definition and share no code with the library's allocation path, so
// agreement between the two is evidence rather than tautology.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vecoff/scenario.hpp"
#include "vecoff/solver.hpp"

namespace oracle {

struct Radio {
  double bandwidth_hz = 0.0;
  double noise_psd_w_per_hz = 0.0;
  double slot_s = 0.0;
};

/// One vehicle's frames under a frozen schedule. Frames the vehicle does not
/// hold carry zero capacity.
struct VehicleFrames {
  Radio radio;
  std::vector<double> uplink_gain;   ///< per uplink-start frame 0..N-3
  std::vector<double> uplink_cap;    ///< per uplink-start frame 0..N-3
  std::vector<double> downlink_cap;  ///< per absolute frame 0..N-1
  double output_ratio = 0.5;
};

double link_energy(double bits, double gain, const Radio& radio);
double local_energy(double bits, double cycles_per_bit, double capacitance, double deadline_s);

/// Output of bits uplinked at frame n becomes available at frame n+2 and is
/// drained greedily. True when every input and output bit fits the caps.
bool pipeline_feasible(const VehicleFrames& v, const std::vector<double>& uplink_bits);

/// Largest total that an earliest-first uplink can push end to end.
double max_deliverable(const VehicleFrames& v);

/// Minimum uplink energy for `required` bits. Exhaustive simplex grid with
/// zoom refinement when the vehicle holds at most three frames, pairwise
/// exchange grid search beyond that. `grid_points` is the per-axis density
/// of each grid round. +inf when nothing feasible is found.
double min_uplink_energy(const VehicleFrames& v, double required, int grid_points = 200);

VehicleFrames frames_for(const vecoff::Schedule& schedule, std::size_t vehicle,
                         const vecoff::VehicleTask& task, const vecoff::ChannelTrace& trace,
                         const vecoff::ScenarioConfig& cfg);

struct EnumerationResult {
  double total = 0.0;
  vecoff::Schedule schedule;
  std::vector<double> ratios;
};

/// Every uplink and downlink owner assignment, every ratio on a uniform grid
/// of `ratio_points` values in [0, 1], inner allocation by min_uplink_energy.
EnumerationResult enumerate_one_by_one(const vecoff::ScenarioConfig& cfg,
                                       const std::vector<vecoff::VehicleTask>& tasks,
                                       const vecoff::ChannelTrace& trace, int ratio_points = 101,
                                       int grid_points = 60);

}  // namespace oracle
