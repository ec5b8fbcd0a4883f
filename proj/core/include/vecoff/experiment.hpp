#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "vecoff/baselines.hpp"
#include "vecoff/scenario.hpp"
#include "vecoff/solver.hpp"

namespace vecoff {

enum class SweepAxis { kDeadline, kInputBits, kNumVehicles };

/// "T", "L" or "K".
std::string_view to_string(SweepAxis a);
SweepAxis parse_axis(std::string_view tag);

/// Shared description of the vehicles of one experiment point.
struct TaskTemplate {
  int num_vehicles = 3;
  double input_bits = 75e6;
  double cycles_per_bit = 1550.7;
  double output_ratio = 0.5;
  double switched_capacitance = 1e-28;
  /// Arrivals are uniform in [0, arrival_window_s).
  double arrival_window_s = 1.0;

  void validate() const;
};

/// Vehicle k rides lane k mod J and arrives at a time drawn from a stream
/// keyed by (seed, k), so adding vehicles never moves existing arrivals.
std::vector<VehicleTask> build_tasks(const TaskTemplate& tmpl, const ScenarioConfig& cfg,
                                     std::uint64_t seed);

struct ExperimentSpec {
  ScenarioConfig scenario;
  TaskTemplate tasks;
  SolverConfig solver;
  SweepAxis axis = SweepAxis::kDeadline;
  std::vector<double> values = {10.0, 15.0, 20.0, 25.0};
  std::vector<Scheme> schemes = {Scheme::kOneByOne, Scheme::kOrthogonal, Scheme::kEqualBit,
                                 Scheme::kLocal};
  int num_seeds = 1;
  std::uint64_t base_seed = 1;
  /// When non-empty, replaces base_seed + 0 .. num_seeds-1.
  std::vector<std::uint64_t> explicit_seeds;
  /// Worker threads; the output order never depends on it.
  int jobs = 1;
  /// Measure wall time. Off by default so the CSV is reproducible byte for byte.
  bool record_wall_time = false;

  std::vector<std::uint64_t> seeds() const;
  /// Throws Error on empty or unsorted values, N < 3 at any point, and the like.
  void validate() const;
};

/// Scenario and vehicles of one (axis value, seed) point.
struct ExperimentPoint {
  ScenarioConfig scenario;
  std::vector<VehicleTask> tasks;
};
ExperimentPoint make_point(const ExperimentSpec& spec, double axis_value, std::uint64_t seed);

struct ResultRow {
  Scheme scheme = Scheme::kLocal;
  SweepAxis axis = SweepAxis::kDeadline;
  double axis_value = 0.0;
  std::uint64_t seed = 0;
  double total_energy_j = 0.0;
  std::vector<double> per_vehicle_j;
  int iterations = 0;
  double gap = 0.0;
  double wall_time_s = 0.0;
  bool infeasible_at_cap = false;
};

/// Result of one scheme on one point.
ResultRow run_scheme(Scheme scheme, const ExperimentPoint& point, const SolverConfig& solver,
                     bool record_wall_time);

/// Rows ordered by (scheme in spec order, axis value, seed).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

}  // namespace vecoff
