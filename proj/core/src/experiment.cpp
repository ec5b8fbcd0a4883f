#include "vecoff/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "vecoff/random.hpp"

namespace vecoff {

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::kDeadline: return "T";
    case SweepAxis::kInputBits: return "L";
    case SweepAxis::kNumVehicles: return "K";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view tag) {
  if (tag == "T") return SweepAxis::kDeadline;
  if (tag == "L") return SweepAxis::kInputBits;
  if (tag == "K") return SweepAxis::kNumVehicles;
  throw Error("unknown sweep axis '" + std::string(tag) + "' (expected T, L or K)");
}

void TaskTemplate::validate() const {
  auto fail = [](const std::string& what) { throw Error("invalid task template: " + what); };
  if (num_vehicles < 1) fail("num_vehicles must be >= 1");
  if (!(input_bits > 0.0)) fail("input_bits must be > 0");
  if (!(cycles_per_bit > 0.0)) fail("cycles_per_bit must be > 0");
  if (!(output_ratio > 0.0 && output_ratio < 1.0)) fail("output_ratio must be in (0,1)");
  if (!(switched_capacitance > 0.0)) fail("switched_capacitance must be > 0");
  if (!(arrival_window_s >= 0.0)) fail("arrival_window_s must be >= 0");
}

std::vector<VehicleTask> build_tasks(const TaskTemplate& tmpl, const ScenarioConfig& cfg,
                                     std::uint64_t seed) {
  tmpl.validate();
  if (tmpl.arrival_window_s >= cfg.mission_time_s) {
    throw Error("arrival window must end before the mission time");
  }
  std::vector<VehicleTask> tasks(static_cast<std::size_t>(tmpl.num_vehicles));
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    auto& t = tasks[k];
    t.lane = static_cast<int>(k % static_cast<std::size_t>(cfg.num_lanes));
    const auto bits = mix_key(seed, k, 0, static_cast<std::uint64_t>(Stream::kArrival));
    t.arrival_time_s = tmpl.arrival_window_s * unit_uniform(bits);
    t.input_bits = tmpl.input_bits;
    t.cycles_per_bit = tmpl.cycles_per_bit;
    t.output_ratio = tmpl.output_ratio;
    t.switched_capacitance = tmpl.switched_capacitance;
  }
  return tasks;
}

std::vector<std::uint64_t> ExperimentSpec::seeds() const {
  if (!explicit_seeds.empty()) return explicit_seeds;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < num_seeds; ++i) out.push_back(base_seed + static_cast<std::uint64_t>(i));
  return out;
}

ExperimentPoint make_point(const ExperimentSpec& spec, double value, std::uint64_t seed) {
  ExperimentPoint p{spec.scenario, {}};
  TaskTemplate tmpl = spec.tasks;
  switch (spec.axis) {
    case SweepAxis::kDeadline: p.scenario.mission_time_s = value; break;
    case SweepAxis::kInputBits: tmpl.input_bits = value; break;
    case SweepAxis::kNumVehicles: {
      if (value < 1.0 || value != std::floor(value)) {
        throw Error("vehicle counts must be positive integers");
      }
      tmpl.num_vehicles = static_cast<int>(value);
      break;
    }
  }
  p.scenario.rng_seed = seed;
  p.scenario.validate();
  p.tasks = build_tasks(tmpl, p.scenario, seed);
  return p;
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error("invalid experiment: " + what); };
  if (values.empty()) fail("no axis values");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) fail("axis values must be positive");
  }
  if (!std::is_sorted(values.begin(), values.end())) fail("axis values must be sorted");
  if (schemes.empty()) fail("no schemes");
  if (explicit_seeds.empty() && num_seeds < 1) fail("num_seeds must be >= 1");
  if (jobs < 1) fail("jobs must be >= 1");
  solver.validate();
  tasks.validate();
  for (double v : values) {
    try {
      make_point(*this, v, base_seed);
    } catch (const Error& e) {
      fail(std::string(to_string(axis)) + "=" + std::to_string(v) + ": " + e.what());
    }
  }
}

ResultRow run_scheme(Scheme scheme, const ExperimentPoint& point, const SolverConfig& solver,
                     bool record_wall_time) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.scheme = scheme;
  row.seed = point.scenario.rng_seed;
  if (scheme == Scheme::kLocal) {
    const auto r = local_execution_total(point.tasks, point.scenario.mission_time_s);
    row.total_energy_j = r.total;
    row.per_vehicle_j = r.per_vehicle;
  } else {
    const auto trace = generate_channel_trace(point.scenario, point.tasks);
    if (scheme == Scheme::kOneByOne) {
      const auto rep = run_algorithm1(point.scenario, point.tasks, trace, solver);
      row.total_energy_j = rep.energy.total;
      for (std::size_t k = 0; k < point.tasks.size(); ++k) {
        row.per_vehicle_j.push_back(rep.energy.vehicle_total(k));
      }
      row.iterations = rep.iterations_used;
      row.gap = rep.gap;
    } else {
      const auto r = scheme == Scheme::kOrthogonal
                         ? orthogonal_optimize(point.scenario, point.tasks, trace,
                                               solver.ratio_tolerance)
                         : equal_bit_one_by_one(point.scenario, point.tasks, trace);
      row.total_energy_j = r.total;
      row.per_vehicle_j = r.per_vehicle;
      row.infeasible_at_cap = r.infeasible_at_cap;
    }
  }
  if (record_wall_time) {
    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto seeds = spec.seeds();
  const std::size_t S = spec.schemes.size();
  const std::size_t V = spec.values.size();
  const std::size_t R = seeds.size();
  std::vector<ResultRow> rows(S * V * R);

  // One work item per (value, seed); the trace is shared by its schemes.
  auto work = [&](std::size_t item) {
    const std::size_t v = item / R;
    const std::size_t r = item % R;
    const auto point = make_point(spec, spec.values[v], seeds[r]);
    for (std::size_t s = 0; s < S; ++s) {
      auto row = run_scheme(spec.schemes[s], point, spec.solver, spec.record_wall_time);
      row.axis = spec.axis;
      row.axis_value = spec.values[v];
      rows[(s * V + v) * R + r] = std::move(row);
    }
  };

  const std::size_t items = V * R;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), items);
  if (workers <= 1) {
    for (std::size_t i = 0; i < items; ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < items; i = next++) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace vecoff
