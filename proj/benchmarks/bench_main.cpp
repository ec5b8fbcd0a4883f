#include <benchmark/benchmark.h>

#include "vecoff/experiment.hpp"

using namespace vecoff;

namespace {

ExperimentPoint fig3_point(double deadline_s, int vehicles = 3) {
  ExperimentSpec spec;
  spec.tasks.num_vehicles = vehicles;
  return make_point(spec, deadline_s, 1);
}

// Vehicle 0 holding every frame of the default deadline-sweep trace.
PipelineChannel whole_horizon(const ExperimentPoint& p, const ChannelTrace& trace) {
  const std::size_t N = trace.num_frames();
  Schedule s{Mask(p.tasks.size(), N), Mask(p.tasks.size(), N)};
  for (std::size_t c = 0; c < N; ++c) {
    if (c + 2 < N) s.uplink(0, c) = 1;
    if (c >= 2) s.downlink(0, c) = 1;
  }
  return vehicle_channel(s, 0, p.tasks[0], trace, p.scenario);
}

void BM_ChannelTrace(benchmark::State& state) {
  const auto p = fig3_point(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(generate_channel_trace(p.scenario, p.tasks));
}
BENCHMARK(BM_ChannelTrace)->Arg(10)->Arg(25)->Unit(benchmark::kMicrosecond);

void BM_SolveUplink(benchmark::State& state) {
  const auto p = fig3_point(static_cast<double>(state.range(0)));
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  const auto ch = whole_horizon(p, trace);
  const double bits = 0.5 * max_offloadable_bits(ch);
  for (auto _ : state) benchmark::DoNotOptimize(solve_uplink(ch, bits, p.scenario));
}
BENCHMARK(BM_SolveUplink)->Arg(10)->Arg(25)->Unit(benchmark::kMicrosecond);

void BM_OptimizeOffloadRatio(benchmark::State& state) {
  const auto p = fig3_point(25.0);
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  const auto ch = whole_horizon(p, trace);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_offload_ratio(ch, p.tasks[0], p.scenario, 1e-4));
  }
}
BENCHMARK(BM_OptimizeOffloadRatio)->Unit(benchmark::kMillisecond);

void BM_MinimizeLagrangian(benchmark::State& state) {
  const auto p = fig3_point(25.0);
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  const auto duals = DualState::zeros(p.tasks.size(), trace.num_frames() - 2, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_lagrangian(duals, trace, p.tasks, p.scenario));
  }
}
BENCHMARK(BM_MinimizeLagrangian)->Unit(benchmark::kMicrosecond);

void BM_Orthogonal(benchmark::State& state) {
  const auto p = fig3_point(25.0, static_cast<int>(state.range(0)));
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_optimize(p.scenario, p.tasks, trace));
}
BENCHMARK(BM_Orthogonal)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Algorithm1(benchmark::State& state) {
  const auto p = fig3_point(static_cast<double>(state.range(0)));
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  const SolverConfig solver;
  for (auto _ : state) benchmark::DoNotOptimize(run_algorithm1(p.scenario, p.tasks, trace, solver));
}
BENCHMARK(BM_Algorithm1)->Arg(10)->Arg(25)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
