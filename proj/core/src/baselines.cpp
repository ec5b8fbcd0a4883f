#include "vecoff/baselines.hpp"

#include <numeric>
#include <string>

#include "vecoff/allocation.hpp"
#include "vecoff/energy.hpp"

namespace vecoff {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kOneByOne: return "one-by-one";
    case Scheme::kOrthogonal: return "orthogonal";
    case Scheme::kEqualBit: return "equal-bit";
    case Scheme::kLocal: return "local";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view tag) {
  for (Scheme s : {Scheme::kOneByOne, Scheme::kOrthogonal, Scheme::kEqualBit, Scheme::kLocal}) {
    if (tag == to_string(s)) return s;
  }
  throw Error("unknown scheme '" + std::string(tag) +
              "' (expected one-by-one, orthogonal, equal-bit or local)");
}

namespace {

void finish(BaselineResult& r) {
  r.total = std::accumulate(r.per_vehicle.begin(), r.per_vehicle.end(), 0.0);
}

}  // namespace

BaselineResult local_execution_total(const std::vector<VehicleTask>& tasks, double deadline_s) {
  if (!(deadline_s > 0.0)) throw Error("deadline must be positive");
  BaselineResult r;
  r.scheme = Scheme::kLocal;
  for (const auto& t : tasks) r.per_vehicle.push_back(local_energy(t.input_bits, t, deadline_s));
  finish(r);
  return r;
}

BaselineResult orthogonal_optimize(const ScenarioConfig& cfg,
                                   const std::vector<VehicleTask>& tasks,
                                   const ChannelTrace& trace, double ratio_tolerance) {
  cfg.validate();
  check_trace_consistency(trace, cfg, tasks);
  const std::size_t K = tasks.size();
  const std::size_t N = trace.num_frames();
  const double share = static_cast<double>(K);

  BaselineResult r;
  r.scheme = Scheme::kOrthogonal;
  PrimalPlan plan = PrimalPlan::zeros(K, N);
  for (std::size_t k = 0; k < K; ++k) {
    PipelineChannel ch;
    ch.slot_duration_s = cfg.frame_duration_s / share;
    ch.output_ratio = tasks[k].output_ratio;
    ch.uplink_gain.resize(N - 2);
    ch.uplink_cap.resize(N - 2);
    ch.downlink_cap.assign(N, 0.0);
    for (std::size_t n = 0; n + 2 < N; ++n) {
      ch.uplink_gain[n] = trace.gains(k, n);
      ch.uplink_cap[n] = trace.uplink_cap(k, n) / share;
      plan.uplink_slot(k, n) = trace.active(k, n);
    }
    for (std::size_t f = 2; f < N; ++f) {
      ch.downlink_cap[f] = trace.downlink_cap(k, f) / share;
      plan.downlink_slot(k, f) = trace.active(k, f);
    }
    const auto d = optimize_offload_ratio(ch, tasks[k], cfg, ratio_tolerance);
    plan.offload_ratio[k] = d.ratio;
    if (d.ratio > 0.0) {
      const auto fill = fill_pipeline(ch, d.uplink.bits);
      for (std::size_t n = 0; n + 2 < N; ++n) plan.uplink_bits(k, n) = d.uplink.bits[n];
      for (std::size_t c = 0; c < N; ++c) {
        plan.compute_bits(k, c) = fill.compute[c];
        plan.downlink_bits(k, c) = fill.downlink[c];
      }
    }
    r.per_vehicle.push_back(d.total());
  }
  r.plan = std::move(plan);
  finish(r);
  return r;
}

BaselineResult equal_bit_one_by_one(const ScenarioConfig& cfg,
                                    const std::vector<VehicleTask>& tasks,
                                    const ChannelTrace& trace) {
  cfg.validate();
  check_trace_consistency(trace, cfg, tasks);
  const std::size_t K = tasks.size();
  const std::size_t N = trace.num_frames();

  BaselineResult r;
  r.scheme = Scheme::kEqualBit;
  PrimalPlan plan = PrimalPlan::zeros(K, N);
  std::vector<std::size_t> up_frames(K, 0), down_frames(K, 0);
  for (std::size_t n = 0; n + 2 < N; ++n) {
    const std::size_t k = n % K;
    plan.uplink_slot(k, n) = 1;
    plan.downlink_slot(k, n + 2) = 1;
    if (trace.active(k, n)) ++up_frames[k];
    if (trace.active(k, n + 2)) ++down_frames[k];
  }

  r.per_vehicle.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const double L = tasks[k].input_bits;
    if (up_frames[k] == 0 || down_frames[k] == 0) {
      // No frame to offload in: the task stays on board.
      r.infeasible_at_cap = true;
      r.per_vehicle[k] = local_energy(L, tasks[k], cfg.mission_time_s);
      continue;
    }
    plan.offload_ratio[k] = 1.0;
    const double up_share = L / static_cast<double>(up_frames[k]);
    const double down_share = tasks[k].output_ratio * L / static_cast<double>(down_frames[k]);
    for (std::size_t n = 0; n + 2 < N; ++n) {
      if (plan.uplink_slot(k, n) && trace.active(k, n)) {
        plan.uplink_bits(k, n) = up_share;
        plan.compute_bits(k, n + 1) = up_share;
        r.per_vehicle[k] += one_by_one_comm_energy(true, up_share, trace.gains(k, n), cfg);
        if (up_share > trace.uplink_cap(k, n)) {
          r.cap_violations.push_back({k, n, false, up_share, trace.uplink_cap(k, n)});
        }
      }
      const std::size_t f = n + 2;
      if (plan.downlink_slot(k, f) && trace.active(k, f)) {
        plan.downlink_bits(k, f) = down_share;
        if (down_share > trace.downlink_cap(k, f)) {
          r.cap_violations.push_back({k, f, true, down_share, trace.downlink_cap(k, f)});
        }
      }
    }
  }
  if (!r.cap_violations.empty()) r.infeasible_at_cap = true;
  r.plan = std::move(plan);
  finish(r);
  return r;
}

}  // namespace vecoff
