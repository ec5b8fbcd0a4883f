#include "vecoff/plan.hpp"

#include <algorithm>
#include <cmath>

namespace vecoff {

PrimalPlan PrimalPlan::zeros(std::size_t vehicles, std::size_t frames) {
  return {Matrix(vehicles, frames), Matrix(vehicles, frames), Matrix(vehicles, frames),
          Mask(vehicles, frames), Mask(vehicles, frames), std::vector<double>(vehicles, 0.0)};
}

std::string_view to_string(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::kUplinkRate: return "uplink_rate";
    case ConstraintFamily::kDownlinkRate: return "downlink_rate";
    case ConstraintFamily::kComputePrecedence: return "compute_precedence";
    case ConstraintFamily::kDownlinkPrecedence: return "downlink_precedence";
    case ConstraintFamily::kExclusivity: return "exclusivity";
    case ConstraintFamily::kUplinkTotal: return "uplink_total";
    case ConstraintFamily::kComputeTotal: return "compute_total";
    case ConstraintFamily::kDownlinkTotal: return "downlink_total";
    case ConstraintFamily::kOffloadRatio: return "offload_ratio";
    case ConstraintFamily::kNonNegative: return "non_negative";
    case ConstraintFamily::kOutOfWindow: return "out_of_window";
  }
  return "unknown";
}

bool FeasibilityReport::feasible() const { return first_violation().empty(); }

std::string FeasibilityReport::first_violation() const {
  for (std::size_t i = 0; i < kNumConstraintFamilies; ++i) {
    if (max_violation[i] > tolerance[i]) {
      return std::string(to_string(static_cast<ConstraintFamily>(i)));
    }
  }
  return {};
}

FeasibilityReport check_feasibility(const PrimalPlan& plan, const ChannelTrace& trace,
                                    const std::vector<VehicleTask>& tasks,
                                    const ScenarioConfig& cfg) {
  const std::size_t K = tasks.size();
  const std::size_t N = trace.num_frames();
  if (plan.uplink_bits.rows() != K || plan.uplink_bits.cols() != N ||
      plan.offload_ratio.size() != K || trace.num_vehicles() != K) {
    throw Error("plan shape does not match the channel trace");
  }
  check_trace_consistency(trace, cfg, tasks);

  FeasibilityReport rep;
  double bit_scale = 1.0;
  for (const auto& t : tasks) bit_scale = std::max(bit_scale, t.input_bits);
  rep.tolerance.fill(kFeasibilityTolerance * bit_scale);
  rep.tolerance[static_cast<int>(ConstraintFamily::kExclusivity)] = 0.0;
  rep.tolerance[static_cast<int>(ConstraintFamily::kOffloadRatio)] = 0.0;

  auto note = [&](ConstraintFamily f, double v) {
    auto& slot = rep.max_violation[static_cast<int>(f)];
    slot = std::max(slot, v);
  };

  for (std::size_t k = 0; k < K; ++k) {
    const double rho = plan.offload_ratio[k];
    note(ConstraintFamily::kOffloadRatio, std::max({0.0, -rho, rho - 1.0}));
    const double L = tasks[k].input_bits;
    const double kappa = tasks[k].output_ratio;

    double up = 0.0, comp = 0.0, down = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      const double lu = plan.uplink_bits(k, c);
      const double lc = plan.compute_bits(k, c);
      const double ld = plan.downlink_bits(k, c);
      note(ConstraintFamily::kNonNegative, std::max({0.0, -lu, -lc, -ld}));
      if (c + 2 >= N) note(ConstraintFamily::kOutOfWindow, std::abs(lu));
      if (c == 0 || c + 1 >= N) note(ConstraintFamily::kOutOfWindow, std::abs(lc));
      if (c < 2) note(ConstraintFamily::kOutOfWindow, std::abs(ld));
      note(ConstraintFamily::kUplinkRate, lu - plan.uplink_slot(k, c) * trace.uplink_cap(k, c));
      if (c >= 2) {
        note(ConstraintFamily::kDownlinkRate,
             ld - plan.downlink_slot(k, c) * trace.downlink_cap(k, c));
      }
    }
    // cumulative precedence over uplink-start frames n: compute n+1, return n+2
    for (std::size_t n = 0; n + 2 < N; ++n) {
      up += plan.uplink_bits(k, n);
      comp += plan.compute_bits(k, n + 1);
      down += plan.downlink_bits(k, n + 2);
      note(ConstraintFamily::kComputePrecedence, comp - up);
      note(ConstraintFamily::kDownlinkPrecedence, down - kappa * comp);
    }
    note(ConstraintFamily::kUplinkTotal, std::abs(up - rho * L));
    note(ConstraintFamily::kComputeTotal, std::abs(comp - rho * L));
    note(ConstraintFamily::kDownlinkTotal, std::abs(down - kappa * rho * L));
  }

  for (std::size_t n = 0; n + 2 < N; ++n) {
    int up_count = 0, down_count = 0;
    for (std::size_t k = 0; k < K; ++k) {
      up_count += plan.uplink_slot(k, n) ? 1 : 0;
      down_count += plan.downlink_slot(k, n + 2) ? 1 : 0;
    }
    note(ConstraintFamily::kExclusivity, std::abs(up_count - 1));
    note(ConstraintFamily::kExclusivity, std::abs(down_count - 1));
  }
  return rep;
}

EnergyBreakdown evaluate_total_energy(const PrimalPlan& plan, const ChannelTrace& trace,
                                      const std::vector<VehicleTask>& tasks,
                                      const ScenarioConfig& cfg) {
  const auto rep = check_feasibility(plan, trace, tasks, cfg);
  if (!rep.feasible()) throw Error("infeasible plan: violates " + rep.first_violation());

  const std::size_t K = tasks.size();
  const std::size_t N = trace.num_frames();
  EnergyBreakdown out{std::vector<double>(K, 0.0), std::vector<double>(K, 0.0), 0.0};
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n + 2 < N; ++n) {
      out.comm_energy[k] += one_by_one_comm_energy(plan.uplink_slot(k, n) != 0,
                                                   plan.uplink_bits(k, n),
                                                   trace.gains(k, n), cfg);
    }
    out.local_energy[k] = local_energy((1.0 - plan.offload_ratio[k]) * tasks[k].input_bits,
                                       tasks[k], cfg.mission_time_s);
    out.total += out.comm_energy[k] + out.local_energy[k];
  }
  return out;
}

}  // namespace vecoff
