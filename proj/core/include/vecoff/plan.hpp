#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "vecoff/energy.hpp"
#include "vecoff/scenario.hpp"

namespace vecoff {

/// Full decision set for one-by-one access. Bit matrices are [K x N] and use
/// absolute frame columns: uplink in 0..N-3, compute in 1..N-2, downlink in
/// 2..N-1. `uplink_slot(k, c)` / `downlink_slot(k, c)` are the wake-up flags.
struct PrimalPlan {
  Matrix uplink_bits;
  Matrix compute_bits;
  Matrix downlink_bits;
  Mask uplink_slot;
  Mask downlink_slot;
  std::vector<double> offload_ratio;

  static PrimalPlan zeros(std::size_t vehicles, std::size_t frames);
};

enum class ConstraintFamily : int {
  kUplinkRate = 0,
  kDownlinkRate,
  kComputePrecedence,
  kDownlinkPrecedence,
  kExclusivity,
  kUplinkTotal,
  kComputeTotal,
  kDownlinkTotal,
  kOffloadRatio,
  kNonNegative,
  kOutOfWindow,
};
inline constexpr std::size_t kNumConstraintFamilies = 11;

std::string_view to_string(ConstraintFamily f);

/// Largest violation seen per constraint family, in bits for bit constraints
/// and in raw units for the rest.
struct FeasibilityReport {
  std::array<double, kNumConstraintFamilies> max_violation{};
  std::array<double, kNumConstraintFamilies> tolerance{};

  bool feasible() const;
  /// First family whose violation exceeds its tolerance, if any.
  std::string first_violation() const;
};

/// Relative slack accepted on every bit constraint (scaled by the task size).
inline constexpr double kFeasibilityTolerance = 1e-9;

FeasibilityReport check_feasibility(const PrimalPlan& plan, const ChannelTrace& trace,
                                    const std::vector<VehicleTask>& tasks,
                                    const ScenarioConfig& cfg);

/// Objective of a plan: one-by-one uplink energy plus local energy of the
/// unoffloaded remainder. Throws Error naming the violated family when the
/// plan is infeasible.
EnergyBreakdown evaluate_total_energy(const PrimalPlan& plan, const ChannelTrace& trace,
                                      const std::vector<VehicleTask>& tasks,
                                      const ScenarioConfig& cfg);

}  // namespace vecoff
