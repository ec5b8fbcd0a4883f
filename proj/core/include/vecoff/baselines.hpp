#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecoff/plan.hpp"
#include "vecoff/scenario.hpp"

namespace vecoff {

enum class Scheme { kOneByOne, kOrthogonal, kEqualBit, kLocal };

std::string_view to_string(Scheme s);
/// Accepts the CSV tags: one-by-one, orthogonal, equal-bit, local.
Scheme parse_scheme(std::string_view tag);

/// Frame whose required bits exceed the cap (equal-bit baseline only).
struct CapViolation {
  std::size_t vehicle = 0;
  std::size_t frame = 0;  ///< absolute 0-based frame
  bool downlink = false;
  double required_bits = 0.0;
  double cap_bits = 0.0;
};

struct BaselineResult {
  Scheme scheme = Scheme::kLocal;
  std::vector<double> per_vehicle;  ///< J
  double total = 0.0;               ///< J, sum of per_vehicle
  /// Bits, wake-up flags and ratios. For orthogonal access the flags mark the
  /// frames where the vehicle owns a slot.
  std::optional<PrimalPlan> plan;
  bool infeasible_at_cap = false;
  std::vector<CapViolation> cap_violations;
};

/// Every task computed on board: sum of gamma C^3 L^3 / T^2.
BaselineResult local_execution_total(const std::vector<VehicleTask>& tasks, double deadline_s);

/// Orthogonal access: each frame is split into K dedicated slots, so the
/// vehicles decouple. Per vehicle, capped level filling over its slots inside
/// a golden-section search over rho.
BaselineResult orthogonal_optimize(const ScenarioConfig& cfg,
                                   const std::vector<VehicleTask>& tasks,
                                   const ChannelTrace& trace, double ratio_tolerance = 1e-4);

/// Naive one-by-one access: uplink frames go round-robin by vehicle index,
/// the downlink two frames later follows the same vehicle, rho = 1 and every
/// vehicle splits its bits equally over the assigned frames it has arrived
/// for. Frames that cannot carry their share are flagged, not rejected.
BaselineResult equal_bit_one_by_one(const ScenarioConfig& cfg,
                                    const std::vector<VehicleTask>& tasks,
                                    const ChannelTrace& trace);

}  // namespace vecoff
