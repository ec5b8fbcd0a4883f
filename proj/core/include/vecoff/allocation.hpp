#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vecoff/scenario.hpp"

namespace vecoff {

/// One vehicle's share of a frozen schedule.
///
/// Uplink vectors are indexed by uplink-start frame (0 .. N-3); bits sent
/// there are computed one frame later and returned two frames later.
/// `downlink_cap` is indexed by absolute frame (0 .. N-1); entries 0 and 1
/// are never used.
struct PipelineChannel {
  double slot_duration_s = 0.0;
  std::vector<double> uplink_gain;
  std::vector<double> uplink_cap;
  std::vector<double> downlink_cap;
  double output_ratio = 0.5;

  std::size_t num_uplink_frames() const { return uplink_cap.size(); }
  std::size_t num_frames() const { return downlink_cap.size(); }

  /// Most input bits that may still be uplinked from frame i onwards so that
  /// their output fits the downlink capacity of frames i+2 .. N-1.
  std::vector<double> suffix_limits() const;
};

/// Minimum-energy uplink split for a fixed number of bits.
struct UplinkSolution {
  std::vector<double> bits;
  /// Marginal-energy level (J/bit) each frame was filled to. Non-increasing;
  /// a drop marks a binding downlink-deadline constraint.
  std::vector<double> level;
  double energy = 0.0;
};

struct PipelineFill {
  std::vector<double> compute;   ///< absolute frame index
  std::vector<double> downlink;  ///< absolute frame index
};

/// Largest total the schedule can carry end to end.
double max_offloadable_bits(const PipelineChannel& ch);

/// Solves min sum E(l_i) s.t. 0 <= l_i <= cap_i, sum l_i = required,
/// and the downlink-deadline suffix limits. nullopt when infeasible.
std::optional<UplinkSolution> solve_uplink(const PipelineChannel& ch, double required_bits,
                                           const ScenarioConfig& cfg);

/// Compute in the frame right after each uplink, then return output as early
/// as the downlink caps allow.
PipelineFill fill_pipeline(const PipelineChannel& ch, std::span<const double> uplink_bits);

/// Largest normalized violation among primal feasibility, stationarity of
/// the marginal energies against the reported levels, level monotonicity
/// and complementary slackness of the suffix limits.
double kkt_residual(const PipelineChannel& ch, const UplinkSolution& sol,
                    double required_bits, const ScenarioConfig& cfg);

/// Outcome of the per-vehicle search over the offloading ratio.
struct OffloadDecision {
  double ratio = 0.0;
  double comm_energy = 0.0;
  double local_energy = 0.0;
  UplinkSolution uplink;

  double total() const { return comm_energy + local_energy; }
};

/// Golden-section over rho in [0, rho_max] of uplink energy + local energy of
/// the remainder. Both endpoints are also evaluated so rho = 0 always counts.
OffloadDecision optimize_offload_ratio(const PipelineChannel& ch, const VehicleTask& task,
                                       const ScenarioConfig& cfg, double tolerance);

/// Energy of the minimum-energy uplink of `ratio * L` bits (+inf when the
/// schedule cannot carry it).
double offload_cost(const PipelineChannel& ch, const VehicleTask& task,
                    const ScenarioConfig& cfg, double ratio);

}  // namespace vecoff
