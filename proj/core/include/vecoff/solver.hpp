#pragma once

#include <array>
#include <span>
#include <vector>

#include "vecoff/allocation.hpp"
#include "vecoff/plan.hpp"

namespace vecoff {

enum class TieBreak { kLowestIndex, kHighestIndex };

/// Index of each multiplier family inside DualState step arrays.
enum StepIndex : std::size_t {
  kStepUplinkRate = 0,
  kStepDownlinkRate,
  kStepComputePrecedence,
  kStepDownlinkPrecedence,
  kStepUplinkTotal,
  kStepComputeTotal,
  kStepDownlinkTotal,
  kNumSteps
};

struct SolverConfig {
  int max_iterations = 500;
  /// Relative change of the dual value over `convergence_window`
  /// iterations below which the dual ascent stops.
  double dual_tolerance = 1e-4;
  int convergence_window = 10;
  double kkt_tolerance = 1e-6;
  /// Multiplies the natural-scale initial step sizes.
  double step_scale = 1.0;
  /// Absolute bracket width of the golden-section search over rho.
  double ratio_tolerance = 1e-4;
  TieBreak tie_break = TieBreak::kLowestIndex;
  /// Sweeps of single-frame owner moves applied to the best recovered plan.
  int local_search_passes = 3;
  /// When false the dual ascent always runs max_iterations.
  bool stop_at_convergence = true;

  void validate() const;
};

/// Multipliers of the relaxed constraints. Per-frame matrices are
/// [K x (N-2)] and indexed by uplink-start frame; the downlink ones refer to
/// the frame two later.
struct DualState {
  Matrix lambda_u;  ///< uplink rate caps, >= 0
  Matrix lambda_d;  ///< downlink rate caps, >= 0
  Matrix mu_u;      ///< compute-after-uplink precedence, >= 0
  Matrix mu_d;      ///< downlink-after-compute precedence, >= 0
  std::vector<double> u_u;  ///< uplink total
  std::vector<double> u_c;  ///< compute total
  std::vector<double> u_d;  ///< downlink total
  std::array<double, kNumSteps> initial_steps{};
  std::array<double, kNumSteps> steps{};
  int iteration = 1;

  static DualState zeros(std::size_t vehicles, std::size_t uplink_frames,
                         const std::array<double, kNumSteps>& initial_steps);
};

/// Initial step sizes: a price scale (J/bit) over each residual's natural
/// magnitude (bits measured against the largest task), times `scale`.
std::array<double, kNumSteps> natural_step_sizes(double price, double max_bits,
                                                 const ScenarioConfig& cfg, double scale);

/// Offloading ratio minimizing the Lagrangian for the given total-bit
/// multipliers: 1 - sqrt(clamp01((u_u + u_c + kappa u_d) T^2 / (3 gamma C^3 L^2))).
double optimal_offload_ratio(double u_u, double u_c, double u_d, const VehicleTask& task,
                             double deadline_s);
double optimal_offload_ratio(const DualState& duals, std::size_t vehicle,
                             const VehicleTask& task, double deadline_s);

struct Schedule {
  Mask uplink;    ///< [K x N], one flag per column 0..N-3
  Mask downlink;  ///< [K x N], one flag per column 2..N-1
};

/// Per-frame argmin of the given scores. Only arrived vehicles compete; a
/// frame with none goes to vehicle 0. Score matrices use absolute columns
/// like Schedule.
Schedule select_schedule(const Matrix& uplink_scores, const Matrix& downlink_scores,
                         const ChannelTrace& trace, TieBreak tie = TieBreak::kLowestIndex);

/// Wake-up scheduling for fixed multipliers and candidate bits: each frame
/// goes to the vehicle whose frame score is lowest. The uplink score is the
/// F-score (frame energy minus rate credit) plus the linear prices the
/// candidate's own bits carry; the downlink score likewise. With all
/// multipliers zero the scores reduce to the F-scores.
Schedule optimal_schedule(const DualState& duals, const Matrix& uplink_bits,
                          const Matrix& downlink_bits, const ChannelTrace& trace,
                          const std::vector<VehicleTask>& tasks, const ScenarioConfig& cfg,
                          TieBreak tie = TieBreak::kLowestIndex);

/// Value of the Lagrangian at an arbitrary plan.
double lagrangian_value(const PrimalPlan& plan, const DualState& duals,
                        const ChannelTrace& trace, const std::vector<VehicleTask>& tasks,
                        const ScenarioConfig& cfg);

/// Exact minimizer of the Lagrangian over the kept constraints: one vehicle
/// per frame, rho in [0,1], and bits bounded by the task size on the slot
/// the vehicle holds. `value` is the dual function at `duals`.
struct LagrangianPoint {
  PrimalPlan plan;
  double value = 0.0;
};
LagrangianPoint minimize_lagrangian(const DualState& duals, const ChannelTrace& trace,
                                    const std::vector<VehicleTask>& tasks,
                                    const ScenarioConfig& cfg,
                                    TieBreak tie = TieBreak::kLowestIndex);

/// Projected subgradient step along the residuals of `iterate`. Inequality
/// multipliers are clipped at zero; step sizes decay as initial / sqrt(z).
DualState update_duals(const DualState& duals, const PrimalPlan& iterate,
                       const ChannelTrace& trace, const std::vector<VehicleTask>& tasks,
                       const ScenarioConfig& cfg);

/// Vehicle k's view of a schedule under one-by-one access.
PipelineChannel vehicle_channel(const Schedule& schedule, std::size_t vehicle,
                                const VehicleTask& task, const ChannelTrace& trace,
                                const ScenarioConfig& cfg);

enum class AllocationStatus { kOptimal, kInfeasible };

struct BitAllocation {
  AllocationStatus status = AllocationStatus::kOptimal;
  Matrix uplink_bits;
  Matrix compute_bits;
  Matrix downlink_bits;
  double objective = 0.0;     ///< uplink energy, J
  double kkt_residual = 0.0;  ///< worst per-vehicle residual
  std::vector<std::size_t> infeasible_vehicles;
};

/// Minimum-energy bit allocation for fixed schedules and offloading ratios.
BitAllocation solve_bit_allocation(const Schedule& schedule, std::span<const double> ratios,
                                   const ChannelTrace& trace,
                                   const std::vector<VehicleTask>& tasks,
                                   const ScenarioConfig& cfg, const SolverConfig& solver_cfg);

struct SolveReport {
  PrimalPlan plan;
  EnergyBreakdown energy;
  FeasibilityReport feasibility;
  std::vector<double> dual_history;    ///< dual function value per iteration, J
  std::vector<double> primal_history;  ///< recovered plan energy per iteration, J
  double best_dual = 0.0;
  /// (primal - best dual) / primal
  double gap = 0.0;
  double kkt_residual = 0.0;
  int iterations_used = 0;
  double wall_time_s = 0.0;
  DualState final_duals;
};

/// Dual ascent with primal recovery. Every iterate's schedule is frozen and
/// each vehicle's ratio is found by golden-section search; the cheapest
/// recovered plan is returned, so the result is always feasible.
SolveReport run_algorithm1(const ScenarioConfig& cfg, const std::vector<VehicleTask>& tasks,
                           const ChannelTrace& trace, const SolverConfig& solver_cfg);

}  // namespace vecoff
