#pragma once

#include <vector>

#include "vecoff/scenario.hpp"

namespace vecoff {

/// Largest spectral efficiency (bits per Hz per slot) the transmit-energy
/// formulas accept before raising Error.
inline constexpr double kMaxSpectralEfficiency = 64.0;

/// CPU energy to finish `bits` within `deadline_s` at the slowest sufficient
/// clock: gamma * C^3 * l^3 / T^2.
double local_energy(double bits, double cycles_per_bit, double switched_capacitance,
                    double deadline_s);

double local_energy(double bits, const VehicleTask& task, double deadline_s);

/// Marginal local energy d/dl of local_energy at `bits`.
double local_marginal_energy(double bits, const VehicleTask& task, double deadline_s);

/// Energy to push `bits` through a slot of `duration_s` on a channel with
/// power gain `gain`: (N0 B tau / g) (2^{l/(B tau)} - 1).
double link_energy(double bits, double gain, double duration_s, const ScenarioConfig& cfg);

/// d/dl of link_energy: (N0 ln2 / g) 2^{l/(B tau)}.
double link_marginal_energy(double bits, double gain, double duration_s,
                            const ScenarioConfig& cfg);

/// Transmit power that link_energy implies.
double implied_transmit_power(double bits, double gain, double duration_s,
                              const ScenarioConfig& cfg);

/// One-by-one access: the whole frame belongs to the scheduled vehicle.
double one_by_one_comm_energy(bool scheduled, double bits, double gain,
                              const ScenarioConfig& cfg);

/// Orthogonal access: every vehicle gets a slot of frame / num_vehicles.
double orthogonal_comm_energy(double bits, double gain, const ScenarioConfig& cfg,
                              int num_vehicles);

/// Frame energy minus the rate credit of the uplink cap multiplier.
double uplink_score(double bits, double gain, double lambda_u, const ScenarioConfig& cfg);

/// Rate credit of the downlink cap multiplier; never positive.
double downlink_score(double lambda_d, double gain, const ScenarioConfig& cfg);

struct EnergyBreakdown {
  std::vector<double> comm_energy;   ///< J per vehicle
  std::vector<double> local_energy;  ///< J per vehicle
  double total = 0.0;

  double vehicle_total(std::size_t k) const { return comm_energy[k] + local_energy[k]; }
};

}  // namespace vecoff
