#include "vecoff/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vecoff {

double local_energy(double bits, double cycles_per_bit, double switched_capacitance,
                    double deadline_s) {
  const double cycles = cycles_per_bit * bits;
  return switched_capacitance * cycles * cycles * cycles / (deadline_s * deadline_s);
}

double local_energy(double bits, const VehicleTask& task, double deadline_s) {
  return local_energy(bits, task.cycles_per_bit, task.switched_capacitance, deadline_s);
}

double local_marginal_energy(double bits, const VehicleTask& task, double deadline_s) {
  const double c = task.cycles_per_bit;
  return 3.0 * task.switched_capacitance * c * c * c * bits * bits /
         (deadline_s * deadline_s);
}

namespace {

double spectral_efficiency(double bits, double duration_s, const ScenarioConfig& cfg) {
  const double x = bits / (cfg.bandwidth_hz * duration_s);
  if (x > kMaxSpectralEfficiency) {
    throw Error("transmit energy overflow guard: " + std::to_string(x) +
                " bits/Hz in one slot exceeds " +
                std::to_string(kMaxSpectralEfficiency));
  }
  return x;
}

}  // namespace

double link_energy(double bits, double gain, double duration_s, const ScenarioConfig& cfg) {
  if (bits <= 0.0) return 0.0;
  if (!(gain > 0.0)) throw Error("cannot transmit over a zero-gain channel");
  const double x = spectral_efficiency(bits, duration_s, cfg);
  return cfg.noise_power_w() * duration_s / gain * std::expm1(x * std::numbers::ln2);
}

double link_marginal_energy(double bits, double gain, double duration_s,
                            const ScenarioConfig& cfg) {
  if (!(gain > 0.0)) throw Error("cannot transmit over a zero-gain channel");
  const double x = spectral_efficiency(std::max(bits, 0.0), duration_s, cfg);
  return cfg.noise_psd_w_per_hz * std::numbers::ln2 / gain * std::exp2(x);
}

double implied_transmit_power(double bits, double gain, double duration_s,
                              const ScenarioConfig& cfg) {
  return link_energy(bits, gain, duration_s, cfg) / duration_s;
}

double one_by_one_comm_energy(bool scheduled, double bits, double gain,
                              const ScenarioConfig& cfg) {
  if (!scheduled) return 0.0;
  return link_energy(bits, gain, cfg.frame_duration_s, cfg);
}

double orthogonal_comm_energy(double bits, double gain, const ScenarioConfig& cfg,
                              int num_vehicles) {
  if (num_vehicles < 1) throw Error("orthogonal access needs at least one vehicle");
  return link_energy(bits, gain, cfg.frame_duration_s / num_vehicles, cfg);
}

double uplink_score(double bits, double gain, double lambda_u, const ScenarioConfig& cfg) {
  const double energy = bits > 0.0 ? link_energy(bits, gain, cfg.frame_duration_s, cfg) : 0.0;
  return energy - lambda_u * std::log2(1.0 + cfg.vehicle_max_power_w * gain /
                                                 cfg.noise_power_w());
}

double downlink_score(double lambda_d, double gain, const ScenarioConfig& cfg) {
  return -lambda_d * std::log2(1.0 + cfg.rsu_power_w * gain / cfg.noise_power_w());
}

}  // namespace vecoff
