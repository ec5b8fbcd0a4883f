#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vecoff/grid.hpp"

namespace vecoff {

/// Converts a noise spectral density from dBm/Hz to W/Hz.
double dbm_per_hz_to_watts(double dbm_per_hz);

/// Immutable description of the road, the RSUs and the radio.
///
/// Lanes are 0-based here: lane j sits at y = j * lane_width_m. Frame numbers
/// passed to the geometric helpers are 1-based (frame n covers
/// [(n-1)*frame, n*frame)); everything stored in matrices is 0-based.
struct ScenarioConfig {
  int num_rsus = 4;
  double rsu_spacing_m = 500.0;
  double rsu_radius_m = 250.0;
  double rsu_height_m = 20.0;
  int num_lanes = 3;
  double lane_width_m = 4.0;
  std::vector<double> lane_speeds_mps = {30.0, 32.5, 35.0};
  double mission_time_s = 25.0;
  double frame_duration_s = 0.03;
  double bandwidth_hz = 20e6;
  double noise_psd_w_per_hz = dbm_per_hz_to_watts(-114.0);
  double vehicle_max_power_w = 1.0;
  double rsu_power_w = 2.0;
  /// -40 dB at 1 m, the usual reference gain for sub-6 GHz road links.
  double ref_gain = 1e-4;
  double pathloss_exponent = 2.0;
  std::uint64_t rng_seed = 1;
  /// When false every small-scale fading draw is exactly 1.
  bool fading_enabled = true;

  /// floor(T / frame). A relative slack of 1e-9 absorbs representation error
  /// (0.15 / 0.03 evaluates to 4.999...).
  int num_frames() const;
  /// Number of frames that can start an uplink (uplink, compute, downlink).
  int num_uplink_frames() const { return num_frames() - 2; }
  /// Bits per frame per unit spectral efficiency (B * frame duration).
  double frame_bits() const { return bandwidth_hz * frame_duration_s; }
  double noise_power_w() const { return noise_psd_w_per_hz * bandwidth_hz; }

  /// Throws Error on non-physical values or a horizon shorter than 3 frames.
  void validate() const;
};

struct VehicleTask {
  int lane = 0;
  double arrival_time_s = 0.0;
  double input_bits = 0.0;
  double cycles_per_bit = 1550.7;
  double output_ratio = 0.5;
  double switched_capacitance = 1e-28;

  void validate(const ScenarioConfig& cfg) const;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct RsuDistance {
  int rsu = 0;  ///< 0-based index of the closest RSU
  double squared_distance_m2 = 0.0;  ///< 3-D, includes the antenna height
};

/// Per-vehicle, per-frame channel state. All matrices are [K x N].
struct ChannelTrace {
  Matrix gains;          ///< |h|^2
  Matrix uplink_cap;     ///< bits a vehicle can push at full power in a frame
  Matrix downlink_cap;   ///< bits the RSU can push at full power in a frame
  Mask active;           ///< vehicle has arrived by the end of the frame

  std::size_t num_vehicles() const { return gains.rows(); }
  std::size_t num_frames() const { return gains.cols(); }
};

Position vehicle_position(const VehicleTask& task, int frame_number,
                          const ScenarioConfig& cfg);

RsuDistance nearest_rsu(Position pos, const ScenarioConfig& cfg);

double large_scale_gain(Position pos, const ScenarioConfig& cfg);

/// Bits carried in a slot of `duration_s` at transmit power `power_w`.
double link_capacity_bits(double gain, double power_w, double duration_s,
                          const ScenarioConfig& cfg);

/// Unit-mean exponential draw (|h_s|^2 of unit-variance Rayleigh) from a
/// stream keyed only by (seed, vehicle, frame).
double fading_draw(std::uint64_t seed, std::size_t vehicle, std::size_t frame);

ChannelTrace generate_channel_trace(const ScenarioConfig& cfg,
                                    const std::vector<VehicleTask>& tasks);

/// Checks shapes and the caps-vs-active relation against cfg/tasks.
void check_trace_consistency(const ChannelTrace& trace, const ScenarioConfig& cfg,
                             const std::vector<VehicleTask>& tasks);

}  // namespace vecoff
