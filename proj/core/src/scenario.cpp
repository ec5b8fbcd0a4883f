#include "vecoff/scenario.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vecoff/random.hpp"

namespace vecoff {

double dbm_per_hz_to_watts(double dbm_per_hz) {
  return std::pow(10.0, dbm_per_hz / 10.0) * 1e-3;
}

int ScenarioConfig::num_frames() const {
  const double ratio = mission_time_s / frame_duration_s;
  return static_cast<int>(std::floor(ratio * (1.0 + 1e-9)));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error("invalid scenario: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ScenarioConfig::validate() const {
  require(num_rsus >= 1, "num_rsus must be >= 1");
  require(num_lanes >= 1, "num_lanes must be >= 1");
  require(static_cast<int>(lane_speeds_mps.size()) == num_lanes,
          "lane_speeds_mps needs one entry per lane");
  for (double v : lane_speeds_mps) require(positive(v), "lane speeds must be > 0");
  require(positive(rsu_spacing_m), "rsu_spacing_m must be > 0");
  require(positive(rsu_radius_m), "rsu_radius_m must be > 0");
  require(positive(rsu_height_m), "rsu_height_m must be > 0");
  require(positive(lane_width_m), "lane_width_m must be > 0");
  require(positive(mission_time_s), "mission_time_s must be > 0");
  require(positive(frame_duration_s), "frame_duration_s must be > 0");
  require(positive(bandwidth_hz), "bandwidth_hz must be > 0");
  require(positive(noise_psd_w_per_hz), "noise_psd must be > 0");
  require(positive(vehicle_max_power_w), "vehicle_max_power_w must be > 0");
  require(positive(rsu_power_w), "rsu_power_w must be > 0");
  require(positive(ref_gain), "ref_gain must be > 0");
  require(std::isfinite(pathloss_exponent) && pathloss_exponent >= 2.0,
          "pathloss_exponent must be >= 2");
  require(num_frames() >= 3,
          "horizon holds " + std::to_string(num_frames()) +
              " frames; uplink, compute and downlink need at least 3");
}

void VehicleTask::validate(const ScenarioConfig& cfg) const {
  auto fail = [](const std::string& what) { throw Error("invalid task: " + what); };
  if (lane < 0 || lane >= cfg.num_lanes) fail("lane out of range");
  if (!(input_bits > 0.0) || !std::isfinite(input_bits)) fail("input_bits must be > 0");
  if (!(cycles_per_bit > 0.0)) fail("cycles_per_bit must be > 0");
  if (!(output_ratio > 0.0 && output_ratio < 1.0)) fail("output_ratio must be in (0,1)");
  if (!(switched_capacitance > 0.0)) fail("switched_capacitance must be > 0");
  if (!(arrival_time_s >= 0.0 && arrival_time_s < cfg.mission_time_s))
    fail("arrival_time_s must be in [0, T)");
}

Position vehicle_position(const VehicleTask& task, int frame_number,
                          const ScenarioConfig& cfg) {
  const double elapsed = frame_number * cfg.frame_duration_s - task.arrival_time_s;
  return {elapsed * cfg.lane_speeds_mps.at(static_cast<std::size_t>(task.lane)),
          task.lane * cfg.lane_width_m};
}

RsuDistance nearest_rsu(Position pos, const ScenarioConfig& cfg) {
  RsuDistance best{0, std::numeric_limits<double>::infinity()};
  const double h2 = cfg.rsu_height_m * cfg.rsu_height_m;
  for (int m = 0; m < cfg.num_rsus; ++m) {
    const double dx = pos.x - (cfg.rsu_radius_m + m * cfg.rsu_spacing_m);
    const double d2 = dx * dx + pos.y * pos.y + h2;
    // strict comparison keeps the lowest index on ties
    if (d2 < best.squared_distance_m2) best = {m, d2};
  }
  return best;
}

double large_scale_gain(Position pos, const ScenarioConfig& cfg) {
  const double d2 = nearest_rsu(pos, cfg).squared_distance_m2;
  return cfg.ref_gain / std::pow(d2, 0.5 * cfg.pathloss_exponent);
}

double link_capacity_bits(double gain, double power_w, double duration_s,
                          const ScenarioConfig& cfg) {
  return cfg.bandwidth_hz * duration_s *
         std::log2(1.0 + power_w * gain / cfg.noise_power_w());
}

double fading_draw(std::uint64_t seed, std::size_t vehicle, std::size_t frame) {
  return unit_exponential(
      mix_key(seed, vehicle, frame, static_cast<std::uint64_t>(Stream::kFading)));
}

ChannelTrace generate_channel_trace(const ScenarioConfig& cfg,
                                    const std::vector<VehicleTask>& tasks) {
  cfg.validate();
  if (tasks.empty()) throw Error("channel trace needs at least one vehicle");
  for (const auto& t : tasks) t.validate(cfg);

  const std::size_t K = tasks.size();
  const auto N = static_cast<std::size_t>(cfg.num_frames());
  ChannelTrace trace{Matrix(K, N), Matrix(K, N), Matrix(K, N), Mask(K, N)};

  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t c = 0; c < N; ++c) {
      const int n = static_cast<int>(c) + 1;
      const double small = cfg.fading_enabled ? fading_draw(cfg.rng_seed, k, c) : 1.0;
      const double gain = small * large_scale_gain(vehicle_position(tasks[k], n, cfg), cfg);
      const bool arrived = n * cfg.frame_duration_s >= tasks[k].arrival_time_s;
      trace.gains(k, c) = gain;
      trace.active(k, c) = arrived ? 1 : 0;
      if (arrived) {
        trace.uplink_cap(k, c) =
            link_capacity_bits(gain, cfg.vehicle_max_power_w, cfg.frame_duration_s, cfg);
        trace.downlink_cap(k, c) =
            link_capacity_bits(gain, cfg.rsu_power_w, cfg.frame_duration_s, cfg);
      }
    }
  }
  return trace;
}

void check_trace_consistency(const ChannelTrace& trace, const ScenarioConfig& cfg,
                             const std::vector<VehicleTask>& tasks) {
  const auto N = static_cast<std::size_t>(cfg.num_frames());
  const std::size_t K = tasks.size();
  auto shaped = [&](const auto& m) { return m.rows() == K && m.cols() == N; };
  if (!shaped(trace.gains) || !shaped(trace.uplink_cap) ||
      !shaped(trace.downlink_cap) || !shaped(trace.active)) {
    throw Error("channel trace shape does not match " + std::to_string(K) +
                " vehicles x " + std::to_string(N) + " frames");
  }
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t c = 0; c < N; ++c) {
      const bool on = trace.active(k, c) != 0;
      if (trace.gains(k, c) < 0.0 || trace.uplink_cap(k, c) < 0.0 ||
          trace.downlink_cap(k, c) < 0.0) {
        throw Error("channel trace holds negative entries");
      }
      if (!on && (trace.uplink_cap(k, c) > 0.0 || trace.downlink_cap(k, c) > 0.0)) {
        throw Error("channel trace has capacity before arrival");
      }
    }
  }
}

}  // namespace vecoff
