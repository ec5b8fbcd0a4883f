#include "vecoff/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace vecoff {

namespace {

using nlohmann::json;

// Reads the keys of one section, then rejects any key nobody asked for.
class Section {
 public:
  Section(const json& root, const char* name) : name_(name) {
    if (root.contains(name)) {
      node_ = root.at(name);
      if (!node_.is_object()) throw Error(std::string("section '") + name + "' must be an object");
    } else {
      node_ = json::object();
    }
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    try {
      out = node_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(name_ + "." + key + ": " + e.what());
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw Error("unknown key '" + name_ + "." + key + "'");
    }
  }

 private:
  std::string name_;
  json node_;
  std::set<std::string> seen_;
};

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed config: ") + e.what());
  }
  if (!root.is_object()) throw Error("config must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (key != "scenario" && key != "tasks" && key != "solver" && key != "experiment") {
      throw Error("unknown section '" + key + "'");
    }
  }

  ExperimentSpec spec;
  {
    auto& c = spec.scenario;
    Section s(root, "scenario");
    s.read("num_rsus", c.num_rsus);
    s.read("rsu_spacing_m", c.rsu_spacing_m);
    s.read("rsu_radius_m", c.rsu_radius_m);
    s.read("rsu_height_m", c.rsu_height_m);
    s.read("num_lanes", c.num_lanes);
    s.read("lane_width_m", c.lane_width_m);
    s.read("lane_speeds_mps", c.lane_speeds_mps);
    s.read("mission_time_s", c.mission_time_s);
    s.read("frame_duration_s", c.frame_duration_s);
    s.read("bandwidth_hz", c.bandwidth_hz);
    double noise_dbm = 0.0;
    s.read("noise_psd_dbm_per_hz", noise_dbm);
    if (s.has("noise_psd_dbm_per_hz")) c.noise_psd_w_per_hz = dbm_per_hz_to_watts(noise_dbm);
    s.read("vehicle_max_power_w", c.vehicle_max_power_w);
    s.read("rsu_power_w", c.rsu_power_w);
    s.read("ref_gain", c.ref_gain);
    s.read("pathloss_exponent", c.pathloss_exponent);
    s.read("fading_enabled", c.fading_enabled);
    s.finish();
  }
  {
    auto& t = spec.tasks;
    Section s(root, "tasks");
    s.read("num_vehicles", t.num_vehicles);
    s.read("input_bits", t.input_bits);
    s.read("cycles_per_bit", t.cycles_per_bit);
    s.read("output_ratio", t.output_ratio);
    s.read("switched_capacitance", t.switched_capacitance);
    s.read("arrival_window_s", t.arrival_window_s);
    s.finish();
  }
  {
    auto& c = spec.solver;
    Section s(root, "solver");
    s.read("max_iterations", c.max_iterations);
    s.read("dual_tolerance", c.dual_tolerance);
    s.read("convergence_window", c.convergence_window);
    s.read("kkt_tolerance", c.kkt_tolerance);
    s.read("step_scale", c.step_scale);
    s.read("ratio_tolerance", c.ratio_tolerance);
    s.read("local_search_passes", c.local_search_passes);
    s.finish();
  }
  {
    Section s(root, "experiment");
    std::string axis = std::string(to_string(spec.axis));
    s.read("sweep", axis);
    spec.axis = parse_axis(axis);
    s.read("values", spec.values);
    if (s.has("schemes")) {
      std::vector<std::string> tags;
      s.read("schemes", tags);
      spec.schemes.clear();
      for (const auto& tag : tags) spec.schemes.push_back(parse_scheme(tag));
    }
    s.read("num_seeds", spec.num_seeds);
    s.read("base_seed", spec.base_seed);
    s.read("jobs", spec.jobs);
    s.finish();
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_experiment_spec(text.str());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace vecoff
