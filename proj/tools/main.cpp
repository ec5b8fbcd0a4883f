// Sweeps the offloading schemes over T, L or K and writes one CSV row per
// (scheme, axis value, seed).
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vecoff/config.hpp"
#include "vecoff/csv.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Energy-minimizing task offloading for vehicular edge computing"};
  std::string config_path, sweep, out_path;
  std::vector<double> values;
  std::vector<std::string> schemes;
  int seeds = 0;
  int jobs = 0;
  std::uint64_t base_seed = 0;
  bool timing = false;

  app.add_option("--config", config_path, "JSON experiment file")->check(CLI::ExistingFile);
  app.add_option("--sweep", sweep, "Sweep axis")->check(CLI::IsMember({"T", "L", "K"}));
  app.add_option("--values", values, "Axis values (seconds, bits or vehicles)")->delimiter(',');
  app.add_option("--schemes", schemes, "one-by-one,orthogonal,equal-bit,local")->delimiter(',');
  auto* seeds_opt = app.add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
  auto* base_opt = app.add_option("--base-seed", base_seed, "First seed");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Record wall time (makes the CSV run-dependent)");
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");
  CLI11_PARSE(app, argc, argv);

  try {
    vecoff::ExperimentSpec spec =
        config_path.empty() ? vecoff::ExperimentSpec{} : vecoff::load_experiment_spec(config_path);
    if (!sweep.empty()) spec.axis = vecoff::parse_axis(sweep);
    if (!values.empty()) spec.values = values;
    if (!schemes.empty()) {
      spec.schemes.clear();
      for (const auto& s : schemes) spec.schemes.push_back(vecoff::parse_scheme(s));
    }
    if (*seeds_opt) spec.num_seeds = seeds;
    if (*base_opt) spec.base_seed = base_seed;
    if (jobs > 0) spec.jobs = jobs;
    spec.record_wall_time = timing;

    const auto rows = vecoff::run_experiment(spec);
    if (out_path.empty()) {
      std::cout << vecoff::format_csv(rows);
    } else {
      vecoff::emit_csv(rows, out_path);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vecoff: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
