#pragma once

#include <filesystem>
#include <string>

#include "vecoff/experiment.hpp"

namespace vecoff {

/// Reads an experiment from JSON text. Every section (scenario, tasks, solver,
/// experiment) and every key is optional and falls back to the defaults;
/// unknown keys are rejected. Noise is given as `noise_psd_dbm_per_hz`.
ExperimentSpec parse_experiment_spec(const std::string& json_text);

ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

}  // namespace vecoff
