#pragma once

// Experiment presets are INI-style files:
//
//   [experiment]
//   name = accel
//   modes = uniform, uamm
//   rate_points = 32:8, 16:8, 8:8, 4:8     ; block_size:search_range
//
//   [sequence.ball]
//   type = synthetic
//   width = 64
//   ...
//
// Every key is checked; unknown sections or keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "uamm/experiment.hpp"

namespace uamm {

// seedOverride replaces [experiment] seed before sequence seeds are derived.
ExperimentConfig parseConfig(const std::string& text, std::optional<uint32_t> seedOverride = std::nullopt);
ExperimentConfig loadConfig(const std::filesystem::path& path, std::optional<uint32_t> seedOverride = std::nullopt);

// Reads a synthetic sequence description from a file holding either a
// [trajectory] section or a single [sequence.<name>] section.
SequenceConfig loadTrajectoryFile(const std::filesystem::path& path);

PredictionMode parseMode(const std::string& name);
FieldSource parseFieldSource(const std::string& name);

} // namespace uamm
