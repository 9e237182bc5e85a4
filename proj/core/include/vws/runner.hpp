#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "vws/config.hpp"

namespace vws {

inline constexpr const char* kSoftwareName = "vws";
inline constexpr const char* kSoftwareVersion = "0.3.0";

struct RunOptions {
  std::filesystem::path out_dir = "out";
  bool write_files = true;
  std::ostream* log = nullptr;  // progress lines when set
};

struct RunResult {
  json report;  // software, experiment, config, result, pass, timings
  bool pass = false;
  std::vector<std::filesystem::path> files;
};

// Runs the experiment the config describes and writes its artifacts.
// Module errors propagate with the ladder value and stage prepended.
RunResult run(const ExperimentConfig& cfg, const RunOptions& options = {});

// True when every boolean stored under a key named "pass" is true.
bool all_pass(const json& doc);

}  // namespace vws
