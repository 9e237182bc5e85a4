#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vws/coeffs.hpp"
#include "vws/grid.hpp"
#include "vws/mollify.hpp"
#include "vws/vwsnet.hpp"

namespace vws {

using json = nlohmann::ordered_json;

enum class ExperimentKind { validate_hypotheses, doi_check, solve, net, uniqueness, consistency, mollifier_bench };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from(const std::string& name);
std::vector<std::string> experiment_kind_names();

struct Tolerances {
  double slope_cap = 10.0;     // moderateness: largest accepted slope
  double residual = 0.5;       // largest accepted RMS fit residual
  double variation = 0.10;     // ladder spread of hypothesis and Doi constants
  double consistency = 1e-4;   // final consistency error
  double probe = 0.2;          // mollifier-bench slope tolerance

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct DoiSettings {
  double C1 = 4.0;
  double delta = 0.1;
  int xi_count = 64;       // per axis
  double xi_spacing = 0.05;  // 0 selects the dual lattice of the grid

  friend bool operator==(const DoiSettings&, const DoiSettings&) = default;
};

struct BenchSettings {
  std::array<int, 2> beta{1, 0};  // derivative probe multi-index
  double s = -1.0;                // Sobolev boost order
  std::vector<int> ell{1, 2};

  friend bool operator==(const BenchSettings&, const BenchSettings&) = default;
};

struct ExperimentConfig {
  GridSpec grid{1, 64, 8.0};
  std::string preset = "free";
  ParamMap params;
  Mollifier data_mollifier = Mollifier::gaussian(0.5);
  double coefficient_width = 0.25;
  ScaleFn scale = ScaleFn::loglog();
  std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  double T = 1.0;
  double dt = 0.0;  // 0 means "auto"
  std::vector<double> orders{0.0};
  int N = 0;  // 0 means the model's weight exponent
  ExperimentKind kind = ExperimentKind::solve;
  int q = 3;
  double perturbation_amplitude = 1.0;
  double perturbation_width = 1.0;
  Tolerances tolerances;
  DoiSettings doi;
  BenchSettings bench;
  DataSpec data;
  bool mollify_data = true;
  std::string output_directory = "out";
  int stride = 0;
  std::uint64_t seed = 0;
  int workers = 1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Parses and validates; errors are ConfigError naming the field path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig config_from_json(const json& doc);
json to_json(const ExperimentConfig& cfg);
std::string serialise(const ExperimentConfig& cfg);

// The model the config describes; N overrides the preset weight exponent when set.
CoefficientModel config_model(const ExperimentConfig& cfg);
int weight_exponent(const ExperimentConfig& cfg);
NetParams net_params(const ExperimentConfig& cfg);

// Documentation of every key with its default, for --help.
std::string config_reference();

}  // namespace vws
