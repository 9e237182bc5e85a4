#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vws/fit.hpp"
#include "vws/grid.hpp"
#include "vws/mollify.hpp"
#include "vws/profile.hpp"

namespace vws {

using ParamMap = std::map<std::string, double>;

// Coefficients a_ij = C_ij + perturbation_ij, drift b_k = Re + i Im, real potential V.
struct CoefficientModel {
  std::string name = "custom";
  int dim = 1;
  std::array<std::array<double, 2>, 2> principal{{{1.0, 0.0}, {0.0, 1.0}}};
  std::array<std::array<Profile, 2>, 2> perturbation{};
  std::array<Profile, 2> drift_real{};
  std::array<Profile, 2> drift_imag{};
  Profile potential{};
  int weight_exponent = 2;
  double nu = 0.05;
  double c0 = 0.05;

  bool smooth() const;
  bool principal_constant() const;
};

void validate(const CoefficientModel& model);

std::vector<std::string> preset_names();
// Recognised parameters are listed by preset_parameters(name).
CoefficientModel preset(const std::string& name, int dim, const ParamMap& params = {});
ParamMap preset_parameters(const std::string& name);

// Regularised coefficients on a grid. Entries beyond the model dimension are empty.
struct CoefficientSet {
  explicit CoefficientSet(const GridSpec& g);

  GridSpec grid;
  double eps = 0.0;
  double omega = 0.0;  // 0 means unregularised samples of a smooth model
  std::array<std::array<std::vector<double>, 2>, 2> a;
  std::array<std::array<std::array<std::vector<double>, 2>, 2>, 2> da;  // da[k][i][j] = d_k a_ij
  std::vector<Field> drift;
  Field potential;

  int dim() const { return grid.dim; }
  double principal_norm_max() const;  // max over x of the operator norm of a(x)
  double drift_max() const;
  double potential_max() const;
};

// Mollifies every coefficient at scale omega(eps); the mollifier must be gaussian.
CoefficientSet regularise(const CoefficientModel& model, const Mollifier& m, double eps, const ScaleFn& scale,
                          const GridSpec& g);
CoefficientSet regularise_at(const CoefficientModel& model, const Mollifier& m, double omega, const GridSpec& g);
// Direct samples of a smooth model with spectral derivatives.
CoefficientSet sample_coefficients(const CoefficientModel& model, const GridSpec& g);

struct HypothesisParams {
  int weight_exponent = 2;
  double nu = 0.05;
  double c0 = 0.05;
  std::size_t directions = 64;
  std::vector<double> radii{1.0, 4.0, 16.0};
  double ellipticity_variation = 0.05;
  double envelope_variation = 0.10;
  int max_derivative = 3;
};

HypothesisParams hypothesis_params(const CoefficientModel& model);

struct GrowthFit {
  int order = 0;
  std::vector<double> sups;
  LineFit fit;          // log sup against log omega
  double exponent = 0;  // -slope - order
};

struct HypothesisReport {
  std::vector<double> eps;
  std::vector<double> omega;

  bool symmetric_real = true;

  std::vector<double> ratio_min;  // min over x, xi of |a(x) xi| / |xi|, per eps
  std::vector<double> ratio_max;
  std::vector<double> mu_per_eps;
  double mu = 0.0;
  double mu_variation = 0.0;
  bool ellipticity_pass = false;

  std::vector<double> principal_slope_sup;  // sup <x>^N |d_k a_ij|
  double principal_slope_constant = 0.0;     // max sup / nu
  double principal_slope_variation = 0.0;
  bool principal_slope_pass = false;

  std::vector<double> drift_imag_sup;  // sup <x>^N |Im b_k|
  double drift_imag_constant = 0.0;
  double drift_imag_variation = 0.0;
  bool drift_imag_pass = false;

  std::vector<GrowthFit> drift_growth;
  std::vector<GrowthFit> potential_growth;
  double drift_exponent = 0.0;      // N1
  double potential_exponent = 0.0;  // N2
  bool drift_growth_pass = false;
  bool potential_growth_pass = false;

  double support_radius = 0.0;  // of Re b and V at the smallest eps
  bool support_within_half_domain = false;

  bool pass() const;
};

HypothesisReport check_hypotheses(std::span<const CoefficientSet> sets, const HypothesisParams& params);

}  // namespace vws
