#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vws/coeffs.hpp"
#include "vws/error.hpp"
#include "vws/evolve.hpp"
#include "vws/fit.hpp"
#include "vws/mollify.hpp"
#include "vws/profile.hpp"

namespace vws {

// Initial data or forcing shape before regularisation.
struct DataField {
  enum class Kind { profile, plane_wave, rough };

  Kind kind = Kind::profile;
  Profile profile;                 // profile: real closed form, possibly singular
  std::array<int, 2> wave{1, 0};   // plane_wave: amplitude exp(i k.x), k in mode numbers
  double amplitude = 1.0;
  double decay = 0.51;             // rough: coefficients <kappa>^-decay with random phases

  static DataField zero() { return {}; }
  static DataField from(const Profile& p) { return {Kind::profile, p}; }
  static DataField plane(std::array<int, 2> k, double amp = 1.0) { return {Kind::plane_wave, {}, k, amp}; }
  static DataField rough(double decay, double amp = 1.0) { return {Kind::rough, {}, {1, 0}, amp, decay}; }

  bool is_zero() const;
  bool smooth() const;

  friend bool operator==(const DataField&, const DataField&) = default;
};

void validate(const DataField& d, int dim);

// Grid realisation without mollification; singular profiles use their truncated Fourier series.
Field materialise(const DataField& d, const GridSpec& g, std::uint64_t seed);

struct DataSpec {
  DataField u0;
  DataField forcing;
  Forcing::Time forcing_time = Forcing::Time::constant;
  double forcing_frequency = 0.0;
  double amplitude_power = 0.0;  // u0 is scaled by eps^p along the ladder

  friend bool operator==(const DataSpec&, const DataSpec&) = default;
};

struct NetParams {
  GridSpec grid;
  Mollifier coefficient_mollifier = Mollifier::gaussian(0.25);
  Mollifier data_mollifier = Mollifier::gaussian(0.5);
  ScaleFn scale = ScaleFn::loglog();
  std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  double T = 1.0;
  double dt = 0.0;  // 0 selects the stability rule per member
  std::vector<double> orders{0.0};
  int N = 2;
  bool mollify_data = true;  // false keeps the data fixed across the ladder
  bool check_hypotheses = true;
  int workers = 1;
  int snapshot_stride = 0;
  std::uint64_t seed = 0;
  double slope_cap = 10.0;
  double max_residual = 0.5;
};

inline constexpr std::size_t kMinLadder = 4;

struct NetMember {
  double eps = 0.0;
  double omega = 0.0;
  CoefficientSet cs;
  Field u0;
  Forcing forcing;
  Solution solution;
};

struct EpsilonNet {
  NetParams params;
  std::vector<NetMember> members;
  std::optional<HypothesisReport> hypotheses;
};

// Raised when the regularised coefficients fail the structural hypotheses.
class HypothesisFailure : public Error {
 public:
  HypothesisFailure(const std::string& what, HypothesisReport report) : Error(what), report(std::move(report)) {}
  HypothesisReport report;
};

struct FitReport {
  std::string quantity;
  std::vector<double> eps;
  std::vector<double> omega;
  std::vector<double> values;
  LineFit fit;
  double bound = 0.0;  // the slope threshold the verdict compares against
  bool pass = false;
  std::string note;
};

// Regularised problem data for one ladder member.
CoefficientSet net_coefficients(const CoefficientModel& model, const NetParams& p, double eps);
Field net_initial_data(const DataSpec& data, const NetParams& p, double eps);
Forcing net_forcing(const DataSpec& data, const NetParams& p, double eps);

EpsilonNet run_net(const CoefficientModel& model, const DataSpec& data, const NetParams& params);

// Fits log sup_t |u|_s against log(1/eps); passes when the slope is below the cap.
FitReport moderateness_fit(const EpsilonNet& net, double s);

struct UniquenessParams {
  int q = 3;
  double amplitude = 1.0;  // scale of every perturbation bump; 0 gives identical families
  double width = 1.0;
};

struct UniquenessReport {
  FitReport fit;
  double eps0 = 0.0;  // largest ladder eps whose perturbed principal part stays elliptic
  std::vector<double> perturbed_margin;  // min over x of the eigenvalues of a + n signed as those of a, per eps
  bool identical = false;  // every difference is exactly zero
};

UniquenessReport uniqueness_probe(const CoefficientModel& model, const DataSpec& data, const NetParams& params,
                                  const UniquenessParams& up, double s = 0.0);

struct ConsistencyReport {
  FitReport fit;           // slope of log e(eps) against log eps
  bool decreasing = false;
  double final_error = 0.0;
  double tolerance = 1e-4;
};

// Compares the regularised nets against the classical solution with unregularised coefficients.
ConsistencyReport consistency_run(const CoefficientModel& model, const DataSpec& data, const NetParams& params,
                                  double s = 0.0, double tolerance = 1e-4);

// run_net with the data held fixed across the ladder.
EpsilonNet hs_mode(const CoefficientModel& model, const DataSpec& data, NetParams params);

}  // namespace vws
