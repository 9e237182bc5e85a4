#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vws/coeffs.hpp"
#include "vws/grid.hpp"

namespace vws {

// g(t, x) = tau(t) G(x) with tau = 1 or exp(i a t).
struct Forcing {
  enum class Time { constant, oscillating };

  std::optional<Field> shape;  // empty means g = 0
  Time time = Time::constant;
  double frequency = 0.0;

  static Forcing none() { return {}; }
  static Forcing constant(Field shape) { return {std::move(shape), Time::constant, 0.0}; }
  static Forcing oscillating(Field shape, double a) { return {std::move(shape), Time::oscillating, a}; }

  bool zero() const { return !shape.has_value(); }
  cplx factor(double t) const;
};

struct EvolutionProblem {
  CoefficientSet cs;
  Field u0;
  Forcing forcing;
  double T = 1.0;
  double dt = 0.0;  // 0 selects the automatic step
  std::vector<double> orders{0.0};  // Sobolev orders tracked in the norm series
  int N = 2;  // weight exponent of the smoothing functional

  EvolutionProblem(CoefficientSet cs, Field u0) : cs(std::move(cs)), u0(std::move(u0)) {}
};

// rho = max |a(x)| n kappa_max^2 + max |b| kappa_max + max |V|
double spectral_radius_bound(const CoefficientSet& cs);
// 0.8 * 2.8 / rho, the largest step accepted.
double stable_step(const CoefficientSet& cs);
// Step actually taken: T / ceil(T / dt) with dt defaulting to stable_step.
double effective_step(const EvolutionProblem& prob);

void validate(const EvolutionProblem& prob);

// (A + B + V) u with A = sum D_i a_ij D_j, B = sum b_k D_k, D = -i d.
// Reuses FFT workspace across calls; one instance per thread.
class SpatialOperator {
 public:
  explicit SpatialOperator(const CoefficientSet& cs);

  const GridSpec& grid() const { return grid_; }
  void apply(std::span<const cplx> u, std::span<cplx> out);
  Field apply(const Field& u);

 private:
  GridSpec grid_;
  int n_;
  std::array<std::array<std::vector<double>, 2>, 2> a_;
  std::array<std::array<bool, 2>, 2> active_{};
  std::vector<std::vector<cplx>> drift_;
  std::vector<cplx> potential_;
  bool has_potential_ = false;
  std::array<std::vector<double>, 2> kappa_;
  std::vector<cplx> spec_, acc_;
  std::array<std::vector<cplx>, 2> du_, w_;
};

Field apply_spatial(const CoefficientSet& cs, const Field& u);

// Per tracked order s: |u(t)|_s, the smoothing integrand |<x>^-N/2 Lambda^{s+1/2} u|_0^2,
// and its running trapezoid integral.
struct NormSeries {
  std::vector<double> orders;
  std::vector<double> times;
  std::vector<std::vector<double>> norm;       // [order][stamp]
  std::vector<std::vector<double>> integrand;  // [order][stamp]
  std::vector<std::vector<double>> integral;   // [order][stamp]

  std::size_t order_index(double s) const;
  double sup_norm(std::size_t order) const;
};

struct Snapshot {
  double t = 0.0;
  Field u;
};

// Marches one trajectory with classical RK4, recording a NormSeries at every step.
class Integrator {
 public:
  explicit Integrator(const EvolutionProblem& prob, int snapshot_stride = 0);

  bool done() const { return step_ == steps_; }
  void advance();  // one step; throws NumericalError on a x10 norm jump
  void run();

  double time() const { return t_; }
  double step_size() const { return dt_; }
  int steps() const { return steps_; }
  const Field& state() const { return u_; }
  const NormSeries& series() const { return series_; }
  std::vector<Snapshot>& snapshots() { return snapshots_; }

 private:
  void rhs(const Field& u, double t, Field& out);
  void record();

  EvolutionProblem prob_;
  SpatialOperator op_;
  int stride_;
  int steps_;
  int step_ = 0;
  double dt_;
  double t_ = 0.0;
  Field u_;
  Field k1_, k2_, k3_, k4_, tmp_;
  NormSeries series_;
  std::vector<Snapshot> snapshots_;
};

Field step_rk4(const Field& u, double t, double dt, const EvolutionProblem& prob);

struct Solution {
  Field final_state;
  NormSeries series;
  std::vector<Snapshot> snapshots;
  double dt = 0.0;
  int steps = 0;
};

Solution solve(const EvolutionProblem& prob, int snapshot_stride = 0);

// Largest grids accepted by the dense oracle.
inline constexpr int kOracleMax1D = 32;
inline constexpr int kOracleMax2D = 8;

// Exact-in-time solution of the semi-discrete system by eigendecomposition of the
// generator, with a scaling-and-squaring exponential when the eigenbasis is unreliable.
enum class OracleMethod { automatic, exponential };
Field dense_oracle(const EvolutionProblem& prob, OracleMethod method = OracleMethod::automatic);

}  // namespace vws
