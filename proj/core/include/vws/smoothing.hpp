#pragma once

#include <span>
#include <vector>

#include "vws/evolve.hpp"
#include "vws/fit.hpp"

namespace vws {

// Both sides of the a-priori estimate for one trajectory.
struct SmoothingTerms {
  double eps = 0.0;
  double omega = 0.0;
  double sup_norm_sq = 0.0;  // sup_t |u(t)|_s^2
  double gain_integral = 0.0;  // int_0^T |<x>^-N/2 Lambda^{s+1/2} u|_0^2 dt
  double lhs = 0.0;
  double rhs_base = 0.0;  // |u0|_s^2 + int of the forcing term
  double ratio = 0.0;     // lhs / rhs_base, 0 when both vanish
  double initial_half_gain_sq = 0.0;  // |u0|_{s+1/2}^2, for comparison with the averaged gain
};

enum class ForcingNorm {
  sobolev,   // int |g|_s^2 dt
  weighted,  // int |<x>^{N/2} Lambda^{s-1/2} g|_0^2 dt
};

SmoothingTerms smoothing_terms(const NormSeries& series, double s, const Field& u0, const Forcing& forcing, double T,
                               int N, ForcingNorm forcing_norm = ForcingNorm::sobolev);

// lhs <= C2 exp(C1 omega^-k1 T) rhs_base with C2 = 1; k1 is the slope of log log(ratio)
// against log(1/omega) over members with ratio > 1, and C1 the smallest value making
// every member satisfy the bound.
struct SmoothingReport {
  std::vector<SmoothingTerms> members;
  double T = 0.0;
  double C1 = 0.0;
  double C2 = 1.0;
  double k1 = 0.0;
  LineFit fit;
  std::size_t fitted_points = 0;
  bool constants_positive = false;
  bool bound_holds = false;
  double max_residual = 0.5;

  bool pass() const;
};

SmoothingReport smoothing_report(std::span<const SmoothingTerms> members, double T, double max_residual = 0.5);

}  // namespace vws
