#include "vws/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "vws/error.hpp"

namespace vws {

SmoothingTerms smoothing_terms(const NormSeries& series, double s, const Field& u0, const Forcing& forcing, double T,
                               int N, ForcingNorm forcing_norm) {
  require(T > 0.0, "smoothing: T must be positive");
  require(series.times.size() >= 2, "smoothing: the norm series is incomplete");
  std::size_t i = series.order_index(s);
  SmoothingTerms out;
  double sup = series.sup_norm(i);
  out.sup_norm_sq = sup * sup;
  out.gain_integral = series.integral[i].back();
  out.lhs = out.sup_norm_sq + out.gain_integral;
  double u0s = sobolev_norm(u0, s);
  double g = 0.0;
  if (forcing.shape) {
    // |tau(t)| = 1, so the time integral is T times the spatial norm.
    if (forcing_norm == ForcingNorm::sobolev) {
      g = sobolev_norm(*forcing.shape, s);
    } else {
      g = l2_norm(weight_field(apply_lambda(*forcing.shape, s - 0.5), 0.5 * N));
    }
  }
  out.rhs_base = u0s * u0s + T * g * g;
  double half = sobolev_norm(u0, s + 0.5);
  out.initial_half_gain_sq = half * half;
  if (out.rhs_base == 0.0) {
    if (out.lhs > 0.0) throw NumericalError("smoothing: zero data produced a nonzero solution");
    out.ratio = 0.0;
  } else {
    out.ratio = out.lhs / out.rhs_base;
  }
  return out;
}

bool SmoothingReport::pass() const {
  return constants_positive && bound_holds && (fitted_points < 2 || fit.residual < max_residual);
}

SmoothingReport smoothing_report(std::span<const SmoothingTerms> members, double T, double max_residual) {
  require(!members.empty(), "smoothing: no ladder members");
  require(T > 0.0, "smoothing: T must be positive");
  SmoothingReport rep;
  rep.members.assign(members.begin(), members.end());
  rep.T = T;
  rep.max_residual = max_residual;

  std::vector<double> x, y;
  for (const auto& m : members) {
    require(m.omega > 0.0, "smoothing: scale must be positive");
    if (m.ratio > 1.0) {
      x.push_back(std::log(1.0 / m.omega));
      y.push_back(std::log(std::log(m.ratio)));
    }
  }
  rep.fitted_points = x.size();
  bool spread = x.size() >= 2 && *std::max_element(x.begin(), x.end()) > *std::min_element(x.begin(), x.end());
  if (spread) {
    rep.fit = fit_line(x, y);
    rep.k1 = rep.fit.slope;
  }
  double c1 = 0.0;
  for (const auto& m : members)
    if (m.ratio > 1.0) c1 = std::max(c1, std::log(m.ratio) / (T * std::pow(m.omega, -rep.k1)));
  // Smallest positive C1 when every ratio is at most one.
  rep.C1 = c1 > 0.0 ? c1 : 1e-12;
  rep.constants_positive = rep.C1 > 0.0 && rep.C2 > 0.0;
  rep.bound_holds = true;
  for (const auto& m : members) {
    double bound = rep.C2 * std::exp(rep.C1 * std::pow(m.omega, -rep.k1) * T) * m.rhs_base;
    if (!(std::isfinite(m.lhs) && m.lhs <= bound * (1.0 + 1e-12))) rep.bound_holds = false;
  }
  return rep;
}

}  // namespace vws
