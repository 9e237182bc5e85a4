#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "vws/fit.hpp"
#include "vws/grid.hpp"

namespace vws {

enum class MollifierKind {
  gaussian,          // positive, used for coefficients
  vanishing_moment,  // gaussian with a Fourier-side polynomial correction
  flat_top,          // transform identically 1 near the origin
};

// Radial mollifier described by its Fourier transform phi_hat(|xi|).
// Scaling by omega means phi_omega(x) = omega^-n phi(x / omega).
struct Mollifier {
  MollifierKind kind = MollifierKind::gaussian;
  double width = 0.5;    // gaussian standard deviation, or flat-top plateau radius
  int moment_order = 4;  // vanishing_moment only: even, moments 1..order-1 vanish

  static Mollifier gaussian(double width = 0.5);
  static Mollifier vanishing_moment(int order = 4, double width = 0.5);
  static Mollifier flat_top(double plateau);

  double transform(double xi) const;
  bool positive() const { return kind == MollifierKind::gaussian; }
  bool has_vanishing_moments() const { return kind != MollifierKind::gaussian; }

  friend bool operator==(const Mollifier&, const Mollifier&) = default;
};

void validate(const Mollifier& m);
std::string to_string(MollifierKind k);
MollifierKind mollifier_kind_from(const std::string& name);

enum class ScaleKind { loglog, power, constant };

// Regularisation scale omega(eps).
struct ScaleFn {
  ScaleKind kind = ScaleKind::loglog;
  double exponent = 1.0;     // power kind
  double value = 0.5;        // constant kind
  double clamp = 1.0 - 1e-6;  // loglog value for eps >= exp(-e)

  static ScaleFn loglog();
  static ScaleFn power(double k);
  static ScaleFn constant(double v);

  friend bool operator==(const ScaleFn&, const ScaleFn&) = default;
};

double scale_omega(const ScaleFn& scale, double eps);
std::string to_string(ScaleKind k);
ScaleKind scale_kind_from(const std::string& name);

// Throws unless eps is strictly decreasing in (0, 1] with at least min_length entries.
void require_ladder(std::span<const double> eps, std::size_t min_length);

std::vector<double> omega_ladder(const ScaleFn& scale, std::span<const double> eps);

Field mollify(const Field& u, const Mollifier& m, double omega);
Spectrum mollify(const GridSpec& g, const Spectrum& c, const Mollifier& m, double omega);

struct ProbeReport {
  std::vector<double> eps;
  std::vector<double> omega;
  std::vector<double> values;  // sup norms or Sobolev norms per omega
  LineFit fit;                 // log value against log omega
  double bound = 0.0;          // predicted lower bound on the slope for bounded data
  double bound_lipschitz = 0.0;  // same for Lipschitz data (derivative probe only)
};

ProbeReport derivative_bound_probe(const Field& u, std::array<int, 2> beta, const ScaleFn& scale,
                                   std::span<const double> eps,
                                   const Mollifier& m = Mollifier::gaussian());

ProbeReport sobolev_boost_probe(const Field& u, double s, int ell, const ScaleFn& scale,
                                std::span<const double> eps,
                                const Mollifier& m = Mollifier::gaussian());

}  // namespace vws
