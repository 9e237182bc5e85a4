#include "vws/mollify.hpp"

#include <cmath>
#include <numbers>

#include "vws/error.hpp"
#include "vws/smooth_step.hpp"

namespace vws {

Mollifier Mollifier::gaussian(double width) { return {MollifierKind::gaussian, width, 0}; }

Mollifier Mollifier::vanishing_moment(int order, double width) {
  return {MollifierKind::vanishing_moment, width, order};
}

Mollifier Mollifier::flat_top(double plateau) { return {MollifierKind::flat_top, plateau, 0}; }

double Mollifier::transform(double xi) const {
  switch (kind) {
    case MollifierKind::gaussian:
      return std::exp(-0.5 * width * width * xi * xi);
    case MollifierKind::vanishing_moment: {
      // e^-t sum_{j<m} t^j / j! with t = width^2 xi^2 / 2, so 1 - transform = O(xi^order).
      double t = 0.5 * width * width * xi * xi, term = 1.0, sum = 1.0;
      for (int j = 1; j < moment_order / 2; ++j) {
        term *= t / j;
        sum += term;
      }
      return std::exp(-t) * sum;
    }
    case MollifierKind::flat_top:
      return 1.0 - smooth_step(std::abs(xi) / width);
  }
  return 0.0;
}

void validate(const Mollifier& m) {
  require(m.width > 0.0 && std::isfinite(m.width), "mollifier width must be positive");
  if (m.kind == MollifierKind::vanishing_moment)
    require(m.moment_order >= 2 && m.moment_order % 2 == 0,
            "vanishing-moment order must be an even integer >= 2");
}

std::string to_string(MollifierKind k) {
  switch (k) {
    case MollifierKind::gaussian: return "gaussian";
    case MollifierKind::vanishing_moment: return "vanishing-moment";
    case MollifierKind::flat_top: return "flat-top";
  }
  return "?";
}

MollifierKind mollifier_kind_from(const std::string& name) {
  if (name == "gaussian") return MollifierKind::gaussian;
  if (name == "vanishing-moment") return MollifierKind::vanishing_moment;
  if (name == "flat-top") return MollifierKind::flat_top;
  fail_domain("unknown mollifier kind '" + name + "'");
}

ScaleFn ScaleFn::loglog() { return ScaleFn{}; }

ScaleFn ScaleFn::power(double k) {
  ScaleFn s;
  s.kind = ScaleKind::power;
  s.exponent = k;
  return s;
}

ScaleFn ScaleFn::constant(double v) {
  ScaleFn s;
  s.kind = ScaleKind::constant;
  s.value = v;
  return s;
}

double scale_omega(const ScaleFn& scale, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) fail_domain("scale_omega: eps must lie in (0, 1]");
  switch (scale.kind) {
    case ScaleKind::loglog: {
      if (eps >= std::exp(-std::numbers::e)) return scale.clamp;
      return 1.0 / std::log(std::log(1.0 / eps));
    }
    case ScaleKind::power:
      return std::pow(eps, scale.exponent);
    case ScaleKind::constant:
      return scale.value;
  }
  return 0.0;
}

std::string to_string(ScaleKind k) {
  switch (k) {
    case ScaleKind::loglog: return "loglog";
    case ScaleKind::power: return "power";
    case ScaleKind::constant: return "constant";
  }
  return "?";
}

ScaleKind scale_kind_from(const std::string& name) {
  if (name == "loglog") return ScaleKind::loglog;
  if (name == "power") return ScaleKind::power;
  if (name == "constant") return ScaleKind::constant;
  fail_domain("unknown scale kind '" + name + "'");
}

void require_ladder(std::span<const double> eps, std::size_t min_length) {
  if (eps.size() < min_length)
    fail_domain("eps ladder needs at least " + std::to_string(min_length) + " values, got " +
                std::to_string(eps.size()));
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] <= 1.0)) fail_domain("eps ladder values must lie in (0, 1]");
    if (i > 0 && !(eps[i] < eps[i - 1])) fail_domain("eps ladder must be strictly decreasing");
  }
}

std::vector<double> omega_ladder(const ScaleFn& scale, std::span<const double> eps) {
  std::vector<double> w;
  w.reserve(eps.size());
  for (double e : eps) w.push_back(scale_omega(scale, e));
  return w;
}

Spectrum mollify(const GridSpec& g, const Spectrum& c, const Mollifier& m, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) fail_domain("mollify: omega must be positive");
  Spectrum out(c);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= m.transform(omega * norm(g.frequency(k)));
  return out;
}

Field mollify(const Field& u, const Mollifier& m, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) fail_domain("mollify: omega must be positive");
  require_finite(u, "mollify");
  auto mult = multiplier_table(u.grid(), [&](const Point& k) { return m.transform(omega * norm(k)); });
  return apply_multiplier(u, std::span<const double>(mult));
}

namespace {

ProbeReport fit_probe(std::span<const double> eps, std::vector<double> omega,
                      std::vector<double> values) {
  ProbeReport r;
  r.eps.assign(eps.begin(), eps.end());
  std::vector<double> lx, ly;
  bool any_zero = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    lx.push_back(std::log(omega[i]));
    if (values[i] <= 0.0) any_zero = true;
    ly.push_back(values[i] > 0.0 ? std::log(values[i]) : 0.0);
  }
  if (any_zero) {
    r.fit.degenerate = true;
    r.fit.points = values.size();
  } else {
    r.fit = fit_line(lx, ly);
  }
  r.omega = std::move(omega);
  r.values = std::move(values);
  return r;
}

}  // namespace

ProbeReport derivative_bound_probe(const Field& u, std::array<int, 2> beta, const ScaleFn& scale,
                                   std::span<const double> eps, const Mollifier& m) {
  require_ladder(eps, 4);
  require(beta[0] >= 0 && beta[1] >= 0, "derivative order must be nonnegative");
  auto omega = omega_ladder(scale, eps);
  std::vector<double> sups;
  for (double w : omega) sups.push_back(sup_norm(partial_derivative(mollify(u, m, w), beta)));
  ProbeReport r = fit_probe(eps, std::move(omega), std::move(sups));
  r.bound = -double(beta[0] + beta[1]);
  r.bound_lipschitz = r.bound + 1.0;
  return r;
}

ProbeReport sobolev_boost_probe(const Field& u, double s, int ell, const ScaleFn& scale,
                                std::span<const double> eps, const Mollifier& m) {
  require_ladder(eps, 4);
  require(ell >= 1, "Sobolev boost order must be at least 1");
  auto omega = omega_ladder(scale, eps);
  Spectrum c = fourier_coefficients(u);
  std::vector<double> norms;
  for (double w : omega) norms.push_back(sobolev_norm(u.grid(), mollify(u.grid(), c, m, w), s + ell));
  ProbeReport r = fit_probe(eps, std::move(omega), std::move(norms));
  r.bound = -double(ell);
  r.bound_lipschitz = r.bound;
  return r;
}

}  // namespace vws
