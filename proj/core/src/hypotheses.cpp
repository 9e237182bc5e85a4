#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vws/coeffs.hpp"
#include "vws/error.hpp"

namespace vws {

HypothesisParams hypothesis_params(const CoefficientModel& model) {
  HypothesisParams p;
  p.weight_exponent = model.weight_exponent;
  p.nu = model.nu;
  p.c0 = model.c0;
  return p;
}

bool HypothesisReport::pass() const {
  return symmetric_real && ellipticity_pass && principal_slope_pass && drift_imag_pass && drift_growth_pass &&
         potential_growth_pass;
}

namespace {

std::vector<Point> xi_samples(int dim, const HypothesisParams& p) {
  std::vector<Point> out;
  for (double r : p.radii) {
    if (dim == 1) {
      out.push_back({r, 0.0});
      out.push_back({-r, 0.0});
      continue;
    }
    for (std::size_t d = 0; d < p.directions; ++d) {
      double th = 2.0 * std::numbers::pi * double(d) / double(p.directions);
      out.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }
  return out;
}

double weighted_sup(const GridSpec& g, const std::vector<double>& v, int N) {
  double best = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) best = std::max(best, std::pow(japanese(g.node(x)), N) * std::abs(v[x]));
  return best;
}

// Multi-indices of total order `order` in `dim` variables.
std::vector<std::array<int, 2>> multi_indices(int dim, int order) {
  if (dim == 1) return {{order, 0}};
  std::vector<std::array<int, 2>> out;
  for (int a = order; a >= 0; --a) out.push_back({a, order - a});
  return out;
}

double derivative_sup(const GridSpec& g, const Spectrum& c, std::array<int, 2> beta, int refine) {
  Spectrum d(c);
  for (std::size_t k = 0; k < d.size(); ++k) {
    Point kappa = g.frequency(k);
    cplx m = 1.0;
    for (int a = 0; a < 2; ++a)
      for (int r = 0; r < beta[a]; ++r) m *= cplx(0.0, kappa[a]);
    d[k] *= m;
  }
  return refined_sup(g, d, refine);
}

std::vector<GrowthFit> growth_fits(const std::vector<std::vector<Spectrum>>& spectra, std::span<const double> omega,
                                   const GridSpec& g, int max_order) {
  // spectra[e][component]
  const int refine = g.dim == 1 ? 4 : 2;
  std::vector<GrowthFit> fits;
  std::vector<double> lx;
  for (double w : omega) lx.push_back(std::log(w));
  for (int order = 0; order <= max_order; ++order) {
    GrowthFit f;
    f.order = order;
    for (const auto& comps : spectra) {
      double best = 0.0;
      for (const Spectrum& c : comps)
        for (auto beta : multi_indices(g.dim, order)) best = std::max(best, derivative_sup(g, c, beta, refine));
      f.sups.push_back(best);
    }
    bool any_zero = std::any_of(f.sups.begin(), f.sups.end(), [](double s) { return s <= 1e-300; });
    if (any_zero) {
      f.fit.degenerate = true;
      f.fit.points = f.sups.size();
    } else {
      std::vector<double> ly;
      for (double s : f.sups) ly.push_back(std::log(s));
      f.fit = fit_line(lx, ly);
    }
    f.exponent = f.fit.degenerate ? 0.0 : -f.fit.slope - order;
    fits.push_back(std::move(f));
  }
  return fits;
}

double support_radius(const GridSpec& g, std::span<const Field> fields) {
  double radius = 0.0;
  for (const Field& f : fields) {
    double peak = sup_norm(f);
    if (peak == 0.0) continue;
    for (std::size_t x = 0; x < g.size(); ++x)
      if (std::abs(f[x]) > 1e-10 * peak) radius = std::max(radius, norm(g.node(x)));
  }
  return radius;
}

}  // namespace

HypothesisReport check_hypotheses(std::span<const CoefficientSet> sets, const HypothesisParams& params) {
  require(!sets.empty(), "check_hypotheses: empty ladder");
  require(params.directions >= 1 && !params.radii.empty(), "check_hypotheses: empty xi sample");
  const GridSpec g = sets.front().grid;
  const int n = g.dim;
  const int N = params.weight_exponent;
  for (const auto& cs : sets) {
    require_same_grid(g, cs.grid);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (double v : cs.a[i][j])
          if (!std::isfinite(v)) throw NumericalError("check_hypotheses: non-finite principal coefficient");
    for (const Field& b : cs.drift) require_finite(b, "check_hypotheses");
    require_finite(cs.potential, "check_hypotheses");
  }

  HypothesisReport r;
  const auto xi = xi_samples(n, params);
  for (const auto& cs : sets) {
    r.eps.push_back(cs.eps);
    r.omega.push_back(cs.omega);

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (cs.a[i][j] != cs.a[j][i]) r.symmetric_real = false;

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      for (const Point& z : xi) {
        double y0 = cs.a[0][0][x] * z[0], y1 = 0.0;
        if (n == 2) {
          y0 += cs.a[0][1][x] * z[1];
          y1 = cs.a[1][0][x] * z[0] + cs.a[1][1][x] * z[1];
        }
        double ratio = std::hypot(y0, y1) / norm(z);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    r.ratio_min.push_back(lo);
    r.ratio_max.push_back(hi);
    r.mu_per_eps.push_back(lo > 0.0 ? std::max(hi, 1.0 / lo) : std::numeric_limits<double>::infinity());

    double slope_sup = 0.0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) slope_sup = std::max(slope_sup, weighted_sup(g, cs.da[k][i][j], N));
    r.principal_slope_sup.push_back(slope_sup);

    double imag_sup = 0.0;
    for (const Field& b : cs.drift) {
      std::vector<double> im(g.size());
      for (std::size_t x = 0; x < g.size(); ++x) im[x] = b[x].imag();
      imag_sup = std::max(imag_sup, weighted_sup(g, im, N));
    }
    r.drift_imag_sup.push_back(imag_sup);
  }

  r.mu = *std::max_element(r.mu_per_eps.begin(), r.mu_per_eps.end());
  r.mu_variation = relative_spread(r.mu_per_eps);
  r.ellipticity_pass = std::isfinite(r.mu) && r.mu_variation < params.ellipticity_variation;

  auto envelope_check = [&](const std::vector<double>& sups, double scale, double& constant, double& variation) {
    double top = *std::max_element(sups.begin(), sups.end());
    variation = relative_spread(sups);
    if (scale > 0.0) {
      constant = top / scale;
      return std::isfinite(top) && variation <= params.envelope_variation;
    }
    constant = top;
    return top <= 1e-12;
  };
  r.principal_slope_pass =
      envelope_check(r.principal_slope_sup, params.nu, r.principal_slope_constant, r.principal_slope_variation);
  r.drift_imag_pass = envelope_check(r.drift_imag_sup, params.c0, r.drift_imag_constant, r.drift_imag_variation);

  // Derivative growth of the drift and the potential across the ladder.
  std::vector<std::vector<Spectrum>> drift_spectra, potential_spectra;
  for (const auto& cs : sets) {
    std::vector<Spectrum> comps;
    for (const Field& b : cs.drift) comps.push_back(fourier_coefficients(b));
    drift_spectra.push_back(std::move(comps));
    potential_spectra.push_back({fourier_coefficients(cs.potential)});
  }
  if (sets.size() >= 2 && relative_spread(r.omega) > 0.0) {
    r.drift_growth = growth_fits(drift_spectra, r.omega, g, params.max_derivative);
    r.potential_growth = growth_fits(potential_spectra, r.omega, g, params.max_derivative);
  }
  auto exponent_of = [](const std::vector<GrowthFit>& fits) {
    double e = 0.0;
    for (const auto& f : fits) e = std::max(e, f.exponent);
    return e;
  };
  r.drift_exponent = exponent_of(r.drift_growth);
  r.potential_exponent = exponent_of(r.potential_growth);
  r.drift_growth_pass = std::isfinite(r.drift_exponent);
  r.potential_growth_pass = std::isfinite(r.potential_exponent);

  const auto& last = sets.back();
  std::vector<Field> singular_parts;
  for (const Field& b : last.drift) {
    Field re(g);
    for (std::size_t x = 0; x < g.size(); ++x) re[x] = b[x].real();
    singular_parts.push_back(std::move(re));
  }
  singular_parts.push_back(last.potential);
  r.support_radius = support_radius(g, singular_parts);
  r.support_within_half_domain = r.support_radius < 0.5 * g.half_length;
  return r;
}

}  // namespace vws
