#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vws/coeffs.hpp"
#include "vws/error.hpp"

using namespace vws;
using std::numbers::pi;

namespace {

const std::vector<double> kLadder = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
const Mollifier kCoefficientMollifier = Mollifier::gaussian(0.25);

std::vector<CoefficientSet> ladder_sets(const CoefficientModel& m, const GridSpec& g,
                                        const std::vector<double>& eps = kLadder) {
  std::vector<CoefficientSet> sets;
  for (double e : eps) sets.push_back(regularise(m, kCoefficientMollifier, e, ScaleFn::loglog(), g));
  return sets;
}

double vmin(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double vmax(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("preset catalogue") {
  CoefficientModel free1 = preset("free", 1);
  CHECK(free1.principal[0][0] == 1.0);
  CHECK(free1.principal_constant());
  CHECK(free1.potential.is_zero());
  CHECK(free1.drift_real[0].is_zero());
  CHECK(free1.smooth());

  CoefficientModel ud = preset("ultra-diagonal", 2, {{"nu", 0.0}});
  CHECK(ud.principal[0][0] == 1.0);
  CHECK(ud.principal[1][1] == -1.0);
  CHECK(ud.principal_constant());

  CHECK_THROWS_AS(preset("ultra-diagonal", 2, {{"c2", 0.0}}), DomainError);
  CHECK_THROWS_AS(preset("ultra-diagonal", 1), DomainError);
  CHECK_THROWS_AS(preset("nonsense", 1), DomainError);
  CHECK_THROWS_AS(preset("free", 1, {{"moolifier", 1.0}}), DomainError);
  CHECK_THROWS_AS(preset("free", 1, {{"N", 1.0}}), DomainError);
  CHECK_THROWS_AS(preset("free", 1, {{"N", 2.5}}), DomainError);

  CHECK_FALSE(preset("delta-potential", 1).smooth());
  CHECK_FALSE(preset("jump-drift", 1).smooth());
  CHECK_FALSE(preset("elliptic-lipschitz", 2).smooth());
  CHECK(preset("smooth-consistency", 2).smooth());

  CoefficientModel asym = preset("free", 2);
  asym.principal[0][1] = 0.3;
  CHECK_THROWS_AS(validate(asym), DomainError);
}

TEST_CASE("regularisation fixes constants exactly") {
  for (int dim : {1, 2}) {
    GridSpec g = make_grid(dim, 16, 8.0);
    CoefficientModel m = preset("free", dim);
    m.principal = {{{2.5, dim == 2 ? 0.25 : 0.0}, {dim == 2 ? 0.25 : 0.0, -1.5}}};
    m.potential = Profile::constant(0.75);
    for (double eps : {1.0, 0.1, 1e-3}) {
      CoefficientSet cs = regularise(m, kCoefficientMollifier, eps, ScaleFn::loglog(), g);
      for (std::size_t x = 0; x < g.size(); ++x) {
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            CHECK(cs.a[i][j][x] == m.principal[i][j]);
            for (int k = 0; k < dim; ++k) CHECK(cs.da[k][i][j][x] == 0.0);
          }
        CHECK(std::abs(cs.potential[x] - 0.75) < 1e-15);
        for (int k = 0; k < dim; ++k) CHECK(cs.drift[k][x] == cplx(0.0));
      }
    }
  }
}

TEST_CASE("regularise rejects non-positive mollifiers") {
  GridSpec g = make_grid(1, 16, 8.0);
  CoefficientModel m = preset("delta-potential", 1);
  CHECK_THROWS_AS(regularise(m, Mollifier::vanishing_moment(4), 0.1, ScaleFn::loglog(), g), DomainError);
  CHECK_THROWS_AS(regularise(m, Mollifier::flat_top(1.0), 0.1, ScaleFn::loglog(), g), DomainError);
  CHECK_THROWS_AS(sample_coefficients(m, g), DomainError);
}

TEST_CASE("delta potential regularises to the scaled gaussian") {
  GridSpec g = make_grid(1, 256, 8.0);
  CoefficientModel m = preset("delta-potential", 1);
  for (double eps : kLadder) {
    CoefficientSet cs = regularise(m, kCoefficientMollifier, eps, ScaleFn::loglog(), g);
    const double s = 0.25 * cs.omega;
    Spectrum c = fourier_coefficients(cs.potential);
    for (std::size_t k = 0; k < g.size(); ++k) {
      double kappa = g.wavenumber(int(k));
      CHECK(std::abs(c[k] - cplx(std::exp(-0.5 * s * s * kappa * kappa) / 16.0)) < 1e-14);
    }
    // On the line delta * phi_omega is the gaussian of standard deviation width * omega.
    for (std::size_t x = 0; x < g.size(); ++x) {
      double r = g.coordinate(int(x));
      double exact = std::exp(-0.5 * r * r / (s * s)) / std::sqrt(2.0 * pi * s * s);
      CHECK(std::abs(cs.potential[x].real() - exact) < 1e-10);
    }
    CHECK(cs.potential_max() == doctest::Approx(1.0 / (std::sqrt(2.0 * pi) * s)).epsilon(1e-10));
  }
}

TEST_CASE("jump drift regularises to an error function") {
  GridSpec g = make_grid(1, 256, 8.0);
  CoefficientModel m = preset("jump-drift", 1, {{"amplitude", 0.5}});
  CoefficientSet cs = regularise(m, kCoefficientMollifier, 0.01, ScaleFn::loglog(), g);
  const double s = 0.25 * cs.omega;
  for (std::size_t x = 0; x < g.size(); ++x) {
    double r = g.coordinate(int(x));
    if (std::abs(r) > 4.0) continue;
    CHECK(std::abs(cs.drift[0][x].real() - 0.5 * std::erf(r / (std::sqrt(2.0) * s))) < 1e-12);
  }
}

TEST_CASE("spectral derivatives of a sine coefficient") {
  GridSpec g = make_grid(1, 32, pi);
  CoefficientModel m = preset("free", 1);
  m.perturbation[0][0] = Profile::sine(0.1, 1.0);
  CoefficientSet cs = regularise_at(m, kCoefficientMollifier, 0.8, g);
  double damp = std::exp(-0.5 * 0.04);  // width * omega = 0.2
  for (std::size_t x = 0; x < g.size(); ++x) {
    double r = g.coordinate(int(x));
    CHECK(cs.a[0][0][x] == doctest::Approx(1.0 + 0.1 * damp * std::sin(r)).epsilon(1e-13));
    CHECK(std::abs(cs.da[0][0][0][x] - 0.1 * damp * std::cos(r)) < 1e-13);
  }
}

TEST_CASE("hypotheses for the free model") {
  GridSpec g = make_grid(2, 16, 8.0);
  auto sets = ladder_sets(preset("free", 2), g);
  HypothesisReport r = check_hypotheses(sets, hypothesis_params(preset("free", 2)));
  CHECK(r.pass());
  CHECK(r.mu == 1.0);
  CHECK(vmax(r.principal_slope_sup) == 0.0);
  CHECK(vmax(r.drift_imag_sup) == 0.0);
  CHECK(r.drift_exponent == 0.0);
  CHECK(r.potential_exponent == 0.0);
  CHECK(r.symmetric_real);

  CHECK_THROWS_AS(check_hypotheses(std::span<const CoefficientSet>(), HypothesisParams{}), DomainError);
  sets[1].potential[3] = std::nan("");
  CHECK_THROWS_AS(check_hypotheses(sets, HypothesisParams{}), NumericalError);
}

TEST_CASE("ultra-diagonal hypotheses") {
  GridSpec g = make_grid(2, 64, 8.0);

  CoefficientModel exact = preset("ultra-diagonal", 2, {{"nu", 0.0}});
  auto r0 = check_hypotheses(ladder_sets(exact, g), hypothesis_params(exact));
  for (std::size_t i = 0; i < kLadder.size(); ++i) {
    CHECK(r0.ratio_min[i] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r0.ratio_max[i] == doctest::Approx(1.0).epsilon(1e-15));
  }

  for (double c2 : {-1.0, -3.0, 0.5}) {
    CoefficientModel m = preset("ultra-diagonal", 2, {{"c2", c2}});
    auto r = check_hypotheses(ladder_sets(m, g), hypothesis_params(m));
    double lo = std::min(1.0, std::abs(c2)), hi = std::max(1.0, std::abs(c2));
    CHECK(r.symmetric_real);
    CHECK(r.ellipticity_pass);
    CHECK(vmin(r.ratio_min) >= 0.5 * lo);
    CHECK(vmax(r.ratio_max) <= 1.5 * hi);
    CHECK(r.mu <= 2.0 * hi / std::min(lo, 1.0));
    CHECK(r.principal_slope_pass);
    CHECK(r.principal_slope_variation < 0.10);
    CHECK(r.principal_slope_constant > 0.0);
    CHECK(r.pass());
  }
}

TEST_CASE("ellipticity bound for small ultra-diagonal perturbations") {
  GridSpec g = make_grid(2, 32, 8.0);
  for (double c1 : {1.0, 2.0}) {
    double c2 = -0.5;
    double nu = std::min(c1, std::abs(c2)) / 4.0;
    CoefficientModel m = preset("ultra-diagonal", 2, {{"c1", c1}, {"c2", c2}, {"nu", nu}});
    auto r = check_hypotheses(ladder_sets(m, g), hypothesis_params(m));
    CHECK(r.ellipticity_pass);
    for (double mu : r.mu_per_eps) CHECK(mu <= 2.0 * std::max(c1, std::abs(c2)) / std::min(1.0, std::min(c1, std::abs(c2))));
    for (double lo : r.ratio_min) CHECK(lo >= 0.5 * std::min(c1, std::abs(c2)));
    for (double hi : r.ratio_max) CHECK(hi <= 2.0 * std::max(c1, std::abs(c2)));
  }
}

TEST_CASE("enveloped Lipschitz slopes are uniform along the ladder") {
  for (int dim : {1, 2}) {
    GridSpec g = make_grid(dim, dim == 1 ? 256 : 64, 8.0);
    CoefficientModel m = preset("elliptic-lipschitz", dim);
    auto r = check_hypotheses(ladder_sets(m, g), hypothesis_params(m));
    CHECK(r.principal_slope_variation < 0.10);
    CHECK(r.principal_slope_pass);
    CHECK(r.pass());
  }
}

TEST_CASE("delta potential derivative growth") {
  GridSpec g = make_grid(1, 256, 8.0);
  CoefficientModel m = preset("delta-potential", 1);
  auto r = check_hypotheses(ladder_sets(m, g), hypothesis_params(m));
  REQUIRE(r.potential_growth.size() == 4);
  for (const auto& f : r.potential_growth) {
    CHECK(f.fit.slope == doctest::Approx(-1.0 - f.order).epsilon(0.02));
    CHECK(f.exponent == doctest::Approx(1.0).epsilon(0.03));
  }
  CHECK(r.potential_exponent == doctest::Approx(1.0).epsilon(0.03));
  CHECK(r.drift_exponent == 0.0);
  CHECK(r.support_within_half_domain);
  CHECK(r.pass());

  auto jump = preset("jump-drift", 1);
  auto rj = check_hypotheses(ladder_sets(jump, g), hypothesis_params(jump));
  CHECK_FALSE(rj.support_within_half_domain);
  CHECK(rj.drift_imag_pass);
  CHECK(rj.drift_imag_constant <= 1.0 + 1e-12);
}
