#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "vws/coeffs.hpp"
#include "vws/error.hpp"
#include "vws/vwsnet.hpp"

using namespace vws;
using std::numbers::pi;

namespace {

const std::vector<double> kShortLadder = {0.25, 0.125, 0.0625, 0.03125};

NetParams small_params(int dim, int M, double L) {
  NetParams p;
  p.grid = make_grid(dim, M, L);
  p.eps = kShortLadder;
  p.T = 0.05;
  return p;
}

DataSpec bump_data(double width = 1.0) {
  DataSpec d;
  d.u0 = DataField::from(Profile::gaussian_bump(1.0, width));
  return d;
}

}  // namespace

TEST_CASE("data realisation") {
  GridSpec g = make_grid(1, 64, pi);
  Field delta = materialise(DataField::from(Profile::delta(1.0)), g, 0);
  CHECK(delta[32].real() == doctest::Approx(1.0 / g.step()));
  CHECK(std::abs(delta[31]) < 1e-9);
  Field wave = materialise(DataField::plane({3, 0}, 2.0), g, 0);
  CHECK(std::abs(wave[5] - std::polar(2.0, 3.0 * g.node(5)[0])) < 1e-14);
  Field r1 = materialise(DataField::rough(0.51), g, 7);
  Field r2 = materialise(DataField::rough(0.51), g, 7);
  Field r3 = materialise(DataField::rough(0.51), g, 8);
  CHECK(l2_norm(r1 - r2) == 0.0);
  CHECK(l2_norm(r1 - r3) > 0.1);
  Spectrum c = fourier_coefficients(r1);
  for (std::size_t k = 0; k < c.size(); ++k)
    CHECK(std::abs(c[k]) == doctest::Approx(std::pow(japanese(g.frequency(k)), -0.51)).epsilon(1e-10));
  CHECK(!DataField::rough(0.51).smooth());
  CHECK(DataField::plane({1, 0}).smooth());
  CHECK_THROWS_AS(materialise(DataField::plane({1, 2}), g, 0), DomainError);
}

TEST_CASE("smooth nets are stable across the ladder") {
  NetParams p = small_params(1, 128, 8.0);
  EpsilonNet net = run_net(preset("smooth-consistency", 1), bump_data(), p);
  REQUIRE(net.members.size() == 4);
  CHECK(net.hypotheses.has_value());
  for (const auto& m : net.members) CHECK(m.solution.final_state.finite());
  FitReport fit = moderateness_fit(net, 0.0);
  CHECK(fit.pass);
  CHECK(std::abs(fit.fit.slope) < 0.3);
  CHECK(fit.values.size() == 4);
  CHECK(fit.bound == 10.0);
}

TEST_CASE("ladders shorter than four members are rejected") {
  NetParams p = small_params(1, 64, 8.0);
  p.eps = {0.25, 0.125, 0.0625};
  CHECK_THROWS_WITH_AS(run_net(preset("free", 1), bump_data(), p), doctest::Contains("at least 4"), DomainError);
}

TEST_CASE("data scaled by eps^q gives moderateness slope -q") {
  NetParams p = small_params(1, 64, 8.0);
  DataSpec d = bump_data();
  d.amplitude_power = 2.0;
  FitReport fit = moderateness_fit(hs_mode(preset("free", 1), d, p), 0.0);
  CHECK(fit.fit.slope == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fit.pass);
}

TEST_CASE("delta potential with delta data is moderate") {
  NetParams p = small_params(1, 1024, pi);
  p.T = 0.01;
  DataSpec d;
  d.u0 = DataField::from(Profile::delta(1.0));
  EpsilonNet net = run_net(preset("delta-potential", 1), d, p);
  FitReport fit = moderateness_fit(net, 0.0);
  CHECK(fit.pass);
  // |delta_eps|_0 ~ eps^-1/2 in one dimension.
  CHECK(fit.fit.slope == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("stronger scales never lower the moderateness slope") {
  NetParams p = small_params(1, 512, pi);
  p.T = 0.01;
  p.orders = {1.0};
  p.check_hypotheses = false;
  double previous = -1e300;
  for (double k : {0.5, 1.0}) {
    p.scale = ScaleFn::power(k);
    FitReport fit = moderateness_fit(run_net(preset("delta-potential", 1), bump_data(0.5), p), 1.0);
    CHECK(fit.fit.slope >= previous - 1e-9);
    previous = fit.fit.slope;
  }
}

TEST_CASE("fixed-data mode") {
  NetParams p = small_params(1, 128, pi);
  DataSpec rough;
  rough.u0 = DataField::rough(0.51);
  EpsilonNet free_net = hs_mode(preset("free", 1), rough, p);
  for (const auto& m : free_net.members)
    CHECK(m.solution.series.sup_norm(0) == free_net.members.front().solution.series.sup_norm(0));

  EpsilonNet fixed = hs_mode(preset("delta-potential", 1), rough, p);
  CHECK(moderateness_fit(fixed, 0.0).pass);
  EpsilonNet mollified = run_net(preset("delta-potential", 1), rough, p);
  for (std::size_t e = 0; e < fixed.members.size(); ++e)
    CHECK(mollified.members[e].solution.series.sup_norm(0) <= fixed.members[e].solution.series.sup_norm(0) + 1e-9);
}

TEST_CASE("hypothesis failure aborts with the report attached") {
  CoefficientModel bad = preset("free", 1);
  bad.perturbation[0][0] = Profile::gaussian_bump(-2.0, 1.0, 2);
  NetParams p = small_params(1, 64, 8.0);
  try {
    run_net(bad, bump_data(), p);
    FAIL("expected a hypothesis failure");
  } catch (const HypothesisFailure& e) {
    CHECK(!e.report.ellipticity_pass);
    CHECK(!e.report.pass());
  }
}

TEST_CASE("errors carry the ladder member and stage") {
  NetParams p = small_params(1, 64, 8.0);
  p.dt = 1.0;
  CHECK_THROWS_WITH_AS(run_net(preset("free", 1), bump_data(), p), doctest::Contains("eps = 0.25, solve"), DomainError);
}

TEST_CASE("uniqueness probe") {
  NetParams p = small_params(1, 128, 8.0);
  p.T = 0.1;
  UniquenessParams zero{3, 0.0};
  UniquenessReport z = uniqueness_probe(preset("free", 1), bump_data(), p, zero);
  CHECK(z.identical);
  CHECK(z.fit.pass);
  for (double v : z.fit.values) CHECK(v == 0.0);

  UniquenessReport three = uniqueness_probe(preset("free", 1), bump_data(), p, {3});
  CHECK(three.fit.pass);
  CHECK(three.fit.fit.slope >= 2.5);
  CHECK(three.eps0 == 0.25);

  NetParams pd = small_params(1, 512, pi);
  pd.T = 0.02;
  UniquenessReport one = uniqueness_probe(preset("delta-potential", 1), bump_data(), pd, {1});
  CHECK(one.fit.pass);
  CHECK(one.fit.fit.slope >= 0.5);
}

TEST_CASE("uniqueness excludes members above eps0") {
  NetParams p = small_params(1, 64, 8.0);
  p.eps = {0.5, 0.25, 0.125, 0.0625, 0.03125};
  p.check_hypotheses = false;
  UniquenessReport r = uniqueness_probe(preset("free", 1), bump_data(), p, {1, 8.0});
  CHECK(r.eps0 == 0.5);
  // With a = -1 the bump 8 eps flips the sign at the origin for eps >= 0.125.
  UniquenessParams shrink{1, 8.0};
  CoefficientModel neg = preset("free", 1);
  neg.principal[0][0] = -1.0;
  UniquenessReport n = uniqueness_probe(neg, bump_data(), p, shrink);
  CHECK(n.perturbed_margin[0] == doctest::Approx(-3.0));
  CHECK(n.perturbed_margin[1] == doctest::Approx(-1.0));
  CHECK(std::abs(n.perturbed_margin[2]) < 1e-12);
  CHECK(n.perturbed_margin[3] == doctest::Approx(0.5));
  CHECK(n.eps0 == 0.0625);
  CHECK(n.fit.eps.size() == 2);
  CHECK(!n.fit.pass);
}

TEST_CASE("consistency with constant coefficients is data-limited at fourth order") {
  NetParams p = small_params(1, 64, 8.0);
  p.T = 0.5;
  p.eps = {0.5, 0.25, 0.125, 0.0625};
  p.data_mollifier = Mollifier::vanishing_moment(4, 0.5);
  ConsistencyReport r = consistency_run(preset("smooth-consistency", 1, {{"nu", 0.0}}), bump_data(), p);
  CHECK(r.decreasing);
  CHECK(r.fit.fit.slope == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("consistency is exact for data inside a flat-top band") {
  NetParams p = small_params(1, 64, pi);
  p.T = 0.3;
  p.data_mollifier = Mollifier::flat_top(8.0);
  DataSpec d;
  d.u0 = DataField::plane({3, 0});
  ConsistencyReport r = consistency_run(preset("smooth-consistency", 1, {{"nu", 0.0}}), d, p);
  for (double e : r.fit.values) CHECK(e < 1e-10);
}

TEST_CASE("consistency with smooth perturbations") {
  NetParams p = small_params(1, 64, 8.0);
  p.T = 0.5;
  p.eps = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  p.scale = ScaleFn::power(1.0);
  p.data_mollifier = Mollifier::vanishing_moment(4, 0.5);
  ConsistencyReport r = consistency_run(preset("smooth-consistency", 1), bump_data(), p);
  CHECK(r.decreasing);
  CHECK(r.final_error < 1e-4);
  CHECK(r.fit.pass);

  p.data_mollifier = Mollifier::gaussian(0.5);
  CHECK_THROWS_AS(consistency_run(preset("smooth-consistency", 1), bump_data(), p), DomainError);
  p.data_mollifier = Mollifier::vanishing_moment(4, 0.5);
  CHECK_THROWS_AS(consistency_run(preset("delta-potential", 1), bump_data(), p), DomainError);
  DataSpec rough;
  rough.u0 = DataField::rough(0.51);
  CHECK_THROWS_AS(consistency_run(preset("smooth-consistency", 1), rough, p), DomainError);
}
