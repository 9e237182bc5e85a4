#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vws/error.hpp"
#include "vws/grid.hpp"

using namespace vws;
using std::numbers::pi;

namespace {

Field random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Field u(g);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = {d(rng), d(rng)};
  return u;
}

// Direct O(N^2) transform with the grid origin at -L.
Spectrum brute_coefficients(const Field& u) {
  const GridSpec& g = u.grid();
  Spectrum c(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    Point kappa = g.frequency(k);
    for (std::size_t j = 0; j < g.size(); ++j) {
      Point x = g.node(j);
      c[k] += u[j] * std::exp(cplx(0.0, -(kappa[0] * x[0] + kappa[1] * x[1])));
    }
    c[k] /= double(g.size());
  }
  return c;
}

}  // namespace

TEST_CASE("make_grid validates its arguments") {
  GridSpec g = make_grid(1, 16, pi);
  CHECK(g.step() == doctest::Approx(2 * pi / 16));
  for (int i = 0; i < 16; ++i) CHECK(g.wavenumber(i) == doctest::Approx(double(g.mode(i))));
  CHECK(g.mode(8) == -8);

  GridSpec g2 = make_grid(2, 32, 8.0);
  CHECK(g2.size() == 1024);
  CHECK(g2.wavenumber(1) == doctest::Approx(pi / 8));

  CHECK_THROWS_AS(make_grid(1, 12, pi), DomainError);
  CHECK_THROWS_AS(make_grid(3, 16, pi), DomainError);
  CHECK_THROWS_AS(make_grid(1, 16, 0.0), DomainError);
  CHECK_THROWS_AS(make_grid(1, 4, 1.0), DomainError);
}

TEST_CASE("origin sits at node M/2 and nodes are row-major") {
  GridSpec g = make_grid(2, 8, 2.0);
  Point x = g.node(4 * 8 + 4);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);
  CHECK(g.node(1)[1] == doctest::Approx(-2.0 + 0.5));
  CHECK(g.node(8)[0] == doctest::Approx(-2.0 + 0.5));
}

TEST_CASE("fourier coefficients agree with the direct sum") {
  for (int dim : {1, 2}) {
    GridSpec g = make_grid(dim, 8, 1.7);
    Field u = random_field(g, 11 + dim);
    Spectrum fast = fourier_coefficients(u);
    Spectrum slow = brute_coefficients(u);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-13);
    Field back = from_coefficients(g, fast);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(back[j] - u[j]) < 1e-13);
  }
}

TEST_CASE("sobolev_norm closed forms") {
  GridSpec g = make_grid(1, 16, pi);
  Field one = Field::sample(g, [](const Point&) { return cplx(1.0); });
  for (double s : {-2.0, 0.0, 0.5, 3.0}) CHECK(sobolev_norm(one, s) == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-14));

  Field wave = Field::sample(g, [](const Point& x) { return std::exp(cplx(0.0, x[0])); });
  CHECK(sobolev_norm(wave, 1.0) == doctest::Approx(std::sqrt(2 * pi) * std::sqrt(2.0)).epsilon(1e-14));

  Field cosine = Field::sample(g, [](const Point& x) { return 2.0 * std::cos(x[0]); });
  CHECK(sobolev_norm(cosine, 0.0) == doctest::Approx(std::sqrt(2 * pi) * std::sqrt(2.0)).epsilon(1e-14));

  Field bad(g);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(sobolev_norm(bad, 0.0), NumericalError);
  CHECK_THROWS_AS(apply_lambda(bad, 1.0), NumericalError);
}

TEST_CASE("apply_lambda examples") {
  GridSpec g = make_grid(1, 16, pi);
  Field u = random_field(g, 3);
  Field same = apply_lambda(u, 0.0);
  for (std::size_t j = 0; j < u.size(); ++j) CHECK(same[j] == u[j]);

  Field wave = Field::sample(g, [](const Point& x) { return std::exp(cplx(0.0, x[0])); });
  Field twice = apply_lambda(wave, 2.0);
  for (std::size_t j = 0; j < u.size(); ++j) CHECK(std::abs(twice[j] - 2.0 * wave[j]) < 1e-13);

  // A delta at the origin has flat coefficients; Lambda^-1 scales them by <kappa>^-1.
  Field delta(g);
  delta[8] = 1.0 / g.step();
  Spectrum c = fourier_coefficients(apply_lambda(delta, -1.0));
  for (std::size_t k = 0; k < g.size(); ++k) {
    double kappa = g.wavenumber(int(k));
    CHECK(std::abs(c[k] - cplx(1.0 / (2 * pi) / std::sqrt(1 + kappa * kappa))) < 1e-14);
  }
}

TEST_CASE("weight_field examples") {
  GridSpec g = make_grid(2, 8, 4.0);
  Field one = Field::sample(g, [](const Point&) { return cplx(1.0); });
  Field w = weight_field(one, -2.0);
  CHECK(w[4 * 8 + 4] == cplx(1.0));
  std::size_t at_1_0 = 5 * 8 + 4;  // x = (1, 0)
  CHECK(g.node(at_1_0)[0] == 1.0);
  CHECK(w[at_1_0].real() == doctest::Approx(0.5).epsilon(1e-15));
  Field same = weight_field(one, 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(same[j] == one[j]);
}

TEST_CASE("Parseval, group law and monotonicity on random fields") {
  for (int dim : {1, 2}) {
    GridSpec g = make_grid(dim, dim == 1 ? 64 : 16, 3.0);
    for (unsigned seed = 0; seed < 5; ++seed) {
      Field u = random_field(g, seed);
      double grid_sum = 0.0;
      for (cplx v : u.values()) grid_sum += std::norm(v);
      grid_sum *= g.cell_volume();
      double n0 = sobolev_norm(u, 0.0);
      CHECK(std::abs(n0 * n0 - grid_sum) <= 1e-12 * grid_sum);

      Field a = apply_lambda(u, 0.7 + -1.3);
      Field b = apply_lambda(apply_lambda(u, 0.7), -1.3);
      double scale = l2_norm(a);
      CHECK(l2_norm(a - b) <= 1e-12 * scale);

      Field back = apply_lambda(apply_lambda(u, 2.5), -2.5);
      CHECK(l2_norm(back - u) <= 1e-12 * l2_norm(u));

      double prev = sobolev_norm(u, -2.0);
      for (double s = -1.5; s <= 3.0; s += 0.5) {
        double cur = sobolev_norm(u, s);
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("spectral derivative of a trigonometric polynomial") {
  GridSpec g = make_grid(2, 16, pi);
  Field u = Field::sample(g, [](const Point& x) { return cplx(std::sin(2 * x[0]) * std::cos(3 * x[1])); });
  Field d = partial_derivative(u, {1, 2});
  Field exact = Field::sample(g, [](const Point& x) { return cplx(-18.0 * std::cos(2 * x[0]) * std::cos(3 * x[1])); });
  CHECK(l2_norm(d - exact) < 1e-11);
}
