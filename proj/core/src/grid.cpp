#include "vws/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vws/error.hpp"
#include "vws/fft.hpp"

namespace vws {

std::size_t GridSpec::size() const {
  return dim == 1 ? std::size_t(points) : std::size_t(points) * points;
}

double GridSpec::cell_volume() const { return std::pow(step(), dim); }

double GridSpec::domain_volume() const { return std::pow(2.0 * half_length, dim); }

double GridSpec::wavenumber(int i) const { return std::numbers::pi * mode(i) / half_length; }

double GridSpec::max_wavenumber() const { return std::numbers::pi * (points / 2) / half_length; }

std::array<int, 2> GridSpec::axis_indices(std::size_t flat) const {
  if (dim == 1) return {int(flat), 0};
  return {int(flat / points), int(flat % points)};
}

Point GridSpec::node(std::size_t flat) const {
  auto [i, j] = axis_indices(flat);
  if (dim == 1) return {coordinate(i), 0.0};
  return {coordinate(i), coordinate(j)};
}

Point GridSpec::frequency(std::size_t flat) const {
  auto [i, j] = axis_indices(flat);
  if (dim == 1) return {wavenumber(i), 0.0};
  return {wavenumber(i), wavenumber(j)};
}

GridSpec make_grid(int n, int M, double L) {
  if (n != 1 && n != 2) fail_domain("grid dimension must be 1 or 2, got " + std::to_string(n));
  if (M < 8 || (M & (M - 1)) != 0)
    fail_domain("grid points per axis must be a power of two >= 8, got " + std::to_string(M));
  if (!(L > 0.0) || !std::isfinite(L)) fail_domain("grid half-length must be positive");
  return GridSpec{n, M, L};
}

double norm(const Point& p) { return std::hypot(p[0], p[1]); }

double japanese(const Point& p) { return std::sqrt(1.0 + p[0] * p[0] + p[1] * p[1]); }

Field::Field(const GridSpec& g) : grid_(g), values_(g.size()) {}

Field::Field(const GridSpec& g, std::vector<cplx> values) : grid_(g), values_(std::move(values)) {
  if (values_.size() != g.size()) fail_domain("field value count does not match the grid");
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

Field& Field::operator*=(cplx c) {
  for (auto& v : values_) v *= c;
  return *this;
}

Field& Field::add_scaled(cplx c, const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += c * other.values_[j];
  return *this;
}

bool Field::finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx c, Field a) { return a *= c; }

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) fail_domain("grid mismatch");
}

void require_finite(const Field& u, const char* where) {
  if (!u.finite()) throw NumericalError(std::string("non-finite field passed to ") + where);
}

namespace {

// (-1)^(k0 + k1): the phase from placing node 0 at -L.
double origin_sign(const GridSpec& g, std::size_t flat) {
  auto [i, j] = g.axis_indices(flat);
  int k = g.mode(i) + (g.dim == 2 ? g.mode(j) : 0);
  return (k & 1) ? -1.0 : 1.0;
}

template <class T>
Field multiply_modes(const Field& u, std::span<const T> mult) {
  const GridSpec& g = u.grid();
  if (mult.size() != g.size()) fail_domain("multiplier size does not match the grid");
  std::vector<cplx> spec(g.size());
  fft::forward(g, u.values(), spec);
  const double scale = 1.0 / double(g.size());
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= mult[k] * scale;
  Field out(g);
  fft::backward(g, spec, out.values());
  return out;
}

}  // namespace

Spectrum fourier_coefficients(const Field& u) {
  const GridSpec& g = u.grid();
  Spectrum c(g.size());
  fft::forward(g, u.values(), c);
  const double scale = 1.0 / double(g.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= origin_sign(g, k) * scale;
  return c;
}

Field from_coefficients(const GridSpec& g, const Spectrum& c) {
  if (c.size() != g.size()) fail_domain("coefficient count does not match the grid");
  Spectrum shifted(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) shifted[k] = c[k] * origin_sign(g, k);
  Field out(g);
  fft::backward(g, shifted, out.values());
  return out;
}

Field apply_multiplier(const Field& u, std::span<const double> mult) {
  return multiply_modes(u, mult);
}

Field apply_multiplier(const Field& u, std::span<const cplx> mult) {
  return multiply_modes(u, mult);
}

double sobolev_norm(const GridSpec& g, const Spectrum& c, double s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    Point kappa = g.frequency(k);
    double w = s == 0.0 ? 1.0 : std::pow(1.0 + kappa[0] * kappa[0] + kappa[1] * kappa[1], s);
    acc += w * std::norm(c[k]);
  }
  return std::sqrt(g.domain_volume() * acc);
}

double sobolev_norm(const Field& u, double s) {
  require_finite(u, "sobolev_norm");
  return sobolev_norm(u.grid(), fourier_coefficients(u), s);
}

double l2_norm(const Field& u) {
  double acc = 0.0;
  for (cplx v : u.values()) acc += std::norm(v);
  return std::sqrt(u.grid().cell_volume() * acc);
}

double sup_norm(const Field& u) {
  double m = 0.0;
  for (cplx v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

Field apply_lambda(const Field& u, double s) {
  require_finite(u, "apply_lambda");
  if (s == 0.0) return u;
  auto mult = multiplier_table(u.grid(), [s](const Point& k) {
    return std::pow(1.0 + k[0] * k[0] + k[1] * k[1], 0.5 * s);
  });
  return apply_multiplier(u, std::span<const double>(mult));
}

Field weight_field(const Field& u, double p) {
  if (p == 0.0) return u;
  Field out(u);
  const GridSpec& g = u.grid();
  for (std::size_t j = 0; j < out.size(); ++j) {
    Point x = g.node(j);
    out[j] *= std::pow(1.0 + x[0] * x[0] + x[1] * x[1], 0.5 * p);
  }
  return out;
}

Field partial_derivative(const Field& u, std::array<int, 2> order) {
  const GridSpec& g = u.grid();
  if (order[0] < 0 || order[1] < 0 || (g.dim == 1 && order[1] != 0))
    fail_domain("invalid derivative multi-index");
  if (order[0] == 0 && order[1] == 0) return u;
  std::vector<cplx> mult(g.size());
  for (std::size_t k = 0; k < mult.size(); ++k) {
    Point kappa = g.frequency(k);
    cplx m = 1.0;
    for (int a = 0; a < 2; ++a)
      for (int r = 0; r < order[a]; ++r) m *= cplx(0.0, kappa[a]);
    mult[k] = m;
  }
  return apply_multiplier(u, std::span<const cplx>(mult));
}

}  // namespace vws
