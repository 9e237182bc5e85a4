#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vws {

using cplx = std::complex<double>;

// A point in space or frequency; the second entry is unused (zero) in 1D.
using Point = std::array<double, 2>;

// Uniform periodic grid on [-L, L)^n with M nodes per axis.
// Flat node index is row-major with axis 0 slowest.
struct GridSpec {
  int dim = 1;
  int points = 8;
  double half_length = 1.0;

  std::size_t size() const;
  double step() const { return 2.0 * half_length / points; }
  double cell_volume() const;
  double domain_volume() const;

  // Coordinate of per-axis node index i: -L + i h.
  double coordinate(int i) const { return -half_length + step() * i; }
  // Signed mode number of FFT-ordered per-axis index i, in [-M/2, M/2).
  int mode(int i) const { return i < points / 2 ? i : i - points; }
  double wavenumber(int i) const;
  double max_wavenumber() const;

  Point node(std::size_t flat) const;
  Point frequency(std::size_t flat) const;
  std::array<int, 2> axis_indices(std::size_t flat) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

GridSpec make_grid(int n, int M, double L);

inline double japanese(double r) { return std::sqrt(1.0 + r * r); }
double norm(const Point& p);
double japanese(const Point& p);

// Complex grid function bound to a GridSpec.
class Field {
 public:
  explicit Field(const GridSpec& g);
  Field(const GridSpec& g, std::vector<cplx> values);

  template <class F>
  static Field sample(const GridSpec& g, F&& f) {
    Field out(g);
    for (std::size_t j = 0; j < out.size(); ++j) out.values_[j] = f(g.node(j));
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  cplx& operator[](std::size_t j) { return values_[j]; }
  const cplx& operator[](std::size_t j) const { return values_[j]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx c);
  // this += c * other
  Field& add_scaled(cplx c, const Field& other);

  bool finite() const;

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field a);

void require_same_grid(const GridSpec& a, const GridSpec& b);
void require_finite(const Field& u, const char* where);

// Fourier coefficients in FFT order, normalised so that u_j = sum_k c_k exp(i kappa_k . x_j).
using Spectrum = std::vector<cplx>;

Spectrum fourier_coefficients(const Field& u);
Field from_coefficients(const GridSpec& g, const Spectrum& c);

// Multiplies mode k by mult[k] (FFT order).
Field apply_multiplier(const Field& u, std::span<const double> mult);
Field apply_multiplier(const Field& u, std::span<const cplx> mult);

template <class F>
std::vector<double> multiplier_table(const GridSpec& g, F&& symbol) {
  std::vector<double> m(g.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = symbol(g.frequency(k));
  return m;
}

double sobolev_norm(const Field& u, double s);
double sobolev_norm(const GridSpec& g, const Spectrum& c, double s);
double l2_norm(const Field& u);
double sup_norm(const Field& u);

Field apply_lambda(const Field& u, double s);
Field weight_field(const Field& u, double p);

// Spectral partial derivative d^order (not the D = -i d convention).
Field partial_derivative(const Field& u, std::array<int, 2> order);

}  // namespace vws
