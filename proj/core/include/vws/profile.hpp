#pragma once

#include <string>
#include <vector>

#include "vws/grid.hpp"
#include "vws/mollify.hpp"

namespace vws {

enum class ProfileKind {
  zero,
  constant,
  delta,            // Dirac mass at the origin
  square_wave,      // sign(x_axis), balanced and periodic
  hat_wave,         // |x_axis|, periodic Lipschitz
  sine,             // sin(wavenumber x_axis)
  gaussian_bump,    // exp(-|x|^2 / (2 width^2))
  tent,             // (1 - |x| / width)_+
  bump_derivative,  // d/dx_axis of the gaussian bump
};

// Scalar closed-form generator: amplitude * shape(x) * <x>^-envelope.
// Singular kinds (delta, square and hat waves) are represented by their
// exact Fourier series and take no envelope.
struct Profile {
  ProfileKind kind = ProfileKind::zero;
  double amplitude = 0.0;
  double width = 1.0;
  double wavenumber = 1.0;
  int axis = 0;
  int envelope = 0;

  static Profile zero() { return {}; }
  static Profile constant(double c) { return {ProfileKind::constant, c}; }
  static Profile delta(double mass) { return {ProfileKind::delta, mass}; }
  static Profile square_wave(double amp, int axis = 0) {
    return {ProfileKind::square_wave, amp, 1.0, 1.0, axis};
  }
  static Profile hat_wave(double amp, int axis = 0) { return {ProfileKind::hat_wave, amp, 1.0, 1.0, axis}; }
  static Profile sine(double amp, double k, int axis = 0) { return {ProfileKind::sine, amp, 1.0, k, axis}; }
  static Profile gaussian_bump(double amp, double width, int envelope = 0) {
    return {ProfileKind::gaussian_bump, amp, width, 1.0, 0, envelope};
  }
  static Profile tent(double amp, double radius, int envelope = 0) {
    return {ProfileKind::tent, amp, radius, 1.0, 0, envelope};
  }
  static Profile bump_derivative(double amp, double width, int axis = 0) {
    return {ProfileKind::bump_derivative, amp, width, 1.0, axis};
  }

  bool is_zero() const { return kind == ProfileKind::zero || amplitude == 0.0; }
  bool singular() const;
  bool smooth() const;  // C-infinity with bounded derivatives
  double evaluate(const Point& x) const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

void validate(const Profile& p, int dim);
std::string to_string(ProfileKind k);

// Fourier coefficients on g: closed form for singular kinds, transform of the samples otherwise.
Spectrum profile_coefficients(const Profile& p, const GridSpec& g);

// Real grid values of p mollified at scale omega; omega == 0 samples p directly.
std::vector<double> regularised_profile(const Profile& p, const GridSpec& g, const Mollifier& m, double omega);
Spectrum regularised_coefficients(const Profile& p, const GridSpec& g, const Mollifier& m, double omega);

std::vector<double> real_part(const Field& u);
Field to_field(const GridSpec& g, const std::vector<double>& v);

// Maximum of |sum_k c_k e^{i kappa x}| over a grid refined by `factor` via zero padding.
double refined_sup(const GridSpec& g, const Spectrum& c, int factor);

}  // namespace vws
