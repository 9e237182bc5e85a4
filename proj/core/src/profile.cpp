#include "vws/profile.hpp"

#include <cmath>
#include <numbers>

#include "vws/error.hpp"

namespace vws {

bool Profile::singular() const {
  return kind == ProfileKind::delta || kind == ProfileKind::square_wave || kind == ProfileKind::hat_wave;
}

bool Profile::smooth() const {
  return is_zero() || kind == ProfileKind::constant || kind == ProfileKind::sine ||
         kind == ProfileKind::gaussian_bump || kind == ProfileKind::bump_derivative;
}

double Profile::evaluate(const Point& x) const {
  const double r2 = x[0] * x[0] + x[1] * x[1];
  const double xa = x[axis];
  double shape = 0.0;
  switch (kind) {
    case ProfileKind::zero: return 0.0;
    case ProfileKind::constant: shape = 1.0; break;
    case ProfileKind::delta: fail_domain("a delta profile has no pointwise values");
    case ProfileKind::square_wave: shape = xa > 0.0 ? 1.0 : (xa < 0.0 ? -1.0 : 0.0); break;
    case ProfileKind::hat_wave: shape = std::abs(xa); break;
    case ProfileKind::sine: shape = std::sin(wavenumber * xa); break;
    case ProfileKind::gaussian_bump: shape = std::exp(-0.5 * r2 / (width * width)); break;
    case ProfileKind::tent: shape = std::max(0.0, 1.0 - std::sqrt(r2) / width); break;
    case ProfileKind::bump_derivative:
      shape = -xa / (width * width) * std::exp(-0.5 * r2 / (width * width));
      break;
  }
  double env = envelope == 0 ? 1.0 : std::pow(1.0 + r2, -0.5 * envelope);
  return amplitude * shape * env;
}

void validate(const Profile& p, int dim) {
  require(std::isfinite(p.amplitude), "profile amplitude must be finite");
  require(p.axis >= 0 && p.axis < dim, "profile axis outside the grid dimension");
  require(p.envelope >= 0, "profile envelope exponent must be nonnegative");
  require(p.width > 0.0, "profile width must be positive");
  if (p.singular()) require(p.envelope == 0, "singular profiles take no envelope");
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::zero: return "zero";
    case ProfileKind::constant: return "constant";
    case ProfileKind::delta: return "delta";
    case ProfileKind::square_wave: return "square-wave";
    case ProfileKind::hat_wave: return "hat-wave";
    case ProfileKind::sine: return "sine";
    case ProfileKind::gaussian_bump: return "gaussian-bump";
    case ProfileKind::tent: return "tent";
    case ProfileKind::bump_derivative: return "bump-derivative";
  }
  return "?";
}

Spectrum profile_coefficients(const Profile& p, const GridSpec& g) {
  validate(p, g.dim);
  Spectrum c(g.size(), 0.0);
  if (p.is_zero()) return c;
  if (!p.singular()) return fourier_coefficients(Field::sample(g, [&](const Point& x) { return cplx(p.evaluate(x)); }));

  const double L = g.half_length;
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto idx = g.axis_indices(k);
    int ka = g.mode(idx[p.axis]);
    bool others_zero = g.dim == 1 || g.mode(idx[1 - p.axis]) == 0;
    switch (p.kind) {
      case ProfileKind::delta:
        c[k] = p.amplitude / g.domain_volume();
        break;
      case ProfileKind::square_wave:
        if (others_zero && (ka & 1)) c[k] = cplx(0.0, -2.0 * p.amplitude / (std::numbers::pi * ka));
        break;
      case ProfileKind::hat_wave:
        if (!others_zero) break;
        if (ka == 0) c[k] = p.amplitude * 0.5 * L;
        else if (ka & 1) c[k] = -2.0 * p.amplitude * L / (std::numbers::pi * std::numbers::pi * double(ka) * ka);
        break;
      default:
        break;
    }
  }
  return c;
}

Spectrum regularised_coefficients(const Profile& p, const GridSpec& g, const Mollifier& m, double omega) {
  Spectrum c = profile_coefficients(p, g);
  if (omega == 0.0) return c;
  return mollify(g, c, m, omega);
}

std::vector<double> regularised_profile(const Profile& p, const GridSpec& g, const Mollifier& m, double omega) {
  if (p.is_zero()) return std::vector<double>(g.size(), 0.0);
  if (omega == 0.0 && !p.singular()) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = p.evaluate(g.node(j));
    return v;
  }
  if (omega == 0.0) fail_domain("singular profile '" + to_string(p.kind) + "' cannot be sampled unregularised");
  return real_part(from_coefficients(g, regularised_coefficients(p, g, m, omega)));
}

std::vector<double> real_part(const Field& u) {
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = u[j].real();
  return v;
}

Field to_field(const GridSpec& g, const std::vector<double>& v) {
  Field u(g);
  for (std::size_t j = 0; j < v.size(); ++j) u[j] = v[j];
  return u;
}

double refined_sup(const GridSpec& g, const Spectrum& c, int factor) {
  require(factor >= 1, "refinement factor must be positive");
  if (factor == 1) return sup_norm(from_coefficients(g, c));
  GridSpec fine{g.dim, g.points * factor, g.half_length};
  Spectrum padded(fine.size(), 0.0);
  auto fine_index = [&](int mode) { return mode >= 0 ? mode : mode + fine.points; };
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto idx = g.axis_indices(k);
    std::size_t f = fine_index(g.mode(idx[0]));
    if (g.dim == 2) f = f * fine.points + fine_index(g.mode(idx[1]));
    padded[f] = c[k];
  }
  return sup_norm(from_coefficients(fine, padded));
}

}  // namespace vws
