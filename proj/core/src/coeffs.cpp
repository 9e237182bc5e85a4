#include "vws/coeffs.hpp"

#include <algorithm>
#include <cmath>

#include "vws/error.hpp"

namespace vws {

bool CoefficientModel::smooth() const {
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j)
      if (!perturbation[i][j].smooth()) return false;
    if (!drift_real[i].smooth() || !drift_imag[i].smooth()) return false;
  }
  return potential.smooth();
}

bool CoefficientModel::principal_constant() const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!perturbation[i][j].is_zero()) return false;
  return true;
}

void validate(const CoefficientModel& model) {
  require(model.dim == 1 || model.dim == 2, "model dimension must be 1 or 2");
  require(model.weight_exponent > 1, "weight exponent N must be an integer > 1");
  require(model.nu >= 0.0 && model.c0 >= 0.0, "smallness constants nu and c0 must be nonnegative");
  for (int i = 0; i < model.dim; ++i) {
    for (int j = 0; j < model.dim; ++j) {
      require(std::isfinite(model.principal[i][j]), "principal matrix must be finite");
      require(model.principal[i][j] == model.principal[j][i], "principal matrix must be symmetric");
      require(model.perturbation[i][j] == model.perturbation[j][i], "perturbation must be symmetric");
      validate(model.perturbation[i][j], model.dim);
    }
    validate(model.drift_real[i], model.dim);
    validate(model.drift_imag[i], model.dim);
  }
  validate(model.potential, model.dim);
}

std::vector<std::string> preset_names() {
  return {"free", "ultra-diagonal", "elliptic-lipschitz", "delta-potential", "jump-drift", "smooth-consistency"};
}

ParamMap preset_parameters(const std::string& name) {
  if (name == "free") return {{"N", 2}};
  if (name == "ultra-diagonal") return {{"c1", 1.0}, {"c2", -1.0}, {"nu", 0.05}, {"N", 2}, {"width", 2.0}};
  if (name == "elliptic-lipschitz") return {{"nu", 0.05}, {"N", 2}, {"radius", 2.0}};
  if (name == "delta-potential") return {{"mass", 1.0}, {"N", 2}};
  if (name == "jump-drift") return {{"amplitude", 0.5}, {"c0", 0.05}, {"N", 2}, {"width", 2.0}};
  if (name == "smooth-consistency") return {{"nu", 0.05}, {"N", 2}, {"width", 2.0}};
  fail_domain("unknown preset '" + name + "'");
}

CoefficientModel preset(const std::string& name, int dim, const ParamMap& params) {
  ParamMap p = preset_parameters(name);
  for (const auto& [key, value] : params) {
    if (!p.count(key)) fail_domain("preset '" + name + "' has no parameter '" + key + "'");
    p[key] = value;
  }
  require(dim == 1 || dim == 2, "preset dimension must be 1 or 2");

  CoefficientModel m;
  m.name = name;
  m.dim = dim;
  double n_weight = p["N"];
  require(n_weight == std::floor(n_weight) && n_weight > 1, "N must be an integer > 1");
  m.weight_exponent = int(n_weight);
  const int N = m.weight_exponent;
  if (p.count("nu")) m.nu = p["nu"];
  if (p.count("c0")) m.c0 = p["c0"];

  if (name == "ultra-diagonal") {
    require(dim == 2, "ultra-diagonal is a two-dimensional model");
    require(p["c1"] > 0.0, "ultra-diagonal requires c1 > 0");
    require(p["c2"] != 0.0, "ultra-diagonal requires c2 != 0");
    m.principal = {{{p["c1"], 0.0}, {0.0, p["c2"]}}};
    for (int j = 0; j < 2; ++j) m.perturbation[j][j] = Profile::gaussian_bump(m.nu, p["width"], N);
  } else if (name == "elliptic-lipschitz") {
    for (int j = 0; j < dim; ++j) m.perturbation[j][j] = Profile::tent(m.nu, p["radius"], N);
  } else if (name == "delta-potential") {
    m.potential = Profile::delta(p["mass"]);
  } else if (name == "jump-drift") {
    m.drift_real[0] = Profile::square_wave(p["amplitude"], 0);
    m.drift_imag[0] = Profile::gaussian_bump(m.c0, p["width"], N);
  } else if (name == "smooth-consistency") {
    const double w = p["width"];
    for (int j = 0; j < dim; ++j) m.perturbation[j][j] = Profile::gaussian_bump(m.nu, w, N);
    m.drift_real[0] = Profile::gaussian_bump(m.nu, w);
    m.drift_imag[0] = Profile::gaussian_bump(m.nu, w, N);
    m.potential = Profile::gaussian_bump(m.nu, w);
  }
  validate(m);
  return m;
}

CoefficientSet::CoefficientSet(const GridSpec& g) : grid(g), drift(g.dim, Field(g)), potential(g) {}

double CoefficientSet::principal_norm_max() const {
  double best = 0.0;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    double v;
    if (grid.dim == 1) {
      v = std::abs(a[0][0][x]);
    } else {
      double p = a[0][0][x], q = a[1][1][x], r = a[0][1][x];
      double mid = 0.5 * (p + q), rad = std::hypot(0.5 * (p - q), r);
      v = std::max(std::abs(mid + rad), std::abs(mid - rad));
    }
    best = std::max(best, v);
  }
  return best;
}

double CoefficientSet::drift_max() const {
  double best = 0.0;
  for (const Field& b : drift) best = std::max(best, sup_norm(b));
  return best;
}

double CoefficientSet::potential_max() const { return sup_norm(potential); }

namespace {

CoefficientSet build(const CoefficientModel& model, const Mollifier& m, double omega, const GridSpec& g) {
  validate(model);
  require(model.dim == g.dim, "model and grid dimensions differ");
  CoefficientSet cs(g);
  cs.omega = omega;
  const int n = g.dim;

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Spectrum c = regularised_coefficients(model.perturbation[i][j], g, m, omega);
      std::vector<double> values(g.size(), model.principal[i][j]);
      std::array<std::vector<double>, 2> grads;
      if (!model.perturbation[i][j].is_zero()) {
        std::vector<double> pert = omega == 0.0 ? regularised_profile(model.perturbation[i][j], g, m, 0.0)
                                                : real_part(from_coefficients(g, c));
        for (std::size_t x = 0; x < values.size(); ++x) values[x] += pert[x];
        Field f = omega == 0.0 ? to_field(g, pert) : from_coefficients(g, c);
        for (int k = 0; k < n; ++k) {
          std::array<int, 2> order{0, 0};
          order[k] = 1;
          grads[k] = real_part(partial_derivative(f, order));
        }
      } else {
        for (int k = 0; k < n; ++k) grads[k].assign(g.size(), 0.0);
      }
      cs.a[i][j] = values;
      cs.a[j][i] = std::move(values);
      for (int k = 0; k < n; ++k) {
        cs.da[k][i][j] = grads[k];
        cs.da[k][j][i] = std::move(grads[k]);
      }
    }
  }

  for (int k = 0; k < n; ++k) {
    auto re = regularised_profile(model.drift_real[k], g, m, omega);
    auto im = regularised_profile(model.drift_imag[k], g, m, omega);
    for (std::size_t x = 0; x < g.size(); ++x) cs.drift[k][x] = cplx(re[x], im[x]);
  }
  auto v = regularised_profile(model.potential, g, m, omega);
  for (std::size_t x = 0; x < g.size(); ++x) cs.potential[x] = v[x];
  return cs;
}

}  // namespace

CoefficientSet regularise_at(const CoefficientModel& model, const Mollifier& m, double omega, const GridSpec& g) {
  require(m.kind == MollifierKind::gaussian, "coefficient regularisation requires a gaussian (positive) mollifier");
  validate(m);
  require(omega > 0.0 && std::isfinite(omega), "regularisation scale must be positive");
  return build(model, m, omega, g);
}

CoefficientSet regularise(const CoefficientModel& model, const Mollifier& m, double eps, const ScaleFn& scale,
                          const GridSpec& g) {
  CoefficientSet cs = regularise_at(model, m, scale_omega(scale, eps), g);
  cs.eps = eps;
  return cs;
}

CoefficientSet sample_coefficients(const CoefficientModel& model, const GridSpec& g) {
  require(model.smooth(), "model '" + model.name + "' has singular coefficients and cannot be sampled directly");
  return build(model, Mollifier::gaussian(), 0.0, g);
}

}  // namespace vws
