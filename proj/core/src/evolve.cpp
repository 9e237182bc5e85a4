#include "vws/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vws/error.hpp"
#include "vws/fft.hpp"

namespace vws {

cplx Forcing::factor(double t) const {
  if (time == Time::constant) return 1.0;
  return std::polar(1.0, frequency * t);
}

double spectral_radius_bound(const CoefficientSet& cs) {
  const double kmax = cs.grid.max_wavenumber();
  return cs.principal_norm_max() * cs.dim() * kmax * kmax + cs.drift_max() * kmax + cs.potential_max();
}

double stable_step(const CoefficientSet& cs) {
  double rho = spectral_radius_bound(cs);
  require(std::isfinite(rho) && rho > 0.0, "evolution: the generator bound must be positive and finite");
  return 0.8 * 2.8 / rho;
}

double effective_step(const EvolutionProblem& prob) {
  double dt = prob.dt > 0.0 ? prob.dt : stable_step(prob.cs);
  double steps = std::max(1.0, std::ceil(prob.T / dt * (1.0 - 1e-12)));
  return prob.T / steps;
}

void validate(const EvolutionProblem& prob) {
  require(std::isfinite(prob.T) && prob.T > 0.0, "evolution: T must be positive");
  require(std::isfinite(prob.dt) && prob.dt >= 0.0, "evolution: dt must be non-negative (0 selects auto)");
  require_same_grid(prob.cs.grid, prob.u0.grid());
  require_finite(prob.u0, "initial data");
  if (prob.forcing.shape) {
    require_same_grid(prob.cs.grid, prob.forcing.shape->grid());
    require_finite(*prob.forcing.shape, "forcing");
  }
  require(prob.N > 1, "evolution: N must exceed 1");
  require(!prob.orders.empty(), "evolution: at least one Sobolev order must be tracked");
  for (double s : prob.orders) require(std::isfinite(s), "evolution: Sobolev orders must be finite");
  double bound = stable_step(prob.cs);
  if (prob.dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "evolution: dt = " << prob.dt << " exceeds the stability bound " << bound;
    throw DomainError(msg.str());
  }
}

SpatialOperator::SpatialOperator(const CoefficientSet& cs) : grid_(cs.grid), n_(cs.dim()) {
  const std::size_t size = grid_.size();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      a_[i][j] = cs.a[i][j];
      active_[i][j] = std::any_of(a_[i][j].begin(), a_[i][j].end(), [](double v) { return v != 0.0; });
    }
  for (const Field& b : cs.drift) {
    bool any = std::any_of(b.values().begin(), b.values().end(), [](cplx v) { return v != 0.0; });
    drift_.emplace_back(any ? std::vector<cplx>(b.values().begin(), b.values().end()) : std::vector<cplx>());
  }
  drift_.resize(n_);
  potential_.assign(cs.potential.values().begin(), cs.potential.values().end());
  has_potential_ = std::any_of(potential_.begin(), potential_.end(), [](cplx v) { return v != 0.0; });
  for (int k = 0; k < n_; ++k) {
    kappa_[k].resize(size);
    for (std::size_t f = 0; f < size; ++f) kappa_[k][f] = grid_.frequency(f)[k];
    du_[k].resize(size);
    w_[k].resize(size);
  }
  spec_.resize(size);
  acc_.resize(size);
}

void SpatialOperator::apply(std::span<const cplx> u, std::span<cplx> out) {
  const std::size_t size = grid_.size();
  require(u.size() == size && out.size() == size, "spatial operator: size mismatch");
  const double inv = 1.0 / double(size);
  fft::forward(grid_, u, spec_);
  for (int j = 0; j < n_; ++j) {
    for (std::size_t f = 0; f < size; ++f) acc_[f] = spec_[f] * (kappa_[j][f] * inv);
    fft::backward(grid_, acc_, du_[j]);
  }
  std::fill(acc_.begin(), acc_.end(), cplx(0.0));
  for (int i = 0; i < n_; ++i) {
    bool any = false;
    std::fill(w_[i].begin(), w_[i].end(), cplx(0.0));
    for (int j = 0; j < n_; ++j) {
      if (!active_[i][j]) continue;
      any = true;
      const auto& a = a_[i][j];
      for (std::size_t x = 0; x < size; ++x) w_[i][x] += a[x] * du_[j][x];
    }
    if (!any) continue;
    fft::forward(grid_, w_[i], spec_);
    for (std::size_t f = 0; f < size; ++f) acc_[f] += spec_[f] * (kappa_[i][f] * inv);
  }
  fft::backward(grid_, acc_, out);
  for (int k = 0; k < n_; ++k) {
    if (drift_[k].empty()) continue;
    for (std::size_t x = 0; x < size; ++x) out[x] += drift_[k][x] * du_[k][x];
  }
  if (has_potential_)
    for (std::size_t x = 0; x < size; ++x) out[x] += potential_[x] * u[x];
}

Field SpatialOperator::apply(const Field& u) {
  require_same_grid(grid_, u.grid());
  Field out(grid_);
  apply(u.values(), out.values());
  return out;
}

Field apply_spatial(const CoefficientSet& cs, const Field& u) {
  SpatialOperator op(cs);
  return op.apply(u);
}

std::size_t NormSeries::order_index(double s) const {
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] == s) return i;
  fail_domain("norm series does not track the requested Sobolev order");
}

double NormSeries::sup_norm(std::size_t order) const {
  require(order < norm.size(), "norm series: order index out of range");
  return norm[order].empty() ? 0.0 : *std::max_element(norm[order].begin(), norm[order].end());
}

Integrator::Integrator(const EvolutionProblem& prob, int snapshot_stride)
    : prob_(prob),
      op_(prob.cs),
      stride_(snapshot_stride),
      steps_(0),
      dt_(0.0),
      u_(prob.u0),
      k1_(prob.u0.grid()),
      k2_(prob.u0.grid()),
      k3_(prob.u0.grid()),
      k4_(prob.u0.grid()),
      tmp_(prob.u0.grid()) {
  validate(prob_);
  require(snapshot_stride >= 0, "snapshot stride must be non-negative");
  dt_ = effective_step(prob_);
  steps_ = int(std::lround(prob_.T / dt_));
  const std::size_t orders = prob_.orders.size();
  series_.orders = prob_.orders;
  series_.norm.resize(orders);
  series_.integrand.resize(orders);
  series_.integral.resize(orders);
  record();
  if (stride_ > 0) snapshots_.push_back({0.0, u_});
}

void Integrator::rhs(const Field& u, double t, Field& out) {
  op_.apply(u.values(), out.values());
  if (prob_.forcing.shape) out.add_scaled(prob_.forcing.factor(t), *prob_.forcing.shape);
  out *= cplx(0.0, 1.0);
}

void Integrator::record() {
  const GridSpec& g = u_.grid();
  Spectrum c = fourier_coefficients(u_);
  series_.times.push_back(t_);
  for (std::size_t i = 0; i < prob_.orders.size(); ++i) {
    double s = prob_.orders[i];
    series_.norm[i].push_back(sobolev_norm(g, c, s));
    Spectrum lifted = c;
    for (std::size_t k = 0; k < lifted.size(); ++k) {
      Point kappa = g.frequency(k);
      lifted[k] *= std::pow(1.0 + kappa[0] * kappa[0] + kappa[1] * kappa[1], 0.5 * (s + 0.5));
    }
    double w = l2_norm(weight_field(from_coefficients(g, lifted), -0.5 * prob_.N));
    double value = w * w;
    auto& integral = series_.integral[i];
    auto& integrand = series_.integrand[i];
    double prev_total = integral.empty() ? 0.0 : integral.back();
    double increment = integrand.empty() ? 0.0 : 0.5 * dt_ * (integrand.back() + value);
    integrand.push_back(value);
    integral.push_back(prev_total + increment);
  }
}

void Integrator::advance() {
  require(!done(), "integrator: already at the final time");
  const double h = dt_;
  const double before = l2_norm(u_);
  rhs(u_, t_, k1_);
  tmp_ = u_;
  tmp_.add_scaled(0.5 * h, k1_);
  rhs(tmp_, t_ + 0.5 * h, k2_);
  tmp_ = u_;
  tmp_.add_scaled(0.5 * h, k2_);
  rhs(tmp_, t_ + 0.5 * h, k3_);
  tmp_ = u_;
  tmp_.add_scaled(h, k3_);
  rhs(tmp_, t_ + h, k4_);
  u_.add_scaled(h / 6.0, k1_);
  u_.add_scaled(h / 3.0, k2_);
  u_.add_scaled(h / 3.0, k3_);
  u_.add_scaled(h / 6.0, k4_);
  ++step_;
  t_ = step_ == steps_ ? prob_.T : double(step_) * h;

  const double after = l2_norm(u_);
  if (!std::isfinite(after) || (before > 0.0 && after > 10.0 * before)) {
    std::ostringstream msg;
    msg << "evolution unstable at step " << step_ << " (t = " << t_ << "): L2 norm went from " << before << " to "
        << after << " with dt = " << h << ", stability bound " << stable_step(prob_.cs);
    throw NumericalError(msg.str());
  }
  record();
  if (stride_ > 0 && (step_ % stride_ == 0 || done())) snapshots_.push_back({t_, u_});
}

void Integrator::run() {
  while (!done()) advance();
}

Field step_rk4(const Field& u, double t, double dt, const EvolutionProblem& prob) {
  validate(prob);
  require(std::isfinite(dt) && dt > 0.0, "rk4: dt must be positive");
  require(dt <= stable_step(prob.cs) * (1.0 + 1e-12), "rk4: dt exceeds the stability bound");
  require_same_grid(u.grid(), prob.cs.grid);
  SpatialOperator op(prob.cs);
  auto f = [&](const Field& v, double time) {
    Field out = op.apply(v);
    if (prob.forcing.shape) out.add_scaled(prob.forcing.factor(time), *prob.forcing.shape);
    out *= cplx(0.0, 1.0);
    return out;
  };
  Field k1 = f(u, t);
  Field k2 = f(u + (0.5 * dt) * k1, t + 0.5 * dt);
  Field k3 = f(u + (0.5 * dt) * k2, t + 0.5 * dt);
  Field k4 = f(u + dt * k3, t + dt);
  Field out = u;
  out.add_scaled(dt / 6.0, k1).add_scaled(dt / 3.0, k2).add_scaled(dt / 3.0, k3).add_scaled(dt / 6.0, k4);
  double before = l2_norm(u), after = l2_norm(out);
  if (!std::isfinite(after) || (before > 0.0 && after > 10.0 * before))
    throw NumericalError("rk4 step unstable: L2 norm grew more than tenfold");
  return out;
}

Solution solve(const EvolutionProblem& prob, int snapshot_stride) {
  Integrator it(prob, snapshot_stride);
  it.run();
  return {it.state(), it.series(), std::move(it.snapshots()), it.step_size(), it.steps()};
}

}  // namespace vws
