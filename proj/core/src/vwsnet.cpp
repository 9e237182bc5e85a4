#include "vws/vwsnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "vws/parallel.hpp"

namespace vws {

namespace {

// Derived seeds keep u0 and forcing phases independent.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string eps_label(double eps) {
  std::ostringstream s;
  s << "eps = " << eps;
  return s.str();
}

// Re-raises a library error with the ladder member and stage prepended.
template <class Job>
auto with_context(double eps, const char* stage, Job&& job) {
  try {
    return job();
  } catch (const HypothesisFailure&) {
    throw;
  } catch (const NumericalError& e) {
    throw NumericalError(eps_label(eps) + ", " + stage + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(eps_label(eps) + ", " + stage + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(eps_label(eps) + ", " + stage + ": " + e.what());
  }
}

void validate(const NetParams& p, int dim) {
  require(p.grid.dim == dim, "net: grid dimension differs from the model");
  require_ladder(p.eps, kMinLadder);
  require(std::isfinite(p.T) && p.T > 0.0, "net: T must be positive");
  require(std::isfinite(p.dt) && p.dt >= 0.0, "net: dt must be non-negative");
  require(!p.orders.empty(), "net: at least one Sobolev order is required");
  require(p.N > 1, "net: N must exceed 1");
  require(p.workers >= 1, "net: workers must be positive");
  require(p.slope_cap > 0.0 && p.max_residual > 0.0, "net: tolerances must be positive");
}

EvolutionProblem member_problem(const NetParams& p, CoefficientSet cs, Field u0, Forcing f, double dt) {
  EvolutionProblem prob(std::move(cs), std::move(u0));
  prob.forcing = std::move(f);
  prob.T = p.T;
  prob.dt = dt;
  prob.orders = p.orders;
  prob.N = p.N;
  return prob;
}

FitReport fit_against(const std::string& quantity, std::span<const double> eps, std::span<const double> omega,
                      std::span<const double> values) {
  FitReport r;
  r.quantity = quantity;
  r.eps.assign(eps.begin(), eps.end());
  r.omega.assign(omega.begin(), omega.end());
  r.values.assign(values.begin(), values.end());
  return r;
}

// max over recorded steps of |u - v|_s for two trajectories marched in lockstep.
double lockstep_sup_difference(Integrator& a, Integrator& b, double s) {
  require(a.steps() == b.steps(), "lockstep trajectories take different step counts");
  double sup = sobolev_norm(a.state() - b.state(), s);
  while (!a.done()) {
    a.advance();
    b.advance();
    sup = std::max(sup, sobolev_norm(a.state() - b.state(), s));
  }
  return sup;
}

Field bump_field(const GridSpec& g, double width, int envelope) {
  Profile bump = Profile::gaussian_bump(1.0, width, envelope);
  return Field::sample(g, [&](Point x) { return cplx(bump.evaluate(x)); });
}

// Sorted eigenvalues of the symmetric principal matrix at node x.
std::array<double, 2> principal_eigenvalues(const CoefficientSet& cs, std::size_t x) {
  if (cs.dim() == 1) return {cs.a[0][0][x], cs.a[0][0][x]};
  double p = cs.a[0][0][x], r = cs.a[0][1][x], t = cs.a[1][1][x];
  double mean = 0.5 * (p + t), rad = std::hypot(0.5 * (p - t), r);
  return {mean - rad, mean + rad};
}

// min over x of the perturbed eigenvalues, each signed by the unperturbed one; positive
// exactly when the perturbation keeps the signature (and so the ellipticity) of a.
double signature_margin(const CoefficientSet& base, const CoefficientSet& pert) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < base.grid.size(); ++x) {
    auto b = principal_eigenvalues(base, x);
    auto q = principal_eigenvalues(pert, x);
    for (int i = 0; i < 2; ++i) m = std::min(m, (b[i] < 0.0 ? -1.0 : 1.0) * q[i]);
  }
  return m;
}

CoefficientSet perturbed(const CoefficientSet& cs, const Field& bump, double scale) {
  CoefficientSet out = cs;
  const int n = cs.dim();
  std::vector<double> b = real_part(bump);
  std::array<std::vector<double>, 2> db;
  for (int k = 0; k < n; ++k) {
    std::array<int, 2> order{0, 0};
    order[k] = 1;
    db[k] = real_part(partial_derivative(bump, order));
  }
  for (std::size_t x = 0; x < cs.grid.size(); ++x) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out.a[i][j][x] += scale * b[x];
        for (int k = 0; k < n; ++k) out.da[k][i][j][x] += scale * db[k][x];
      }
    for (int k = 0; k < n; ++k) out.drift[k][x] += scale * b[x];
    out.potential[x] += scale * b[x];
  }
  return out;
}

}  // namespace

bool DataField::is_zero() const {
  switch (kind) {
    case Kind::profile:
      return profile.is_zero();
    case Kind::plane_wave:
    case Kind::rough:
      return amplitude == 0.0;
  }
  return true;
}

bool DataField::smooth() const {
  if (kind == Kind::rough) return is_zero();
  if (kind == Kind::profile) return profile.smooth();
  return true;
}

void validate(const DataField& d, int dim) {
  require(std::isfinite(d.amplitude), "data: amplitude must be finite");
  if (d.kind == DataField::Kind::profile) validate(d.profile, dim);
  if (d.kind == DataField::Kind::plane_wave && dim == 1) require(d.wave[1] == 0, "data: 1D plane waves have one wavenumber");
  if (d.kind == DataField::Kind::rough) require(std::isfinite(d.decay), "data: rough decay exponent must be finite");
}

Field materialise(const DataField& d, const GridSpec& g, std::uint64_t seed) {
  validate(d, g.dim);
  switch (d.kind) {
    case DataField::Kind::profile:
      if (d.profile.singular()) return from_coefficients(g, profile_coefficients(d.profile, g));
      return Field::sample(g, [&](Point x) { return cplx(d.profile.evaluate(x)); });
    case DataField::Kind::plane_wave: {
      const double k0 = std::numbers::pi / g.half_length;
      return Field::sample(g, [&](Point x) { return std::polar(d.amplitude, k0 * (d.wave[0] * x[0] + d.wave[1] * x[1])); });
    }
    case DataField::Kind::rough: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      Spectrum c(g.size());
      for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = std::polar(d.amplitude * std::pow(japanese(g.frequency(k)), -d.decay), phase(rng));
      return from_coefficients(g, c);
    }
  }
  fail_domain("data: unknown kind");
}

CoefficientSet net_coefficients(const CoefficientModel& model, const NetParams& p, double eps) {
  return regularise(model, p.coefficient_mollifier, eps, p.scale, p.grid);
}

Field net_initial_data(const DataSpec& data, const NetParams& p, double eps) {
  Field u = materialise(data.u0, p.grid, mix_seed(p.seed, 0));
  if (p.mollify_data) u = mollify(u, p.data_mollifier, eps);
  if (data.amplitude_power != 0.0) u *= std::pow(eps, data.amplitude_power);
  return u;
}

Forcing net_forcing(const DataSpec& data, const NetParams& p, double eps) {
  if (data.forcing.is_zero()) return Forcing::none();
  Field g = materialise(data.forcing, p.grid, mix_seed(p.seed, 1));
  if (p.mollify_data) g = mollify(g, p.data_mollifier, eps);
  if (data.forcing_time == Forcing::Time::constant) return Forcing::constant(std::move(g));
  return Forcing::oscillating(std::move(g), data.forcing_frequency);
}

EpsilonNet run_net(const CoefficientModel& model, const DataSpec& data, const NetParams& params) {
  validate(model);
  validate(params, model.dim);
  EpsilonNet net;
  net.params = params;
  const std::size_t count = params.eps.size();

  std::vector<std::optional<CoefficientSet>> sets(count);
  parallel_for(count, params.workers, [&](std::size_t e) {
    sets[e] = with_context(params.eps[e], "regularise", [&] { return net_coefficients(model, params, params.eps[e]); });
  });
  if (params.check_hypotheses) {
    std::vector<CoefficientSet> plain;
    for (auto& s : sets) plain.push_back(*s);
    HypothesisReport rep = check_hypotheses(plain, hypothesis_params(model));
    if (!rep.pass()) throw HypothesisFailure("net: model '" + model.name + "' fails the hypotheses on this ladder", rep);
    net.hypotheses = std::move(rep);
  }

  std::vector<std::optional<NetMember>> members(count);
  parallel_for(count, params.workers, [&](std::size_t e) {
    const double eps = params.eps[e];
    Field u0 = with_context(eps, "initial data", [&] { return net_initial_data(data, params, eps); });
    Forcing f = with_context(eps, "forcing", [&] { return net_forcing(data, params, eps); });
    EvolutionProblem prob = member_problem(params, *sets[e], u0, f, params.dt);
    Solution sol = with_context(eps, "solve", [&] { return solve(prob, params.snapshot_stride); });
    members[e] = NetMember{eps, sets[e]->omega, std::move(*sets[e]), std::move(u0), std::move(f), std::move(sol)};
  });
  for (auto& m : members) net.members.push_back(std::move(*m));
  return net;
}

FitReport moderateness_fit(const EpsilonNet& net, double s) {
  require(net.members.size() >= kMinLadder, "moderateness: the net needs at least four members");
  std::vector<double> eps, omega, values, x, y;
  for (const auto& m : net.members) {
    const NormSeries& series = m.solution.series;
    eps.push_back(m.eps);
    omega.push_back(m.omega);
    values.push_back(series.sup_norm(series.order_index(s)));
  }
  FitReport r = fit_against("sup_t |u|_s", eps, omega, values);
  r.bound = net.params.slope_cap;
  bool all_zero = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    r.fit.degenerate = true;
    r.fit.points = values.size();
    r.pass = true;
    r.note = "every norm is zero";
    return r;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] > 0.0 && std::isfinite(values[i]), "moderateness: norms must be positive and finite");
    x.push_back(std::log(1.0 / eps[i]));
    y.push_back(std::log(values[i]));
  }
  r.fit = fit_line(x, y);
  r.pass = r.fit.slope <= net.params.slope_cap && r.fit.residual < net.params.max_residual;
  return r;
}

UniquenessReport uniqueness_probe(const CoefficientModel& model, const DataSpec& data, const NetParams& params,
                                  const UniquenessParams& up, double s) {
  validate(model);
  validate(params, model.dim);
  require(up.q >= 1, "uniqueness: q must be at least 1");
  require(std::isfinite(up.amplitude) && up.amplitude >= 0.0, "uniqueness: amplitude must be non-negative");
  require(up.width > 0.0, "uniqueness: bump width must be positive");
  const std::size_t count = params.eps.size();
  const GridSpec& g = params.grid;
  Field bump = bump_field(g, up.width, params.N);

  UniquenessReport rep;
  rep.perturbed_margin.resize(count);
  std::vector<std::optional<CoefficientSet>> base(count), pert(count);
  parallel_for(count, params.workers, [&](std::size_t e) {
    const double eps = params.eps[e];
    base[e] = with_context(eps, "regularise", [&] { return net_coefficients(model, params, eps); });
    pert[e] = perturbed(*base[e], bump, up.amplitude * std::pow(eps, up.q));
    rep.perturbed_margin[e] = signature_margin(*base[e], *pert[e]);
  });
  if (params.check_hypotheses) {
    std::vector<CoefficientSet> plain;
    for (auto& b : base) plain.push_back(*b);
    HypothesisReport h = check_hypotheses(plain, hypothesis_params(model));
    if (!h.pass()) throw HypothesisFailure("uniqueness: model '" + model.name + "' fails the hypotheses", h);
  }

  // The ladder decreases, so eps0 is set by the first member from the small end that loses ellipticity.
  std::size_t first = count;
  while (first > 0 && rep.perturbed_margin[first - 1] > 0.0) --first;
  rep.eps0 = first < count ? params.eps[first] : 0.0;

  std::vector<double> diffs(count, 0.0);
  parallel_for(count - first, params.workers, [&](std::size_t i) {
    const std::size_t e = first + i;
    const double eps = params.eps[e];
    const double shift = up.amplitude * std::pow(eps, up.q);
    Field u0 = net_initial_data(data, params, eps);
    Forcing f = net_forcing(data, params, eps);
    Field u0p = u0;
    u0p.add_scaled(shift, bump);
    Forcing fp = f;
    if (fp.shape) {
      fp.shape->add_scaled(shift, bump);
    } else if (shift != 0.0) {
      fp = Forcing::constant(shift * bump);
    }
    double dt = params.dt > 0.0 ? params.dt : std::min(stable_step(*base[e]), stable_step(*pert[e]));
    EvolutionProblem pa = member_problem(params, *base[e], u0, f, dt);
    EvolutionProblem pb = member_problem(params, *pert[e], u0p, fp, dt);
    diffs[e] = with_context(eps, "lockstep solve", [&] {
      Integrator a(pa), b(pb);
      return lockstep_sup_difference(a, b, s);
    });
  });

  std::vector<double> eps(params.eps.begin() + first, params.eps.end());
  std::vector<double> omega, values(diffs.begin() + first, diffs.end());
  for (double e : eps) omega.push_back(scale_omega(params.scale, e));
  rep.fit = fit_against("sup_t |u - u'|_s", eps, omega, values);
  rep.fit.bound = up.q - 0.5;
  rep.identical = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
  if (eps.size() < kMinLadder) {
    rep.fit.note = "fewer than four ladder members below eps0";
    rep.fit.pass = false;
    return rep;
  }
  if (rep.identical) {
    rep.fit.fit.degenerate = true;
    rep.fit.fit.points = values.size();
    rep.fit.pass = true;
    rep.fit.note = "identical families";
    return rep;
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] > 0.0 && std::isfinite(values[i]), "uniqueness: differences must be positive and finite");
    x.push_back(std::log(eps[i]));
    y.push_back(std::log(values[i]));
  }
  rep.fit.fit = fit_line(x, y);
  rep.fit.pass = rep.fit.fit.slope >= rep.fit.bound;
  if (first > 0) rep.fit.note = "members above eps0 excluded";
  return rep;
}

ConsistencyReport consistency_run(const CoefficientModel& model, const DataSpec& data, const NetParams& params,
                                  double s, double tolerance) {
  validate(model);
  validate(params, model.dim);
  require(model.smooth(), "consistency: model '" + model.name + "' has non-smooth coefficients");
  require(data.u0.smooth() && data.forcing.smooth(), "consistency: data must be smooth");
  require(data.amplitude_power == 0.0, "consistency: data must not be rescaled along the ladder");
  require(!params.mollify_data || params.data_mollifier.has_vanishing_moments(),
          "consistency: the data mollifier must have vanishing moments");
  require(tolerance > 0.0, "consistency: tolerance must be positive");
  const std::size_t count = params.eps.size();
  const GridSpec& g = params.grid;

  CoefficientSet classical = sample_coefficients(model, g);
  Field u0 = materialise(data.u0, g, mix_seed(params.seed, 0));
  Forcing f = Forcing::none();
  if (!data.forcing.is_zero()) {
    Field shape = materialise(data.forcing, g, mix_seed(params.seed, 1));
    f = data.forcing_time == Forcing::Time::constant ? Forcing::constant(shape)
                                                     : Forcing::oscillating(shape, data.forcing_frequency);
  }

  std::vector<std::optional<CoefficientSet>> sets(count);
  parallel_for(count, params.workers, [&](std::size_t e) {
    sets[e] = with_context(params.eps[e], "regularise", [&] { return net_coefficients(model, params, params.eps[e]); });
  });
  // One step size for every trajectory so the classical solution is shared in time.
  double dt = params.dt;
  if (dt == 0.0) {
    dt = stable_step(classical);
    for (auto& cs : sets) dt = std::min(dt, stable_step(*cs));
  }

  std::vector<double> errors(count), omega(count);
  parallel_for(count, params.workers, [&](std::size_t e) {
    const double eps = params.eps[e];
    omega[e] = sets[e]->omega;
    EvolutionProblem exact = member_problem(params, classical, u0, f, dt);
    EvolutionProblem reg =
        member_problem(params, *sets[e], net_initial_data(data, params, eps), net_forcing(data, params, eps), dt);
    errors[e] = with_context(eps, "lockstep solve", [&] {
      Integrator a(exact), b(reg);
      return lockstep_sup_difference(a, b, s);
    });
  });

  ConsistencyReport rep;
  rep.tolerance = tolerance;
  rep.fit = fit_against("sup_t |u - u_eps|_s", params.eps, omega, errors);
  rep.decreasing = true;
  for (std::size_t i = 1; i < count; ++i)
    if (!(errors[i] < errors[i - 1])) rep.decreasing = false;
  rep.final_error = errors.back();
  bool positive = std::all_of(errors.begin(), errors.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
  if (positive) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < count; ++i) {
      x.push_back(std::log(params.eps[i]));
      y.push_back(std::log(errors[i]));
    }
    rep.fit.fit = fit_line(x, y);
  } else {
    rep.fit.note = "some errors are exactly zero; slope not fitted";
  }
  rep.fit.bound = tolerance;
  rep.fit.pass = rep.decreasing && rep.final_error < tolerance;
  return rep;
}

EpsilonNet hs_mode(const CoefficientModel& model, const DataSpec& data, NetParams params) {
  params.mollify_data = false;
  return run_net(model, data, params);
}

}  // namespace vws
