#include "vws/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vws/doi.hpp"
#include "vws/error.hpp"
#include "vws/io.hpp"
#include "vws/smoothing.hpp"
#include "vws/vwsnet.hpp"

namespace vws {
namespace {

using Clock = std::chrono::steady_clock;

json fit_json(const LineFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"points", f.points},
          {"degenerate", f.degenerate}};
}

json fit_report_json(const FitReport& r) {
  return {{"quantity", r.quantity}, {"eps", r.eps},   {"omega", r.omega}, {"values", r.values},
          {"fit", fit_json(r.fit)}, {"bound", r.bound}, {"pass", r.pass},   {"note", r.note}};
}

json growth_json(const std::vector<GrowthFit>& fits) {
  json out = json::array();
  for (const auto& g : fits)
    out.push_back({{"order", g.order}, {"sups", g.sups}, {"fit", fit_json(g.fit)}, {"exponent", g.exponent}});
  return out;
}

json hypotheses_json(const HypothesisReport& r) {
  return {
      {"eps", r.eps},
      {"omega", r.omega},
      {"symmetric_real", {{"pass", r.symmetric_real}}},
      {"ellipticity",
       {{"ratio_min", r.ratio_min},
        {"ratio_max", r.ratio_max},
        {"mu_per_eps", r.mu_per_eps},
        {"mu", r.mu},
        {"variation", r.mu_variation},
        {"pass", r.ellipticity_pass}}},
      {"principal_slope",
       {{"weighted_sup", r.principal_slope_sup},
        {"constant", r.principal_slope_constant},
        {"variation", r.principal_slope_variation},
        {"pass", r.principal_slope_pass}}},
      {"drift_imag",
       {{"weighted_sup", r.drift_imag_sup},
        {"constant", r.drift_imag_constant},
        {"variation", r.drift_imag_variation},
        {"pass", r.drift_imag_pass}}},
      {"drift_growth", {{"fits", growth_json(r.drift_growth)}, {"exponent", r.drift_exponent},
                        {"pass", r.drift_growth_pass}}},
      {"potential_growth", {{"fits", growth_json(r.potential_growth)}, {"exponent", r.potential_exponent},
                            {"pass", r.potential_growth_pass}}},
      {"support", {{"radius", r.support_radius}, {"within_half_domain", r.support_within_half_domain}}},
  };
}

json smoothing_json(const SmoothingReport& r) {
  json members = json::array();
  for (const auto& m : r.members)
    members.push_back({{"eps", m.eps},
                       {"omega", m.omega},
                       {"sup_norm_sq", m.sup_norm_sq},
                       {"gain_integral", m.gain_integral},
                       {"lhs", m.lhs},
                       {"rhs_base", m.rhs_base},
                       {"ratio", m.ratio},
                       {"initial_half_gain_sq", m.initial_half_gain_sq}});
  return {{"members", members},         {"T", r.T},
          {"C1", r.C1},                 {"C2", r.C2},
          {"k1", r.k1},                 {"fit", fit_json(r.fit)},
          {"fitted_points", r.fitted_points}, {"constants_positive", r.constants_positive},
          {"bound_holds", r.bound_holds}, {"max_residual", r.max_residual},
          {"pass", r.pass()}};
}

json probe_json(const ProbeReport& p, double floor, double tolerance) {
  bool pass = p.fit.slope >= floor - tolerance;
  return {{"eps", p.eps},         {"omega", p.omega}, {"values", p.values},
          {"fit", fit_json(p.fit)}, {"bound", p.bound}, {"bound_lipschitz", p.bound_lipschitz},
          {"tolerance", tolerance}, {"pass", pass}};
}

class Context {
 public:
  Context(const ExperimentConfig& cfg, const RunOptions& opt, RunResult& result)
      : cfg(cfg), opt(opt), result(result), model(config_model(cfg)), params(net_params(cfg)) {}

  const ExperimentConfig& cfg;
  const RunOptions& opt;
  RunResult& result;
  CoefficientModel model;
  NetParams params;
  json timings = json::object();

  void log(const std::string& line) const {
    if (opt.log) *opt.log << line << '\n' << std::flush;
  }

  void write(const std::string& name, const std::string& text) {
    if (!opt.write_files) return;
    std::filesystem::path p = opt.out_dir / name;
    write_text(p, text);
    result.files.push_back(p);
  }

  template <class F>
  auto timed(const std::string& stage, F&& f) {
    log("stage: " + stage);
    auto t0 = Clock::now();
    auto out = f();
    timings[stage] = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

  std::vector<CoefficientSet> ladder_sets() {
    std::vector<CoefficientSet> sets;
    for (double e : cfg.eps) sets.push_back(net_coefficients(model, params, e));
    return sets;
  }

  HypothesisReport hypotheses(const std::vector<CoefficientSet>& sets) const {
    HypothesisParams hp = hypothesis_params(model);
    hp.envelope_variation = cfg.tolerances.variation;
    return check_hypotheses(sets, hp);
  }

  void write_series(double eps, const Solution& sol) {
    write("norms-eps-" + eps_label(eps) + ".csv", norm_series_csv(sol.series));
    for (std::size_t k = 0; k < sol.snapshots.size(); ++k)
      write("snapshot-eps-" + eps_label(eps) + "-" + std::to_string(k) + ".json",
            snapshot_json(sol.snapshots[k]).dump() + "\n");
  }
};

// Runs a pipeline stage, prefixing any module error with the stage name.
template <class F>
auto staged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const HypothesisFailure&) {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError("stage " + stage + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError("stage " + stage + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError("stage " + stage + ": " + e.what());
  } catch (const Error& e) {
    throw Error("stage " + stage + ": " + e.what());
  }
}

// Ellipticity band of a constant diagonal principal part perturbed by a small bounded term.
json principal_band(const Context& c, const HypothesisReport& r) {
  double c1 = std::abs(c.model.principal[0][0]);
  double c2 = c.model.dim == 2 ? std::abs(c.model.principal[1][1]) : c1;
  double lo = 0.5 * std::min(c1, c2);
  double hi = 1.5 * std::max(c1, c2);
  bool inside = true;
  for (double v : r.ratio_min) inside = inside && v >= lo;
  for (double v : r.ratio_max) inside = inside && v <= hi;
  inside = inside && r.mu >= lo && r.mu <= hi;
  return {{"lower", lo}, {"upper", hi}, {"mu", r.mu}, {"pass", inside}};
}

json run_validate(Context& c) {
  auto sets = c.timed("regularise", [&] { return staged("regularise", [&] { return c.ladder_sets(); }); });
  auto rep = c.timed("hypotheses", [&] { return staged("hypotheses", [&] { return c.hypotheses(sets); }); });
  json out = {{"hypotheses", hypotheses_json(rep)}};
  if (c.cfg.preset == "ultra-diagonal") out["principal_band"] = principal_band(c, rep);
  return out;
}

json run_doi(Context& c) {
  auto sets = c.timed("regularise", [&] { return staged("regularise", [&] { return c.ladder_sets(); }); });
  auto hyp = c.timed("hypotheses", [&] { return staged("hypotheses", [&] { return c.hypotheses(sets); }); });
  DoiCheckParams cp;
  cp.C1 = c.cfg.doi.C1;
  cp.delta = c.cfg.doi.delta;
  cp.N = c.params.N;
  cp.mu = hyp.mu;
  cp.xi = c.cfg.doi.xi_spacing == 0.0 ? XiGrid::dual(c.cfg.grid)
                                      : XiGrid::uniform(c.cfg.grid.dim, c.cfg.doi.xi_count, c.cfg.doi.xi_spacing);
  cp.variation = c.cfg.tolerances.variation;
  cp.workers = c.cfg.workers;
  auto rep = c.timed("doi", [&] { return staged("doi", [&] { return check_doi_ladder(sets, cp); }); });

  json members = json::array();
  for (const auto& m : rep.members)
    members.push_back({{"eps", m.eps},
                       {"omega", m.omega},
                       {"q_growth", m.q_growth},
                       {"escape_constant", m.escape_constant},
                       {"doi_constant", m.doi_constant},
                       {"first_x_derivative", m.first_x_derivative},
                       {"second_x_derivative", m.second_x_derivative}});
  const auto& f = rep.f_checks;
  return {{"params",
           {{"C1", rep.params.C1}, {"mu", rep.params.mu}, {"delta", rep.params.delta}, {"K", rep.params.K},
            {"N", rep.params.N}}},
          {"xi", {{"count", cp.xi.count}, {"spacing", cp.xi.spacing}}},
          {"members", members},
          {"escape", {{"constant", rep.escape_constant}, {"variation", rep.escape_variation},
                      {"pass", rep.escape_pass}}},
          {"doi", {{"constant", rep.doi_constant}, {"variation", rep.doi_variation}, {"pass", rep.doi_pass}}},
          {"symbol_class",
           {{"first_derivative_fit", fit_json(rep.first_derivative_fit)},
            {"second_derivative_fit", fit_json(rep.second_derivative_fit)},
            {"pass", rep.symbol_class_pass}}},
          {"f",
           {{"at_zero", f.at_zero}, {"nondecreasing", f.nondecreasing},
            {"worst_slope_excess", f.worst_slope_excess}, {"supremum", f.supremum},
            {"supremum_bound", f.supremum_bound}, {"pass", f.pass}}},
          {"caveat", rep.caveat}};
}

json run_solve(Context& c) {
  json members = json::array();
  for (double e : c.cfg.eps) {
    std::string stage = "solve eps = " + format_number(e);
    Solution sol = c.timed(stage, [&] {
      return staged(stage, [&] {
        EvolutionProblem prob(net_coefficients(c.model, c.params, e), net_initial_data(c.cfg.data, c.params, e));
        prob.forcing = net_forcing(c.cfg.data, c.params, e);
        prob.T = c.cfg.T;
        prob.dt = c.cfg.dt;
        prob.orders = c.cfg.orders;
        prob.N = c.params.N;
        return solve(prob, c.cfg.stride);
      });
    });
    c.write_series(e, sol);
    json norms = json::array();
    bool finite = true;
    for (std::size_t i = 0; i < sol.series.orders.size(); ++i) {
      const auto& v = sol.series.norm[i];
      double lo = *std::min_element(v.begin(), v.end());
      double hi = *std::max_element(v.begin(), v.end());
      for (double x : v) finite = finite && std::isfinite(x);
      norms.push_back({{"s", sol.series.orders[i]},
                       {"initial", v.front()},
                       {"final", v.back()},
                       {"sup", hi},
                       {"relative_spread", hi > 0.0 ? (hi - lo) / hi : 0.0},
                       {"smooth_integral", sol.series.integral[i].back()}});
    }
    members.push_back({{"eps", e},
                       {"omega", scale_omega(c.cfg.scale, e)},
                       {"dt", sol.dt},
                       {"steps", sol.steps},
                       {"norms", norms},
                       {"finite", {{"pass", finite}}}});
  }
  return {{"members", members}};
}

std::vector<SmoothingTerms> smoothing_members(const Context& c, const EpsilonNet& net, double s) {
  std::vector<SmoothingTerms> out;
  for (const auto& m : net.members) {
    SmoothingTerms t = smoothing_terms(m.solution.series, s, m.u0, m.forcing, c.cfg.T, c.params.N);
    t.eps = m.eps;
    t.omega = m.omega;
    out.push_back(t);
  }
  return out;
}

json run_net_kind(Context& c) {
  EpsilonNet net;
  try {
    net = c.timed("net", [&] { return run_net(c.model, c.cfg.data, c.params); });
  } catch (const HypothesisFailure& e) {
    c.log(std::string("hypotheses failed: ") + e.what());
    return {{"hypotheses", hypotheses_json(e.report)}, {"aborted", e.what()}};
  }
  json out;
  if (net.hypotheses) out["hypotheses"] = hypotheses_json(*net.hypotheses);
  json members = json::array();
  for (const auto& m : net.members) {
    c.write_series(m.eps, m.solution);
    members.push_back({{"eps", m.eps}, {"omega", m.omega}, {"dt", m.solution.dt}, {"steps", m.solution.steps}});
  }
  out["members"] = members;
  json orders = json::array();
  for (double s : c.cfg.orders) {
    std::string stage = "fits s = " + format_number(s);
    auto fit = staged(stage, [&] { return moderateness_fit(net, s); });
    auto sm = staged(stage, [&] {
      auto terms = smoothing_members(c, net, s);
      return smoothing_report(terms, c.cfg.T, c.cfg.tolerances.residual);
    });
    orders.push_back({{"s", s}, {"moderateness", fit_report_json(fit)}, {"smoothing", smoothing_json(sm)}});
  }
  out["orders"] = orders;
  return out;
}

json run_uniqueness(Context& c) {
  UniquenessParams up;
  up.q = c.cfg.q;
  up.amplitude = c.cfg.perturbation_amplitude;
  up.width = c.cfg.perturbation_width;
  double s = c.cfg.orders.front();
  auto rep = c.timed("uniqueness",
                     [&] { return staged("uniqueness", [&] { return uniqueness_probe(c.model, c.cfg.data, c.params, up, s); }); });
  return {{"q", up.q},
          {"s", s},
          {"eps0", rep.eps0},
          {"perturbed_margin", rep.perturbed_margin},
          {"identical", rep.identical},
          {"difference", fit_report_json(rep.fit)}};
}

json run_consistency(Context& c) {
  double s = c.cfg.orders.front();
  auto rep = c.timed("consistency", [&] {
    return staged("consistency",
                  [&] { return consistency_run(c.model, c.cfg.data, c.params, s, c.cfg.tolerances.consistency); });
  });
  return {{"s", s},
          {"decreasing", rep.decreasing},
          {"final_error", rep.final_error},
          {"tolerance", rep.tolerance},
          {"difference", fit_report_json(rep.fit)}};
}

json run_bench(Context& c) {
  Field u = staged("data", [&] { return materialise(c.cfg.data.u0, c.cfg.grid, c.cfg.seed); });
  double tol = c.cfg.tolerances.probe;
  auto deriv = c.timed("derivative probe", [&] {
    return staged("derivative probe", [&] {
      return derivative_bound_probe(u, c.cfg.bench.beta, c.cfg.scale, c.cfg.eps, c.cfg.data_mollifier);
    });
  });
  c.write("probe-derivative.csv", probe_csv(deriv));
  json out = {{"derivative", probe_json(deriv, deriv.bound, tol)}};
  out["derivative"]["beta"] = {c.cfg.bench.beta[0], c.cfg.bench.beta[1]};
  json boosts = json::array();
  for (int ell : c.cfg.bench.ell) {
    std::string stage = "sobolev probe ell = " + std::to_string(ell);
    auto p = c.timed(stage, [&] {
      return staged(stage, [&] {
        return sobolev_boost_probe(u, c.cfg.bench.s, ell, c.cfg.scale, c.cfg.eps, c.cfg.data_mollifier);
      });
    });
    c.write("probe-sobolev-ell-" + std::to_string(ell) + ".csv", probe_csv(p));
    json j = probe_json(p, p.bound, tol);
    j["ell"] = ell;
    j["s"] = c.cfg.bench.s;
    boosts.push_back(j);
  }
  out["sobolev_boost"] = boosts;
  return out;
}

bool collect_pass(const json& node, bool& seen) {
  bool ok = true;
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it.key() == "pass" && it->is_boolean()) {
        seen = true;
        ok = ok && it->get<bool>();
      } else {
        ok = collect_pass(*it, seen) && ok;
      }
    }
  } else if (node.is_array()) {
    for (const auto& e : node) ok = collect_pass(e, seen) && ok;
  }
  return ok;
}

}  // namespace

bool all_pass(const json& doc) {
  bool seen = false;
  bool ok = collect_pass(doc, seen);
  return ok && seen;
}

RunResult run(const ExperimentConfig& cfg, const RunOptions& options) {
  RunResult result;
  auto t0 = Clock::now();
  Context c(cfg, options, result);
  json body;
  switch (cfg.kind) {
    case ExperimentKind::validate_hypotheses: body = run_validate(c); break;
    case ExperimentKind::doi_check: body = run_doi(c); break;
    case ExperimentKind::solve: body = run_solve(c); break;
    case ExperimentKind::net: body = run_net_kind(c); break;
    case ExperimentKind::uniqueness: body = run_uniqueness(c); break;
    case ExperimentKind::consistency: body = run_consistency(c); break;
    case ExperimentKind::mollifier_bench: body = run_bench(c); break;
  }
  // A report without verdicts (an aborted net) fails.
  bool pass = all_pass(body) && !body.contains("aborted");

  json report;
  report["software"] = {{"name", kSoftwareName}, {"version", kSoftwareVersion}};
  report["experiment"] = to_string(cfg.kind);
  report["config"] = to_json(cfg);
  report["result"] = std::move(body);
  report["pass"] = pass;
  c.timings["total"] = std::chrono::duration<double>(Clock::now() - t0).count();
  report["timings"] = c.timings;
  if (options.write_files) {
    std::filesystem::path p = options.out_dir / "report.json";
    write_json(p, report);
    result.files.insert(result.files.begin(), p);
  }
  result.pass = pass;
  result.report = std::move(report);
  return result;
}

}  // namespace vws
