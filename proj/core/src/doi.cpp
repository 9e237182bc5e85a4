#include "vws/doi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vws/error.hpp"
#include "vws/jet.hpp"
#include "vws/parallel.hpp"
#include "vws/profile.hpp"
#include "vws/smooth_step.hpp"

namespace vws {

namespace {

double weight_derivative(double s, int N) {
  if (s < 0.0) return 0.0;
  return -N * s * std::pow(1.0 + s * s, -0.5 * N - 1.0);
}

// smooth_step(u / scale) as a jet.
template <int V>
Jet<V> step_jet(const Jet<V>& u, double scale) {
  double t = u.v / scale;
  return chain(u, smooth_step(t), smooth_step_derivative(t) / scale,
               smooth_step_second_derivative(t) / (scale * scale));
}

template <int V>
Jet<V> doi_symbol(const Jet<V>& q, const Jet<V>& xb, double delta, const DoiFunction& f) {
  Jet<V> r = q / xb;
  Jet<V> up = step_jet(r, delta);
  Jet<V> down = step_jet(-r, delta);
  Jet<V> mid = Jet<V>(1.0) - up - down;
  Jet<V> aq = abs(q);
  Jet<V> fq = chain(aq, f(aq.v), f.derivative(aq.v), f.second_derivative(aq.v));
  return r * mid + (fq + Jet<V>(2.0 * delta)) * (up - down);
}

}  // namespace

double doi_weight(double t, int N) {
  if (t < 0.0) return 1.0;
  return std::pow(1.0 + t * t, -0.5 * N);
}

DoiFunction::DoiFunction(double K, int N, double t_max) : K_(K), N_(N), step_(K / 100.0) {
  require(std::isfinite(K) && K > 0.0, "f: K must be positive");
  require(N > 1, "f: N must exceed 1");
  require(std::isfinite(t_max) && t_max > 0.0, "f: table range must be positive");
  auto cells = std::size_t(std::ceil(t_max / step_)) + 1;
  table_.assign(cells + 1, 0.0);
  double prev = doi_weight(-10.0, N);
  for (std::size_t i = 1; i < table_.size(); ++i) {
    double next = doi_weight(double(i) * step_ / K - 10.0, N);
    table_[i] = table_[i - 1] + 0.5 * step_ * (prev + next);
    prev = next;
  }
}

double DoiFunction::operator()(double t) const {
  require(t >= 0.0, "f: argument must be non-negative");
  double pos = t / step_;
  auto i = std::size_t(pos);
  if (i + 1 >= table_.size()) {
    if (i + 1 == table_.size() && pos == double(i)) return table_.back();
    throw DomainError("f: argument beyond the tabulated range");
  }
  double w = pos - double(i);
  return (1.0 - w) * table_[i] + w * table_[i + 1];
}

double DoiFunction::derivative(double t) const { return doi_weight(t / K_ - 10.0, N_); }

double DoiFunction::second_derivative(double t) const { return weight_derivative(t / K_ - 10.0, N_) / K_; }

double DoiFunction::supremum_bound() const {
  double tail = 0.5 * std::sqrt(M_PI) * std::tgamma(0.5 * (N_ - 1)) / std::tgamma(0.5 * N_);
  return 10.0 * K_ + K_ * tail;
}

DoiFunction build_f(double K, int N, double t_max) {
  return DoiFunction(K, N, t_max > 0.0 ? t_max : 200.0 * K);
}

void validate(const DoiParams& p) {
  require(std::isfinite(p.C1) && p.C1 > 0.0, "doi: C1 must be positive");
  require(std::isfinite(p.mu) && p.mu > 0.0, "doi: mu must be positive");
  require(std::isfinite(p.delta) && p.delta > 0.0 && p.delta <= 0.25, "doi: delta must lie in (0, 1/4]");
  require(std::isfinite(p.K) && p.K > 0.0, "doi: K must be positive");
  require(p.N > 1, "doi: N must exceed 1");
}

SymbolJet build_q(const CoefficientSet& cs, double C1, double mu, const XiGrid& xi) {
  require(cs.grid.dim == xi.dim, "q: coefficient grid and xi lattice differ in dimension");
  require(C1 > 0.0 && mu > 0.0, "q: C1 and mu must be positive");
  const int n = cs.dim();
  const double c = C1 * mu * mu;
  SymbolJet q{SymbolGrid(cs.grid, xi, false), {}, {}};
  for (int k = 0; k < n; ++k) {
    q.dx.emplace_back(cs.grid, xi, false);
    q.dxi.emplace_back(cs.grid, xi, false);
  }
  for (std::size_t x = 0; x < cs.grid.size(); ++x) {
    Point px = cs.grid.node(x);
    for (std::size_t k = 0; k < xi.size(); ++k) {
      Point z = xi.point(k);
      double zb = japanese(z);
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += 2.0 * px[j] * cs.a[i][j][x] * z[i];
      q.value.at(x, k) = c * s / zb;
      for (int m = 0; m < n; ++m) {
        double dx = 0.0, dz = 0.0;
        for (int i = 0; i < n; ++i) {
          dx += 2.0 * cs.a[i][m][x] * z[i];
          dz += 2.0 * px[i] * cs.a[m][i][x];
          for (int j = 0; j < n; ++j) dx += 2.0 * px[j] * cs.da[m][i][j][x] * z[i];
        }
        q.dx[m].at(x, k) = c * dx / zb;
        q.dxi[m].at(x, k) = c * (dz / zb - s * z[m] / (zb * zb * zb));
      }
    }
  }
  return q;
}

SymbolJet build_d(const SymbolJet& q, const DoiParams& p, const DoiFunction& f) {
  validate(p);
  const GridSpec& g = q.value.space;
  const XiGrid& xi = q.value.xi;
  const int n = g.dim;
  require(int(q.dx.size()) == n && int(q.dxi.size()) == n, "d: q is missing derivatives");
  SymbolJet d{SymbolGrid(g, xi, false), {}, {}};
  for (int k = 0; k < n; ++k) {
    d.dx.emplace_back(g, xi, false);
    d.dxi.emplace_back(g, xi, false);
  }
  // Jet variables: q, x_0, x_1.
  using J = Jet<3>;
  for (std::size_t x = 0; x < g.size(); ++x) {
    Point px = g.node(x);
    J x0 = J::variable(px[0], 1);
    J x1 = n == 2 ? J::variable(px[1], 2) : J(0.0);
    J xb = sqrt(J(1.0) + x0 * x0 + x1 * x1);
    for (std::size_t k = 0; k < xi.size(); ++k) {
      double qv = q.value.at(x, k).real();
      if (std::abs(qv) > p.K * xb.v * (1.0 + 1e-12))
        throw DomainError("d: |q| exceeds K <x>; K is mis-calibrated");
      J r = doi_symbol(J::variable(qv, 0), xb, p.delta, f);
      d.value.at(x, k) = r.v;
      for (int m = 0; m < n; ++m) {
        d.dx[m].at(x, k) = r.g[0] * q.dx[m].at(x, k).real() + r.g[1 + m];
        d.dxi[m].at(x, k) = r.g[0] * q.dxi[m].at(x, k).real();
      }
    }
  }
  return d;
}

DoiMargin check_doi(const SymbolJet& d, const SymbolJet& a2, int N) {
  require(N > 1, "doi: N must exceed 1");
  SymbolGrid h = poisson_bracket(a2, d);
  const GridSpec& g = h.space;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < g.size(); ++x) {
    double w = std::pow(japanese(g.node(x)), -double(N));
    for (std::size_t k = 0; k < h.xi.size(); ++k)
      worst = std::max(worst, w * norm(h.xi.point(k)) - h.at(x, k).real());
  }
  return {worst, -worst};
}

FunctionChecks check_f(const DoiFunction& f) {
  FunctionChecks c;
  const auto& t = f.table();
  c.at_zero = t.front();
  c.nondecreasing = std::is_sorted(t.begin(), t.end());
  c.worst_slope_excess = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double slope = (t[i + 1] - t[i]) / f.step();
    double lower = doi_weight(double(i + 1) * f.step() / f.K() - 10.0, f.N());
    c.worst_slope_excess = std::min(c.worst_slope_excess, slope - lower);
  }
  c.supremum = t.back();
  c.supremum_bound = f.supremum_bound();
  c.pass = c.at_zero == 0.0 && c.nondecreasing && c.worst_slope_excess >= -1e-12 && c.supremum <= c.supremum_bound;
  return c;
}

namespace {

struct SecondDerivatives {
  // d2[k][l][i][j] = d_k d_l a_ij
  std::array<std::array<std::array<std::array<std::vector<double>, 2>, 2>, 2>, 2> d2;
};

SecondDerivatives second_derivatives(const CoefficientSet& cs) {
  SecondDerivatives s;
  const int n = cs.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Field a = to_field(cs.grid, cs.a[i][j]);
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          std::array<int, 2> order{0, 0};
          order[k] += 1;
          order[l] += 1;
          auto v = real_part(partial_derivative(a, order));
          s.d2[k][l][i][j] = v;
          s.d2[l][k][i][j] = v;
          s.d2[k][l][j][i] = v;
          s.d2[l][k][j][i] = v;
        }
    }
  return s;
}

double q_growth(const CoefficientSet& cs, double c, const XiGrid& xi) {
  const int n = cs.dim();
  double best = 0.0;
  for (std::size_t x = 0; x < cs.grid.size(); ++x) {
    Point px = cs.grid.node(x);
    double xb = japanese(px);
    for (std::size_t k = 0; k < xi.size(); ++k) {
      Point z = xi.point(k);
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += 2.0 * px[j] * cs.a[i][j][x] * z[i];
      best = std::max(best, std::abs(c * s / japanese(z)) / xb);
    }
  }
  return best;
}

template <int n>
void scan_member(const CoefficientSet& cs, const DoiParams& p, const XiGrid& xi, const DoiFunction& f,
                 DoiMemberReport& out) {
  constexpr int V = 2 * n;
  using J = Jet<V>;
  const double c = p.C1 * p.mu * p.mu;
  SecondDerivatives sd = second_derivatives(cs);
  out.escape_constant = -std::numeric_limits<double>::infinity();
  out.doi_constant = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < cs.grid.size(); ++x) {
    Point px = cs.grid.node(x);
    std::array<J, n> X;
    J xsq(1.0);
    for (int k = 0; k < n; ++k) {
      X[k] = J::variable(px[k], k);
      xsq = xsq + X[k] * X[k];
    }
    J xb = sqrt(xsq);
    double weight = std::pow(xb.v, -double(p.N));
    std::array<std::array<J, n>, n> A;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        J a(cs.a[i][j][x]);
        for (int k = 0; k < n; ++k) {
          a.g[k] = cs.da[k][i][j][x];
          for (int l = 0; l < n; ++l) a.h[k * V + l] = sd.d2[k][l][i][j][x];
        }
        A[i][j] = a;
      }
    for (std::size_t m = 0; m < xi.size(); ++m) {
      Point pz = xi.point(m);
      std::array<J, n> Z;
      J zsq(1.0);
      for (int k = 0; k < n; ++k) {
        Z[k] = J::variable(pz[k], n + k);
        zsq = zsq + Z[k] * Z[k];
      }
      J a2(0.0), s(0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          J az = A[i][j] * Z[i];
          a2 = a2 + az * Z[j];
          s = s + 2.0 * (az * X[j]);
        }
      J q = c * (s / sqrt(zsq));
      J d = doi_symbol(q, xb, p.delta, f);
      double hq = 0.0, hd = 0.0;
      for (int k = 0; k < n; ++k) {
        hq += a2.g[n + k] * q.g[k] - a2.g[k] * q.g[n + k];
        hd += a2.g[n + k] * d.g[k] - a2.g[k] * d.g[n + k];
      }
      double zn = norm(pz);
      out.escape_constant = std::max(out.escape_constant, p.C1 * zn - hq);
      out.doi_constant = std::max(out.doi_constant, weight * zn - hd);
      for (int k = 0; k < n; ++k) {
        out.first_x_derivative = std::max(out.first_x_derivative, std::abs(d.g[k]));
        for (int l = 0; l < n; ++l)
          out.second_x_derivative = std::max(out.second_x_derivative, std::abs(d.hess(k, l)));
      }
    }
  }
}

}  // namespace

DoiLadderReport check_doi_ladder(std::span<const CoefficientSet> sets, const DoiCheckParams& cp) {
  require(sets.size() >= 2, "doi: the ladder needs at least two members");
  const int n = sets.front().dim();
  require(cp.xi.dim == n, "doi: xi lattice dimension differs from the grid");
  for (const auto& cs : sets) require(cs.grid == sets.front().grid, "doi: ladder members live on different grids");

  DoiLadderReport rep;
  rep.params.C1 = cp.C1;
  rep.params.mu = cp.mu;
  rep.params.delta = cp.delta;
  rep.params.N = cp.N;
  const double c = cp.C1 * cp.mu * cp.mu;

  double growth = 0.0, sup_q = 0.0;
  rep.members.resize(sets.size());
  for (std::size_t e = 0; e < sets.size(); ++e) {
    rep.members[e].eps = sets[e].eps;
    rep.members[e].omega = sets[e].omega;
    rep.members[e].q_growth = q_growth(sets[e], c, cp.xi);
    growth = std::max(growth, rep.members[e].q_growth);
  }
  for (const auto& cs : sets) {
    double lmax = 0.0;
    for (std::size_t x = 0; x < cs.grid.size(); ++x) lmax = std::max(lmax, japanese(cs.grid.node(x)));
    sup_q = std::max(sup_q, growth * lmax);
  }
  rep.params.K = growth > 0.0 ? 1.1 * growth : 1.0;
  validate(rep.params);
  DoiFunction f = build_f(rep.params.K, cp.N, std::max(1.05 * sup_q, 200.0 * rep.params.K));
  rep.f_checks = check_f(f);

  parallel_for(sets.size(), cp.workers, [&](std::size_t e) {
    if (n == 1)
      scan_member<1>(sets[e], rep.params, cp.xi, f, rep.members[e]);
    else
      scan_member<2>(sets[e], rep.params, cp.xi, f, rep.members[e]);
  });
  std::vector<double> esc, doi, om, d1, d2;
  for (const auto& m : rep.members) {
    esc.push_back(m.escape_constant);
    doi.push_back(m.doi_constant);
    om.push_back(std::log(m.omega));
    d1.push_back(std::log(std::max(m.first_x_derivative, 1e-300)));
    d2.push_back(std::log(std::max(m.second_x_derivative, 1e-300)));
  }
  rep.escape_constant = *std::max_element(esc.begin(), esc.end());
  rep.doi_constant = *std::max_element(doi.begin(), doi.end());
  rep.escape_variation = relative_spread(esc, cp.constant_floor);
  rep.doi_variation = relative_spread(doi, cp.constant_floor);
  rep.escape_pass = std::isfinite(rep.escape_constant) && rep.escape_variation <= cp.variation;
  rep.doi_pass = std::isfinite(rep.doi_constant) && rep.doi_variation <= cp.variation;

  bool distinct = om.front() != om.back();
  if (distinct) {
    rep.first_derivative_fit = fit_line(om, d1);
    rep.second_derivative_fit = fit_line(om, d2);
    rep.symbol_class_pass = rep.first_derivative_fit.slope >= -cp.bounded_slope_tolerance &&
                            rep.second_derivative_fit.slope >= -1.0 - cp.second_slope_tolerance;
  } else {
    rep.symbol_class_pass = true;
  }
  rep.caveat = "inequalities verified on the sampled (x, xi) box only";
  if (!distinct) rep.caveat += "; constant scale, symbol-class slopes not fitted";
  return rep;
}

}  // namespace vws
