#include "vws/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "vws/error.hpp"

namespace vws {

XiGrid XiGrid::dual(const GridSpec& g) { return {g.dim, g.points, std::numbers::pi / g.half_length}; }

XiGrid XiGrid::uniform(int dim, int count, double spacing) {
  require(dim == 1 || dim == 2, "xi lattice dimension must be 1 or 2");
  require(count >= 5, "xi lattice needs at least 5 points per axis for its stencils");
  require(spacing > 0.0, "xi lattice spacing must be positive");
  return {dim, count, spacing};
}

Point XiGrid::point(std::size_t flat) const {
  if (dim == 1) return {value(int(flat)), 0.0};
  return {value(int(flat / count)), value(int(flat % count))};
}

bool XiGrid::is_dual_of(const GridSpec& g) const {
  return dim == g.dim && count == g.points && std::abs(spacing - std::numbers::pi / g.half_length) <= 1e-15 * spacing;
}

SymbolGrid::SymbolGrid(const GridSpec& space_, const XiGrid& xi_, bool periodic)
    : space(space_), xi(xi_), x_periodic(periodic), values(space_.size() * xi_.size()) {
  require(space.dim == xi.dim, "space and frequency lattices differ in dimension");
}

double SymbolGrid::max_abs() const {
  double m = 0.0;
  for (cplx v : values) m = std::max(m, std::abs(v));
  return m;
}

void require_same_lattice(const SymbolGrid& a, const SymbolGrid& b) {
  if (!(a.space == b.space) || !(a.xi == b.xi)) fail_domain("symbol grids live on different lattices");
}

namespace {

// 4th-order first derivative along lines of `len` points separated by `stride`.
std::vector<cplx> fd4(const std::vector<cplx>& f, std::size_t len, std::size_t stride, double step) {
  std::vector<cplx> out(f.size());
  const double inv = 1.0 / (12.0 * step);
  for (std::size_t node = 0; node < f.size(); ++node) {
    std::size_t p = (node / stride) % len;
    std::size_t base = node - p * stride;
    auto at = [&](std::size_t q) { return f[base + q * stride]; };
    cplx d;
    if (p >= 2 && p + 2 < len) {
      d = at(p - 2) - 8.0 * at(p - 1) + 8.0 * at(p + 1) - at(p + 2);
    } else if (p == 0) {
      d = -25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4);
    } else if (p == 1) {
      d = -3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4);
    } else if (p == len - 1) {
      d = 25.0 * at(p) - 48.0 * at(p - 1) + 36.0 * at(p - 2) - 16.0 * at(p - 3) + 3.0 * at(p - 4);
    } else {
      d = 3.0 * at(p + 1) + 10.0 * at(p) - 18.0 * at(p - 1) + 6.0 * at(p - 2) - at(p - 3);
    }
    out[node] = d * inv;
  }
  return out;
}

}  // namespace

SymbolGrid derivative_x(const SymbolGrid& a, int axis) {
  require(axis >= 0 && axis < a.space.dim, "x-derivative axis out of range");
  const std::size_t nx = a.space.size(), nk = a.xi.size();
  SymbolGrid out(a.space, a.xi, a.x_periodic);
  if (!a.x_periodic) {
    std::size_t stride = (a.space.dim == 2 && axis == 0 ? std::size_t(a.space.points) : 1) * nk;
    out.values = fd4(a.values, a.space.points, stride, a.space.step());
    return out;
  }
  std::array<int, 2> order{0, 0};
  order[axis] = 1;
  Field column(a.space);
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t x = 0; x < nx; ++x) column[x] = a.at(x, k);
    Field d = partial_derivative(column, order);
    for (std::size_t x = 0; x < nx; ++x) out.at(x, k) = d[x];
  }
  return out;
}

SymbolGrid derivative_xi(const SymbolGrid& a, int axis) {
  require(axis >= 0 && axis < a.xi.dim, "xi-derivative axis out of range");
  SymbolGrid out(a.space, a.xi, a.x_periodic);
  std::size_t stride = a.xi.dim == 2 && axis == 0 ? std::size_t(a.xi.count) : 1;
  out.values = fd4(a.values, a.xi.count, stride, a.xi.spacing);
  return out;
}

SymbolJet differentiate(const SymbolGrid& a) {
  SymbolJet j{a, {}, {}};
  for (int k = 0; k < a.space.dim; ++k) {
    j.dx.push_back(derivative_x(a, k));
    j.dxi.push_back(derivative_xi(a, k));
  }
  return j;
}

SymbolGrid poisson_bracket(const SymbolJet& a, const SymbolJet& b) {
  require_same_lattice(a.value, b.value);
  SymbolGrid out(a.value.space, a.value.xi, a.value.x_periodic && b.value.x_periodic);
  for (std::size_t j = 0; j < a.dx.size(); ++j)
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] += a.dxi[j].values[i] * b.dx[j].values[i] - a.dx[j].values[i] * b.dxi[j].values[i];
  return out;
}

SymbolGrid poisson_bracket(const SymbolGrid& a, const SymbolGrid& b) {
  require_same_lattice(a, b);
  return poisson_bracket(differentiate(a), differentiate(b));
}

namespace {

void require_cs_lattice(const CoefficientSet& cs, const XiGrid& xi) {
  require(cs.grid.dim == xi.dim, "coefficient grid and xi lattice differ in dimension");
}

}  // namespace

SymbolGrid assemble_a2(const CoefficientSet& cs, const XiGrid& xi) {
  return a2_jet(cs, xi).value;
}

SymbolGrid assemble_a1(const CoefficientSet& cs, const XiGrid& xi) {
  require_cs_lattice(cs, xi);
  const int n = cs.dim();
  SymbolGrid out(cs.grid, xi);
  for (std::size_t x = 0; x < cs.grid.size(); ++x) {
    for (std::size_t k = 0; k < xi.size(); ++k) {
      Point z = xi.point(k);
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += cs.da[i][i][j][x] * z[j];
      out.at(x, k) = cplx(0.0, -s);
    }
  }
  return out;
}

SymbolJet a2_jet(const CoefficientSet& cs, const XiGrid& xi) {
  require_cs_lattice(cs, xi);
  const int n = cs.dim();
  SymbolJet j{SymbolGrid(cs.grid, xi), {}, {}};
  for (int k = 0; k < n; ++k) {
    j.dx.emplace_back(cs.grid, xi);
    j.dxi.emplace_back(cs.grid, xi);
  }
  for (std::size_t x = 0; x < cs.grid.size(); ++x) {
    for (std::size_t k = 0; k < xi.size(); ++k) {
      Point z = xi.point(k);
      double v = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v += cs.a[a][b][x] * z[a] * z[b];
      j.value.at(x, k) = v;
      for (int c = 0; c < n; ++c) {
        double dx = 0.0, dxi = 0.0;
        for (int a = 0; a < n; ++a) {
          dxi += 2.0 * cs.a[a][c][x] * z[a];
          for (int b = 0; b < n; ++b) dx += cs.da[c][a][b][x] * z[a] * z[b];
        }
        j.dx[c].at(x, k) = dx;
        j.dxi[c].at(x, k) = dxi;
      }
    }
  }
  return j;
}

double symbol_seminorm(const SymbolGrid& a, double m, int k) {
  require(k >= 0 && k <= 3, "symbol seminorm depth must lie in 0..3");
  const int n = a.space.dim;
  // Multi-index (beta_0, beta_1, alpha_0, alpha_1) -> derivative grid, built by single steps.
  std::map<std::array<int, 4>, SymbolGrid> cache;
  cache.emplace(std::array<int, 4>{0, 0, 0, 0}, a);
  double best = 0.0;
  std::vector<std::array<int, 4>> frontier{{0, 0, 0, 0}};
  for (int order = 0; order <= k; ++order) {
    std::vector<std::array<int, 4>> next;
    for (const auto& idx : frontier) {
      const SymbolGrid& g = cache.at(idx);
      int alpha = idx[2] + idx[3];
      for (std::size_t x = 0; x < a.space.size(); ++x)
        for (std::size_t q = 0; q < a.xi.size(); ++q)
          best = std::max(best, std::abs(g.at(x, q)) * std::pow(japanese(a.xi.point(q)), -(m - alpha)));
      if (order == k) continue;
      for (int var = 0; var < 4; ++var) {
        if (var % 2 == 1 && n == 1) continue;
        auto child = idx;
        child[var] += 1;
        if (cache.count(child)) continue;
        SymbolGrid d = var < 2 ? derivative_x(g, var) : derivative_xi(g, var - 2);
        cache.emplace(child, std::move(d));
        next.push_back(child);
      }
    }
    frontier = std::move(next);
  }
  return best;
}

}  // namespace vws
