#include "vws/quantize.hpp"

#include <cmath>

#include "vws/error.hpp"

namespace vws {

DenseOperator::DenseOperator(const GridSpec& g) : grid_(g), entries_(g.size() * g.size()) {}

Field DenseOperator::apply(const Field& u) const {
  require(u.grid() == grid_, "operator and field live on different grids");
  Field out(grid_);
  const std::size_t n = rows();
  for (std::size_t r = 0; r < n; ++r) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) acc += entries_[r * n + c] * u[c];
    out[r] = acc;
  }
  return out;
}

DenseOperator quantize(const SymbolGrid& a) {
  const GridSpec& g = a.space;
  require(a.xi.is_dual_of(g), "quantize: the symbol must be sampled on the dual lattice of its grid");
  require(g.points <= (g.dim == 1 ? kQuantizeMax1D : kQuantizeMax2D), "quantize: grid too large for a dense operator");
  const std::size_t size = g.size();
  const double norm_factor = 1.0 / double(size);
  DenseOperator Q(g);
  // Frequencies of the lattice in the same flat order as the symbol.
  std::vector<Point> freq(a.xi.size());
  for (std::size_t k = 0; k < freq.size(); ++k) freq[k] = a.xi.point(k);
  std::vector<cplx> phase(freq.size());
  for (std::size_t j = 0; j < size; ++j) {
    Point xj = g.node(j);
    for (std::size_t l = 0; l < size; ++l) {
      Point xl = g.node(l);
      cplx acc = 0.0;
      for (std::size_t k = 0; k < freq.size(); ++k) {
        double t = freq[k][0] * (xj[0] - xl[0]) + freq[k][1] * (xj[1] - xl[1]);
        acc += a.at(j, k) * cplx(std::cos(t), std::sin(t));
      }
      Q(j, l) = acc * norm_factor;
    }
  }
  return Q;
}

SymbolGrid exp_symbol(const SymbolGrid& a) {
  SymbolGrid out = a;
  for (auto& v : out.values) v = std::exp(v);
  return out;
}

double energy_norm(const DenseOperator& E, const Field& u, double s) {
  require(u.grid() == E.grid(), "energy norm: operator and field live on different grids");
  Field v = E.apply(apply_lambda(u, s));
  double main = sobolev_norm(v, 0.0);
  double low = sobolev_norm(u, s - 1.0);
  return std::sqrt(main * main + low * low);
}

}  // namespace vws
