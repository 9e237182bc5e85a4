#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "vws/coeffs.hpp"
#include "vws/grid.hpp"

namespace vws {

// Uniform frequency lattice, centred and ascending per axis: xi_i = (i - count/2) spacing.
struct XiGrid {
  int dim = 1;
  int count = 8;
  double spacing = 1.0;

  static XiGrid dual(const GridSpec& g);  // the FFT lattice kappa_k of g
  static XiGrid uniform(int dim, int count, double spacing);

  std::size_t size() const { return dim == 1 ? std::size_t(count) : std::size_t(count) * count; }
  double value(int i) const { return (i - count / 2) * spacing; }
  Point point(std::size_t flat) const;
  bool is_dual_of(const GridSpec& g) const;

  friend bool operator==(const XiGrid&, const XiGrid&) = default;
};

// Samples of a(x, xi) on (nodes of a GridSpec) x (XiGrid); x-major layout.
// x_periodic selects spectral x-derivatives; otherwise 4th-order differences.
struct SymbolGrid {
  SymbolGrid(const GridSpec& space, const XiGrid& xi, bool x_periodic = true);

  template <class F>
  static SymbolGrid sample(const GridSpec& space, const XiGrid& xi, F&& f, bool x_periodic = true) {
    SymbolGrid s(space, xi, x_periodic);
    for (std::size_t x = 0; x < space.size(); ++x) {
      Point px = space.node(x);
      for (std::size_t k = 0; k < xi.size(); ++k) s.values[s.index(x, k)] = f(px, xi.point(k));
    }
    return s;
  }

  std::size_t index(std::size_t x, std::size_t k) const { return x * xi.size() + k; }
  cplx& at(std::size_t x, std::size_t k) { return values[index(x, k)]; }
  const cplx& at(std::size_t x, std::size_t k) const { return values[index(x, k)]; }
  double max_abs() const;

  GridSpec space;
  XiGrid xi;
  bool x_periodic = true;
  std::vector<cplx> values;
};

// Symbol together with its first partial derivatives in x and xi.
struct SymbolJet {
  SymbolGrid value;
  std::vector<SymbolGrid> dx;
  std::vector<SymbolGrid> dxi;
};

void require_same_lattice(const SymbolGrid& a, const SymbolGrid& b);

// Partial derivative in x (axis 0..n-1) or xi (axis 0..n-1).
SymbolGrid derivative_x(const SymbolGrid& a, int axis);
SymbolGrid derivative_xi(const SymbolGrid& a, int axis);
SymbolJet differentiate(const SymbolGrid& a);

// {a, b} = sum_j (d_xi_j a d_x_j b - d_x_j a d_xi_j b)
SymbolGrid poisson_bracket(const SymbolGrid& a, const SymbolGrid& b);
SymbolGrid poisson_bracket(const SymbolJet& a, const SymbolJet& b);

SymbolGrid assemble_a2(const CoefficientSet& cs, const XiGrid& xi);
SymbolGrid assemble_a1(const CoefficientSet& cs, const XiGrid& xi);
SymbolJet a2_jet(const CoefficientSet& cs, const XiGrid& xi);

// max over |alpha| + |beta| <= k of sup |d_x^beta d_xi^alpha a| <xi>^-(m - |alpha|)
double symbol_seminorm(const SymbolGrid& a, double m, int k);

}  // namespace vws
