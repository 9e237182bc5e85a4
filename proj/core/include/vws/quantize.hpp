#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vws/grid.hpp"
#include "vws/symbol.hpp"

namespace vws {

// Dense square matrix acting on grid functions, row-major.
class DenseOperator {
 public:
  explicit DenseOperator(const GridSpec& g);

  const GridSpec& grid() const { return grid_; }
  std::size_t rows() const { return grid_.size(); }
  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * rows() + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * rows() + c]; }
  std::span<const cplx> entries() const { return entries_; }

  Field apply(const Field& u) const;

 private:
  GridSpec grid_;
  std::vector<cplx> entries_;
};

// Largest grids accepted by quantize.
inline constexpr int kQuantizeMax1D = 64;
inline constexpr int kQuantizeMax2D = 16;

// Op(a)[j, l] = M^-n sum_k a(x_j, kappa_k) exp(i kappa_k (x_j - x_l)); a must sit on the dual lattice.
DenseOperator quantize(const SymbolGrid& a);

// Pointwise exp(a).
SymbolGrid exp_symbol(const SymbolGrid& a);

// sqrt(|E Lambda^s u|^2 + |u|_{s-1}^2)
double energy_norm(const DenseOperator& E, const Field& u, double s);

}  // namespace vws
