#pragma once

#include <cstddef>
#include <span>

namespace vws {

// Ordinary least-squares line y = slope x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square of the fit residuals
  std::size_t points = 0;
  bool degenerate = false;  // y constant: slope reported as 0
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// (max - min) / max(max |v|, floor); 0 for an empty or all-zero list.
double relative_spread(std::span<const double> v, double floor = 0.0);

}  // namespace vws
