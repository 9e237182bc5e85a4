#include "vws/fit.hpp"

#include <algorithm>
#include <cmath>

#include "vws/error.hpp"

namespace vws {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "fit_line: x and y differ in length");
  require(x.size() >= 2, "fit_line: need at least two points");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw NumericalError("fit_line: non-finite sample");

  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0.0, sxy = 0.0, ymax = 0.0, yspan = 0.0;
  auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  yspan = *hi - *lo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    ymax = std::max(ymax, std::abs(y[i]));
  }
  require(sxx > 0.0, "fit_line: abscissae are all equal");

  LineFit f;
  f.points = x.size();
  if (yspan <= 1e-14 * std::max(1.0, ymax)) {
    f.degenerate = true;
    f.intercept = my;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

double relative_spread(std::span<const double> v, double floor) {
  if (v.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double scale = std::max({std::abs(*lo), std::abs(*hi), floor});
  if (scale == 0.0) return 0.0;
  return (*hi - *lo) / scale;
}

}  // namespace vws
