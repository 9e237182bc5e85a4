#include "vws/smooth_step.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace vws {
namespace {

double bump(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}

// 5-point Gauss-Legendre on [a, b].
double gauss5(double a, double b) {
  static constexpr std::array<double, 5> node = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                 -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weight = {0.5688888888888889, 0.4786286704993665,
                                                   0.4786286704993665, 0.2369268850561891,
                                                   0.2369268850561891};
  double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += weight[i] * bump(mid + half * node[i]);
  return half * acc;
}

struct Table {
  static constexpr int cells = 2048;
  std::vector<double> cumulative;
  double total = 0.0;

  Table() : cumulative(cells + 1, 0.0) {
    for (int i = 0; i < cells; ++i)
      cumulative[i + 1] = cumulative[i] + gauss5(double(i) / cells, double(i + 1) / cells);
    total = cumulative[cells];
  }
};

const Table& table() {
  static const Table t;
  return t;
}

}  // namespace

double smooth_step(double t) {
  if (t <= 1.0) return 0.0;
  if (t >= 2.0) return 1.0;
  const Table& tab = table();
  double s = t - 1.0;
  int i = int(s * Table::cells);
  if (i >= Table::cells) i = Table::cells - 1;
  double a = double(i) / Table::cells;
  return (tab.cumulative[i] + gauss5(a, s)) / tab.total;
}

double smooth_step_derivative(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  return bump(t - 1.0) / table().total;
}

double smooth_step_second_derivative(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  double s = t - 1.0, w = s * (1.0 - s);
  return bump(s) * (1.0 - 2.0 * s) / (w * w) / table().total;
}

}  // namespace vws
