#pragma once

namespace vws {

// C-infinity monotone step: 0 for t <= 1, 1 for t >= 2, built as the
// normalised integral of exp(-1/(s(1-s))) over (0, t-1).
double smooth_step(double t);
double smooth_step_derivative(double t);
double smooth_step_second_derivative(double t);

}  // namespace vws
