#pragma once

#include <array>
#include <cmath>

namespace vws {

// Second-order forward-mode number in V variables: value, gradient, Hessian.
template <int V>
struct Jet {
  double v = 0.0;
  std::array<double, V> g{};
  std::array<double, V * V> h{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Jet variable(double value, int index) {
    Jet j(value);
    j.g[index] = 1.0;
    return j;
  }

  double hess(int a, int b) const { return h[a * V + b]; }
};

// f(u) for a scalar function with known f(u.v), f'(u.v), f''(u.v).
template <int V>
Jet<V> chain(const Jet<V>& u, double f0, double f1, double f2) {
  Jet<V> r(f0);
  for (int a = 0; a < V; ++a) r.g[a] = f1 * u.g[a];
  for (int a = 0; a < V; ++a)
    for (int b = 0; b < V; ++b) r.h[a * V + b] = f1 * u.h[a * V + b] + f2 * u.g[a] * u.g[b];
  return r;
}

template <int V>
Jet<V> operator+(const Jet<V>& a, const Jet<V>& b) {
  Jet<V> r(a.v + b.v);
  for (int i = 0; i < V; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int i = 0; i < V * V; ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

template <int V>
Jet<V> operator-(const Jet<V>& a, const Jet<V>& b) {
  Jet<V> r(a.v - b.v);
  for (int i = 0; i < V; ++i) r.g[i] = a.g[i] - b.g[i];
  for (int i = 0; i < V * V; ++i) r.h[i] = a.h[i] - b.h[i];
  return r;
}

template <int V>
Jet<V> operator-(const Jet<V>& a) {
  return Jet<V>(0.0) - a;
}

template <int V>
Jet<V> operator*(const Jet<V>& a, const Jet<V>& b) {
  Jet<V> r(a.v * b.v);
  for (int i = 0; i < V; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j)
      r.h[i * V + j] = a.h[i * V + j] * b.v + a.v * b.h[i * V + j] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
  return r;
}

template <int V>
Jet<V> operator*(double c, Jet<V> a) {
  a.v *= c;
  for (double& x : a.g) x *= c;
  for (double& x : a.h) x *= c;
  return a;
}

template <int V>
Jet<V> reciprocal(const Jet<V>& a) {
  double inv = 1.0 / a.v;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

template <int V>
Jet<V> operator/(const Jet<V>& a, const Jet<V>& b) {
  return a * reciprocal(b);
}

template <int V>
Jet<V> sqrt(const Jet<V>& a) {
  double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// |a| away from zero; at zero the one-sided derivative of the positive branch.
template <int V>
Jet<V> abs(const Jet<V>& a) {
  return a.v < 0.0 ? -a : a;
}

}  // namespace vws
