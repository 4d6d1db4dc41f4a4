#pragma once

#include <functional>

#include "projlink/core.hpp"

namespace projlink {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;        // a-posteriori estimate from the last doubling
  int panels = 0;            // samples used for `value`
  double richardson = 0.0;   // ratio of the last two successive differences
  bool converged = false;
};

/// Integral of a real function over one period [0, 2pi) by the periodic
/// trapezoid rule, doubling the sample count until two refinements agree.
/// Spectrally accurate for real-analytic integrands.
inline QuadResult periodic_trapezoid(const std::function<double(double)>& f,
                                     double tol, int m0 = 16,
                                     int mmax = 1 << 17) {
  int m = m0;
  double sum = 0.0;
  for (int j = 0; j < m; ++j) sum += f(kTwoPi * j / m);
  double prev = kTwoPi * sum / m;
  double prev_diff = 0.0;
  QuadResult r;
  r.value = prev;
  r.panels = m;
  while (m < mmax) {
    // keep old nodes, add the midpoints
    for (int j = 0; j < m; ++j) sum += f(kTwoPi * (j + 0.5) / m);
    m *= 2;
    double cur = kTwoPi * sum / m;
    double diff = std::abs(cur - prev);
    r.value = cur;
    r.panels = m;
    r.error = diff;
    r.richardson = (diff > 0.0 && prev_diff > 0.0) ? prev_diff / diff : 0.0;
    if (diff <= tol * std::max(1.0, std::abs(cur))) {
      r.converged = true;
      return r;
    }
    prev = cur;
    prev_diff = diff;
  }
  return r;
}

/// Gauss-Legendre nodes and weights on [0, 1], by Newton iteration on the
/// Legendre polynomial.
inline void gauss_legendre(int m, std::vector<double>& nodes,
                           std::vector<double>& weights) {
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess on [-1,1]
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (x + 1.0);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

/// Integral over [lo, hi] x [0, 2pi) of f(s, t), Gauss-Legendre in s and
/// periodic trapezoid in t, doubling both directions until stable.
inline QuadResult product_quadrature(
    const std::function<double(double, double)>& f, double lo, double hi,
    double tol, int ms0 = 8, int mt0 = 32, int max_doublings = 7) {
  auto level_value = [&](int ms, int mt) {
    std::vector<double> xs, ws;
    gauss_legendre(ms, xs, ws);
    double acc = 0.0;
    for (int i = 0; i < ms; ++i) {
      const double s = lo + (hi - lo) * xs[i];
      double row = 0.0;
      for (int j = 0; j < mt; ++j) row += f(s, kTwoPi * j / mt);
      acc += ws[i] * (hi - lo) * row * kTwoPi / mt;
    }
    return acc;
  };
  int ms = ms0, mt = mt0;
  double prev = level_value(ms, mt);
  double prev_diff = 0.0;
  QuadResult r;
  for (int lvl = 0; lvl < max_doublings; ++lvl) {
    ms *= 2;
    mt *= 2;
    double cur = level_value(ms, mt);
    double diff = std::abs(cur - prev);
    r.value = cur;
    r.panels = ms * mt;
    r.error = diff;
    r.richardson = (diff > 0.0 && prev_diff > 0.0) ? prev_diff / diff : 0.0;
    if (diff <= tol * std::max(1.0, std::abs(cur))) {
      r.converged = true;
      return r;
    }
    prev = cur;
    prev_diff = diff;
  }
  return r;
}

}  // namespace projlink
