#pragma once

#include "projlink/core.hpp"
#include "projlink/projective.hpp"
#include "projlink/section.hpp"

namespace projlink {

// Fubini-Study geometry in homogeneous coordinates.
//
// Conventions used throughout the library:
//   * the metric on O(d) is the unitary-invariant one,
//     ||sigma(x)|| = |sigma(z)| / ||z||^d for any representative z;
//   * d^C = (i/2pi)(dbar - d), so that for real u and a chart tangent v
//         d^C u (v) = (1/pi) * Im( sum_j du/dz_j * v_j );
//     the constant and sign are pinned by the circle oracle: integrating
//     d^C log|w| along the positively oriented unit circle gives +1, and
//     integrating d^C log||z_1|| along (1, e^{it}) in P^1 gives +1/2
//     (both asserted in the test suite);
//   * omega = (1/2) d d^C log(1 + ||w||^2) in a chart, normalized so a
//     projective line has unit area.

/// ||sigma(x)|| = |sigma(z)| / ||z||^degree, independent of the representative.
inline double fs_norm(const HomogeneousSection& sigma, const CVec& z) {
  return std::abs(sigma.evaluate(z)) /
         std::pow(norm(z), static_cast<double>(sigma.degree()));
}

inline double fs_norm(const HomogeneousSection& sigma, const ProjPoint& x) {
  return fs_norm(sigma, x.homogeneous());
}

/// The 1-form d^C log||sigma|| evaluated on a tangent vector, computed
/// upstairs on C^{n+1}-{0}: the integrand of the projective winding number.
/// Requires sigma(base) != 0.
inline double dc_log_norm_pullback(const HomogeneousSection& sigma,
                                   const TangentVector& t) {
  auto [val, grad] = sigma.evaluate_with_gradient(t.base);
  if (val == 0.0)
    throw NumericalError(ErrorKind::ZeroOnCurve,
                         "d^C log||sigma|| is undefined where sigma vanishes");
  cxd dir = 0.0;
  for (std::size_t j = 0; j < t.base.size(); ++j) dir += grad[j] * t.vector[j];
  const double d = static_cast<double>(sigma.degree());
  const cxd radial = inner(t.vector, t.base) / norm2(t.base);
  return (0.5 / kPi) * std::imag(dir / val - d * radial);
}

/// Pullback density of the Fubini-Study form under a map into C^{n+1}-{0}:
/// F*(omega) = fs_area_density(F, dF/ds, dF/dt) ds^dt. Positive whenever the
/// parameterization is holomorphic and orientation-preserving.
inline double fs_area_density(const CVec& F, const CVec& Fs, const CVec& Ft) {
  const double Q = norm2(F);
  const cxd st = inner(Fs, Ft);
  const cxd sz = inner(Fs, F);
  const cxd zt = inner(F, Ft);
  const cxd h = (st * Q - sz * zt) / (Q * Q);
  return -std::imag(h) / kPi;
}

/// Complex Hessian d^2/dw_j dwbar_k of the chart potential
/// Phi(w) = (1/2) log(1 + ||w||^2), for which omega = d d^C Phi.
/// Row j, column k; Hermitian positive definite.
inline std::vector<CVec> fs_potential_hessian(const CVec& w) {
  const std::size_t n = w.size();
  const double Q = 1.0 + norm2(w);
  std::vector<CVec> H(n, CVec(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      cxd v = -std::conj(w[j]) * w[k] / (Q * Q);
      if (j == k) v += 1.0 / Q;
      H[j][k] = 0.5 * v;
    }
  return H;
}

}  // namespace projlink
