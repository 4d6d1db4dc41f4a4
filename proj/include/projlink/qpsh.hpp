#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "projlink/fs.hpp"
#include "projlink/projective.hpp"
#include "projlink/section.hpp"

namespace projlink {

/// A function on P^n of the form max_i { log ||sigma_i||^(1/ell_i) + c_i }.
/// Single-term instances are the section logarithms whose curvature defect
/// vanishes off the divisor; finite maxima with shifts stay admissible.
class QPSHFunction {
 public:
  struct Term {
    HomogeneousSection section;
    double shift = 0.0;
  };

  static QPSHFunction section_log(const HomogeneousSection& sigma) {
    QPSHFunction u;
    u.terms_.push_back({sigma, 0.0});
    return u;
  }

  static QPSHFunction max_of(std::vector<Term> terms) {
    if (terms.empty())
      throw ValidationError("QPSH max needs at least one term");
    QPSHFunction u;
    u.terms_ = std::move(terms);
    return u;
  }

  const std::vector<Term>& terms() const { return terms_; }

  /// Value at a homogeneous representative (scale-invariant).
  double value(const CVec& z) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) {
      const double fs = fs_norm(t.section, z);
      const double v = fs > 0.0 ? std::log(fs) / t.section.degree() + t.shift
                                : -std::numeric_limits<double>::infinity();
      best = std::max(best, v);
    }
    return best;
  }

  /// Smallest FS norm among the constituents; the singular locus is where
  /// this vanishes.
  double min_constituent_norm(const CVec& z) const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) lo = std::min(lo, fs_norm(t.section, z));
    return lo;
  }

 private:
  std::vector<Term> terms_;
};

struct DefectOptions {
  double fd_step = 1e-4;      // central-difference step in chart coordinates
  double eps_clear = 1e-8;    // singular-locus clearance
};

namespace detail {

/// Complex Hessian d^2 u / dw_j dwbar_k of a real chart function by central
/// finite differences in the 2n real coordinates.
inline Eigen::MatrixXcd complex_hessian_fd(
    const std::function<double(const CVec&)>& u, const CVec& w, double h) {
  const int n = static_cast<int>(w.size());
  const int m = 2 * n;  // real coordinates: (x_0, y_0, x_1, y_1, ...)
  auto shift = [&](int a, double da, int b, double db) {
    CVec p = w;
    p[a / 2] += (a % 2 == 0) ? cxd(da, 0.0) : cxd(0.0, da);
    p[b / 2] += (b % 2 == 0) ? cxd(db, 0.0) : cxd(0.0, db);
    return p;
  };
  Eigen::MatrixXd H(m, m);
  const double u0 = u(w);
  for (int a = 0; a < m; ++a) {
    H(a, a) = (u(shift(a, h, a, 0)) - 2.0 * u0 + u(shift(a, -h, a, 0))) / (h * h);
    for (int b = a + 1; b < m; ++b) {
      const double v = (u(shift(a, h, b, h)) - u(shift(a, h, b, -h)) -
                        u(shift(a, -h, b, h)) + u(shift(a, -h, b, -h))) /
                       (4.0 * h * h);
      H(a, b) = v;
      H(b, a) = v;
    }
  }
  Eigen::MatrixXcd C(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      C(j, k) = 0.25 * cxd(H(xj, xk) + H(yj, yk), H(xj, yk) - H(yj, xk));
    }
  return 0.5 * (C + C.adjoint().eval());
}

}  // namespace detail

/// Minimum eigenvalue of the chart Hermitian form of dd^C u + omega at x,
/// with the u-part from second-order central differences of the supplied
/// chart function and the omega-part from the exact chart potential Hessian.
/// Nonnegative (up to discretization) exactly when u is admissible near x.
inline double qpsh_defect_of_chart_function(
    const std::function<double(const CVec&)>& u_chart, const CVec& w,
    const DefectOptions& opts = {}) {
  Eigen::MatrixXcd A = detail::complex_hessian_fd(u_chart, w, opts.fd_step);
  const auto fsH = fs_potential_hessian(w);
  const int n = static_cast<int>(w.size());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) A(j, k) += fsH[j][k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  return es.eigenvalues().minCoeff();
}

/// Defect of a QPSH function at a projective point, computed in the chart
/// where the point is best conditioned. Throws SingularPoint when any
/// constituent section vanishes at x.
inline double qpsh_defect(const QPSHFunction& u, const ProjPoint& x,
                          const DefectOptions& opts = {}) {
  if (u.min_constituent_norm(x.homogeneous()) <= opts.eps_clear)
    throw NumericalError(ErrorKind::SingularPoint,
                         "point lies on (or too near) the singular locus of u");
  const int chart = x.chart();
  const CVec w0 = to_chart(x.homogeneous(), chart);
  auto u_chart = [&](const CVec& w) { return u.value(from_chart(w, chart)); };
  return qpsh_defect_of_chart_function(u_chart, w0, opts);
}

/// d^C u evaluated on a curve tangent by central differences of u in chart
/// coordinates: (1/pi) Im sum_j du/dw_j wdot_j. This is the slow, generic
/// route used to cross-validate the exact section-logarithm integrand.
inline double dc_pullback_fd(const QPSHFunction& u, const CVec& z,
                             const CVec& v, double h = 1e-5) {
  const ProjPoint x(z);
  const int chart = x.chart();
  const CVec w0 = to_chart(z, chart);
  const CVec wdot = chart_velocity(z, v, chart);
  auto u_chart = [&](const CVec& w) { return u.value(from_chart(w, chart)); };
  cxd acc = 0.0;
  for (std::size_t j = 0; j < w0.size(); ++j) {
    CVec p = w0, q = w0;
    p[j] += h;
    q[j] -= h;
    const double ux = (u_chart(p) - u_chart(q)) / (2.0 * h);
    p = w0;
    q = w0;
    p[j] += cxd(0.0, h);
    q[j] -= cxd(0.0, h);
    const double uy = (u_chart(p) - u_chart(q)) / (2.0 * h);
    acc += 0.5 * cxd(ux, -uy) * wdot[j];
  }
  return std::imag(acc) / kPi;
}

}  // namespace projlink
