#pragma once

#include <cstdio>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "projlink/chains.hpp"
#include "projlink/curves.hpp"
#include "projlink/fs.hpp"
#include "projlink/quadrature.hpp"
#include "projlink/section.hpp"

namespace projlink {

/// An effective divisor presented as the zero set of a section; its degree
/// is the section's degree.
struct Divisor {
  HomogeneousSection section;
  int degree() const { return section.degree(); }
};

struct IntersectionRecord {
  int piece = 0;
  double s = 0.0;
  double t = 0.0;
  int sign = 0;
  double conditioning = 0.0;
};

/// A computed invariant with quadrature/search diagnostics. estimated_error
/// is the a-posteriori bound from the final sample-count doubling.
struct InvariantReport {
  double value = 0.0;
  double estimated_error = 0.0;
  bool converged = true;
  int curve_panels = 0;
  int area_panels = 0;
  double richardson = 0.0;
  std::vector<IntersectionRecord> intersections;
};

struct InvariantOptions {
  double eps_clear = 1e-8;      // min FS norm of the (unit) section on the curve
  double tol_quad = 1e-9;       // curve quadrature stopping tolerance
  double tol_area = 1e-9;       // 2-chain area quadrature tolerance
  int quad_m0 = 32;
  int quad_mmax = 1 << 16;
  int clearance_samples = 512;
  int newton_grid = 64;         // seeds per parameter axis
  int newton_grid_max = 256;
  double dedup_radius = 1e-7;
  double cond_min = 1e-8;       // transversality conditioning floor
  std::uint64_t apex_seed = 2024;
};

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

/// Minimum FS norm of the unit-normalized section along the curve; throws
/// ZeroOnCurve when it falls below eps_clear (the divisor is not cleanly
/// separated from the curve and the winding integral is meaningless).
inline double check_clearance(const ParamCurve& curve,
                              const HomogeneousSection& sigma,
                              const InvariantOptions& opts = {}) {
  const HomogeneousSection unit = sigma.normalized();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& c : curve.components())
    for (int j = 0; j < opts.clearance_samples; ++j)
      lo = std::min(lo,
                    fs_norm(unit, c.path.value(kTwoPi * j / opts.clearance_samples)));
  if (!(lo > opts.eps_clear))
    throw NumericalError(ErrorKind::ZeroOnCurve,
                         "divisor comes within FS norm " + sci(lo) +
                             " of the curve (threshold " +
                             sci(opts.eps_clear) + ")");
  return lo;
}

/// Wind(curve, sigma) = integral over the curve of d^C log ||sigma||,
/// periodic trapezoid with doubling, summed over components with
/// multiplicity.
inline InvariantReport winding_number(const ParamCurve& curve,
                                      const HomogeneousSection& sigma,
                                      const InvariantOptions& opts = {}) {
  check_clearance(curve, sigma, opts);
  InvariantReport rep;
  for (const auto& c : curve.components()) {
    auto integrand = [&](double t) {
      TangentVector tv{c.path.value(t), c.path.derivative(t)};
      return dc_log_norm_pullback(sigma, tv);
    };
    QuadResult q = periodic_trapezoid(integrand, opts.tol_quad, opts.quad_m0,
                                      opts.quad_mmax);
    rep.value += c.multiplicity * q.value;
    rep.estimated_error += c.multiplicity * q.error;
    rep.converged = rep.converged && q.converged;
    rep.curve_panels = std::max(rep.curve_panels, q.panels);
    rep.richardson = q.richardson;
  }
  return rep;
}

/// Fixed-resolution winding sum (no clearance check, no refinement); this is
/// the differentiable objective used by optimizers and gradient tests.
inline double winding_fixed(const ParamCurve& curve,
                            const HomogeneousSection& sigma, int m) {
  double acc = 0.0;
  for (const auto& c : curve.components()) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double t = kTwoPi * j / m;
      TangentVector tv{c.path.value(t), c.path.derivative(t)};
      sum += dc_log_norm_pullback(sigma, tv);
    }
    acc += c.multiplicity * sum * kTwoPi / m;
  }
  return acc;
}

/// Winding number of a closed loop of nonzero complex values around the
/// origin, by principal-branch phase increments with doubling. Exact integer
/// once the loop is resolved.
inline int loop_winding(const std::function<cxd(double)>& f, int m0 = 256,
                        int mmax = 1 << 15) {
  int m = m0;
  long prev = 0;
  bool have_prev = false;
  while (m <= mmax) {
    double total = 0.0;
    bool degenerate = false;
    cxd last = f(0.0);
    for (int j = 1; j <= m; ++j) {
      const cxd cur = f(kTwoPi * j / m);
      if (std::abs(cur) == 0.0 || std::abs(last) == 0.0) {
        degenerate = true;
        break;
      }
      total += std::arg(cur / last);
      last = cur;
    }
    if (!degenerate) {
      const double turns = total / kTwoPi;
      const long rounded = std::lround(turns);
      if (std::abs(turns - rounded) < 1e-6) {
        if (have_prev && rounded == prev) return static_cast<int>(rounded);
        prev = rounded;
        have_prev = true;
      } else {
        have_prev = false;
      }
    }
    m *= 2;
  }
  throw NumericalError(ErrorKind::SeedExhaustion,
                       "loop winding did not stabilize; values approach zero "
                       "along the loop");
}

// ---------------------------------------------------------------------------
// Chain-divisor intersections.

struct IntersectionResult {
  int total = 0;  // multiplicity-weighted signed count
  std::vector<IntersectionRecord> records;
  bool verified = false;  // matched the boundary-winding census
};

namespace detail {

struct PieceField {
  const ChainPiece* piece;
  const HomogeneousSection* sigma;

  void eval(double s, double t, cxd& f, cxd& fs, cxd& ft) const {
    CVec F, Fs, Ft;
    piece->at(s, t, F, Fs, Ft);
    auto [val, grad] = sigma->evaluate_with_gradient(F);
    f = val;
    fs = 0.0;
    ft = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) {
      fs += grad[j] * Fs[j];
      ft += grad[j] * Ft[j];
    }
  }

  cxd value(double s, double t) const {
    CVec F, Fs, Ft;
    piece->at(s, t, F, Fs, Ft);
    return sigma->evaluate(F);
  }
};

inline bool newton_root(const PieceField& field, double& s, double& t,
                        double scale, int max_iter = 30) {
  for (int it = 0; it < max_iter; ++it) {
    cxd f, fs, ft;
    field.eval(s, t, f, fs, ft);
    if (std::abs(f) <= 1e-13 * scale) return true;
    const double det = std::imag(std::conj(fs) * ft);
    if (std::abs(det) < 1e-300) return false;
    const double ds = (std::real(f) * std::imag(ft) - std::imag(f) * std::real(ft)) / -det;
    const double dt = (std::real(fs) * std::imag(f) - std::imag(fs) * std::real(f)) / -det;
    s += ds;
    t += dt;
    if (s < -0.5 || s > 1.5) return false;
    if (std::abs(ds) + std::abs(dt) < 1e-15) {
      cxd f2, a, b;
      field.eval(s, t, f2, a, b);
      return std::abs(f2) <= 1e-11 * scale;
    }
  }
  cxd f, a, b;
  field.eval(s, t, f, a, b);
  return std::abs(f) <= 1e-11 * scale;
}

}  // namespace detail

/// Signed intersection count of a parameterized 2-chain with a divisor:
/// Newton iteration on sigma(F(s,t)) seeded from a dense parameter grid,
/// deduplicated, each root signed by the chart Jacobian |df|^2 - |dbar f|^2.
/// The signed total of every piece is verified against the boundary phase
/// census (outer loop winding minus inner loop winding); mismatches refine
/// the seed grid and ultimately raise SeedExhaustion.
inline IntersectionResult intersection_count(const ParamChain2& chain,
                                             const Divisor& Z,
                                             const InvariantOptions& opts = {}) {
  IntersectionResult result;
  result.verified = true;
  const double s_inner = 1e-6;

  for (std::size_t pi = 0; pi < chain.pieces.size(); ++pi) {
    const ChainPiece& piece = chain.pieces[pi];
    detail::PieceField field{&piece, &Z.section};

    // magnitude scale over a coarse grid, and degeneracy detection
    double scale = 0.0;
    for (int i = 0; i <= 16; ++i)
      for (int j = 0; j < 32; ++j)
        scale = std::max(scale,
                         std::abs(field.value(i / 16.0, kTwoPi * j / 32)));
    if (scale <= 0.0)
      throw NumericalError(ErrorKind::NonTransversal,
                           "divisor contains chain piece " + std::to_string(pi) +
                               "; choose a different cobounding chain");

    const cxd at_inner = field.value(s_inner, 0.0);
    if (std::abs(at_inner) < 1e-9 * scale)
      throw NumericalError(ErrorKind::NonTransversal,
                           "divisor passes through the chain's collapsed edge "
                           "(piece " + std::to_string(pi) + "); perturb the apex");

    const int target =
        loop_winding([&](double t) { return field.value(1.0, t); }) -
        loop_winding([&](double t) { return field.value(s_inner, t); });

    int grid = opts.newton_grid;
    bool matched = false;
    std::vector<IntersectionRecord> recs;
    while (true) {
      recs.clear();
      std::vector<std::pair<double, double>> roots;
      for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
          double s = (i + 0.5) / grid;
          double t = kTwoPi * (j + 0.5) / grid;
          if (!detail::newton_root(field, s, t, scale)) continue;
          if (!(s > 1e-9 && s < 1.0 - 1e-9)) continue;
          t = std::fmod(t, kTwoPi);
          if (t < 0) t += kTwoPi;
          bool dup = false;
          for (const auto& r : roots) {
            double dt = std::abs(r.second - t);
            dt = std::min(dt, kTwoPi - dt);
            if (std::abs(r.first - s) < opts.dedup_radius &&
                dt < opts.dedup_radius) {
              dup = true;
              break;
            }
          }
          if (dup) continue;
          roots.emplace_back(s, t);
        }
      }
      // collapse stopping-point scatter: Newton parks the copies of a
      // multiple root up to ~1e-6 apart, which must read as one zero
      {
        std::vector<std::pair<double, double>> clustered;
        for (const auto& r : roots) {
          bool merged = false;
          for (const auto& c : clustered) {
            double dt = std::abs(c.second - r.second);
            dt = std::min(dt, kTwoPi - dt);
            if (std::hypot(c.first - r.first, dt) < 1e-5) {
              merged = true;
              break;
            }
          }
          if (!merged) clustered.push_back(r);
        }
        roots.swap(clustered);
      }
      // classify each root by its local argument-principle degree on a
      // small parameter circle: +-1 is a transversal crossing, anything
      // else is a genuine tangency the chain cannot count
      double sep = 1e-3;
      for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b) {
          double dt = std::abs(roots[a].second - roots[b].second);
          dt = std::min(dt, kTwoPi - dt);
          const double gap = std::hypot(roots[a].first - roots[b].first, dt);
          sep = std::min(sep, 0.3 * gap);
        }
      for (const auto& [s, t] : roots) {
        const double rho = std::max(
            1e-8, std::min({sep, 0.5 * s, 0.5 * (1.0 - s)}));
        const int local = loop_winding(
            [&](double phi) {
              return field.value(s + rho * std::cos(phi),
                                 t + rho * std::sin(phi));
            },
            64);
        if (local == 0) continue;  // spurious basin; no zero enclosed
        cxd f, fs, ft;
        field.eval(s, t, f, fs, ft);
        const double det = std::imag(std::conj(fs) * ft);
        const double cond =
            std::abs(det) / (0.5 * (std::norm(fs) + std::norm(ft)) + 1e-300);
        if (std::abs(local) != 1)
          throw NumericalError(
              ErrorKind::NonTransversal,
              "piece " + std::to_string(pi) + ": intersection of local degree " +
                  std::to_string(local) + " at (s=" + std::to_string(s) +
                  ", t=" + std::to_string(t) + "); perturb the chain apex");
        IntersectionRecord rec;
        rec.piece = static_cast<int>(pi);
        rec.s = s;
        rec.t = t;
        rec.sign = local;
        rec.conditioning = cond;
        recs.push_back(rec);
      }
      int signed_sum = 0;
      for (const auto& r : recs) signed_sum += r.sign;
      if (signed_sum == target) {
        matched = true;
        break;
      }
      if (grid >= opts.newton_grid_max) break;
      grid *= 2;
    }
    if (!matched) {
      int signed_sum = 0;
      for (const auto& r : recs) signed_sum += r.sign;
      throw NumericalError(
          ErrorKind::SeedExhaustion,
          "piece " + std::to_string(pi) + ": found signed count " +
              std::to_string(signed_sum) + " but the boundary census gives " +
              std::to_string(target) + " after grid refinement");
    }
    for (const auto& r : recs) {
      result.records.push_back(r);
      result.total += piece.multiplicity * r.sign;
    }
  }
  return result;
}

/// Integral of the Fubini-Study form over a parameterized 2-chain.
inline QuadResult chain_area(const ParamChain2& chain,
                             const InvariantOptions& opts = {}) {
  QuadResult out;
  out.converged = true;
  for (const auto& piece : chain.pieces) {
    auto density = [&](double s, double t) {
      CVec F, Fs, Ft;
      piece.at(s, t, F, Fs, Ft);
      return fs_area_density(F, Fs, Ft);
    };
    QuadResult q = product_quadrature(density, 0.0, 1.0, opts.tol_area);
    out.value += piece.multiplicity * q.value;
    out.error += std::abs(piece.multiplicity) * q.error;
    out.panels = std::max(out.panels, q.panels);
    out.richardson = q.richardson;
    out.converged = out.converged && q.converged;
  }
  return out;
}

/// Link(curve, Z) = N.Z - deg(Z) * area(N) for a cobounding chain N.
/// When no chain is supplied a cone is constructed from a seeded apex.
inline InvariantReport projective_linking(const ParamCurve& curve,
                                          const Divisor& Z,
                                          const ParamChain2* chain = nullptr,
                                          const InvariantOptions& opts = {}) {
  check_clearance(curve, Z.section, opts);
  ParamChain2 local = chain ? *chain : cone_chain(curve, std::nullopt, opts.apex_seed);
  IntersectionResult hits = intersection_count(local, Z, opts);
  QuadResult area = chain_area(local, opts);
  InvariantReport rep;
  rep.value = static_cast<double>(hits.total) - Z.degree() * area.value;
  rep.estimated_error = Z.degree() * area.error;
  rep.converged = area.converged && hits.verified;
  rep.area_panels = area.panels;
  rep.richardson = area.richardson;
  rep.intersections = hits.records;
  return rep;
}

inline InvariantReport reduced_winding(const ParamCurve& curve,
                                       const HomogeneousSection& sigma,
                                       const InvariantOptions& opts = {}) {
  InvariantReport rep = winding_number(curve, sigma, opts);
  rep.value /= sigma.degree();
  rep.estimated_error /= sigma.degree();
  return rep;
}

inline InvariantReport reduced_linking(const ParamCurve& curve, const Divisor& Z,
                                       const ParamChain2* chain = nullptr,
                                       const InvariantOptions& opts = {}) {
  InvariantReport rep = projective_linking(curve, Z, chain, opts);
  rep.value /= Z.degree();
  rep.estimated_error /= Z.degree();
  return rep;
}

/// Classical linking number of a chart-contained curve with an affine
/// divisor: the argument-principle winding of the dehomogenized section
/// along the curve. Returns the integer and asserts the quadrature rounds
/// to within 1e-6 of it.
inline int affine_linking(const ParamCurve& curve,
                          const HomogeneousSection& sigma, int chart = 0,
                          const InvariantOptions& opts = {}) {
  check_clearance(curve, sigma, opts);
  // the curve must avoid the hyperplane at infinity of the chart
  for (const auto& c : curve.components())
    for (int j = 0; j < opts.clearance_samples; ++j) {
      const CVec z = c.path.value(kTwoPi * j / opts.clearance_samples);
      if (std::abs(z[chart]) <= opts.eps_clear * norm(z))
        throw NumericalError(ErrorKind::ZeroOnCurve,
                             "curve meets the hyperplane at infinity of chart " +
                                 std::to_string(chart));
    }
  const double ell = sigma.degree();
  double total = 0.0;
  for (const auto& c : curve.components()) {
    auto integrand = [&](double t) {
      const CVec z = c.path.value(t);
      const CVec v = c.path.derivative(t);
      auto [val, grad] = sigma.evaluate_with_gradient(z);
      cxd dlog_sigma = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) dlog_sigma += grad[j] * v[j];
      dlog_sigma /= val;
      const cxd dlog_chart = v[chart] / z[chart];
      return std::imag(dlog_sigma - ell * dlog_chart) / kTwoPi;
    };
    QuadResult q = periodic_trapezoid(integrand, opts.tol_quad, opts.quad_m0,
                                      opts.quad_mmax);
    total += c.multiplicity * q.value;
  }
  const long rounded = std::lround(total);
  if (std::abs(total - rounded) > 1e-6)
    throw NumericalError(ErrorKind::NonIntegral,
                         "affine linking quadrature gave " +
                             std::to_string(total) +
                             ", not within 1e-6 of an integer");
  return static_cast<int>(rounded);
}

/// Mass of a positive holomorphic 1-chain: its Fubini-Study area counted
/// with multiplicity. Nonnegative by positivity of the pulled-back form.
inline InvariantReport chain_mass(const HoloChain& T,
                                  const InvariantOptions& opts = {}) {
  InvariantReport rep;
  for (const auto& piece : T.pieces) {
    const ChainPiece cp = holo_as_chain_piece(piece);
    auto density = [&](double s, double t) {
      CVec F, Fs, Ft;
      cp.at(s, t, F, Fs, Ft);
      return fs_area_density(F, Fs, Ft);
    };
    QuadResult q = product_quadrature(density, 0.0, 1.0, opts.tol_area);
    rep.value += piece.multiplicity * q.value;
    rep.estimated_error += piece.multiplicity * q.error;
    rep.converged = rep.converged && q.converged;
    rep.area_panels = std::max(rep.area_panels, q.panels);
    rep.richardson = q.richardson;
  }
  if (rep.value < 0.0 && rep.value > -1e-12) rep.value = 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Intersections with holomorphic pieces via polynomial roots.

/// Roots of a complex polynomial by the companion-matrix eigenproblem.
inline std::vector<cxd> poly_roots(const Poly& p) {
  double top = 0.0;
  for (const cxd& c : p) top = std::max(top, std::abs(c));
  if (top == 0.0)
    throw NumericalError(ErrorKind::NonTransversal,
                         "polynomial is identically zero");
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && std::abs(p[deg]) <= 1e-14 * top) --deg;
  if (deg == 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -p[i] / p[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cxd> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

/// sigma composed with a polynomial disk/annulus map, as a polynomial in w.
inline Poly compose_section(const HomogeneousSection& sigma,
                            const HoloPiece& piece) {
  const auto& exps = sigma.basis().exponents();
  const int n = sigma.dimension();
  const int d = sigma.degree();
  // powers phi_i^k for k <= d
  std::vector<std::vector<Poly>> pw(n + 1);
  for (int i = 0; i <= n; ++i) {
    pw[i].resize(d + 1);
    pw[i][0] = Poly{1.0};
    for (int k = 1; k <= d; ++k)
      pw[i][k] = poly_multiply(pw[i][k - 1], piece.components[i]);
  }
  Poly acc{0.0};
  for (std::size_t m = 0; m < exps.size(); ++m) {
    if (sigma.coefficients()[m] == 0.0) continue;
    Poly term{sigma.coefficients()[m]};
    for (int i = 0; i <= n; ++i)
      if (exps[m][i] > 0) term = poly_multiply(term, pw[i][exps[m][i]]);
    if (term.size() > acc.size()) acc.resize(term.size(), 0.0);
    for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
  }
  return acc;
}

/// T.Z for a positive holomorphic chain: interior polynomial roots counted
/// with multiplicity (every intersection is positive). Requires the divisor
/// to clear the chain boundary.
inline IntersectionResult intersection_count(const HoloChain& T,
                                             const Divisor& Z,
                                             const InvariantOptions& opts = {}) {
  IntersectionResult result;
  result.verified = true;
  const HomogeneousSection unit = Z.section.normalized();
  for (std::size_t pi = 0; pi < T.pieces.size(); ++pi) {
    const HoloPiece& piece = T.pieces[pi];
    // boundary clearance on every boundary circle of the piece
    for (const auto& path : piece_boundary(piece))
      for (int j = 0; j < opts.clearance_samples; ++j)
        if (fs_norm(unit, path.value(kTwoPi * j / opts.clearance_samples)) <=
            opts.eps_clear)
          throw NumericalError(ErrorKind::ZeroOnCurve,
                               "divisor meets the boundary of holomorphic piece " +
                                   std::to_string(pi));
    const Poly f = compose_section(unit, piece);
    double top = 0.0;
    for (const cxd& c : f) top = std::max(top, std::abs(c));
    if (top <= 1e-14)
      throw NumericalError(ErrorKind::NonTransversal,
                           "divisor contains holomorphic piece " +
                               std::to_string(pi));
    for (const cxd& w : poly_roots(f)) {
      const double r = std::abs(w);
      if (r >= 1.0 - 1e-9) continue;
      if (piece.is_annulus() && r <= piece.inner_radius + 1e-9) continue;
      IntersectionRecord rec;
      rec.piece = static_cast<int>(pi);
      rec.s = r;
      rec.t = std::arg(w) < 0 ? std::arg(w) + kTwoPi : std::arg(w);
      rec.sign = 1;
      rec.conditioning = 1.0;
      result.records.push_back(rec);
      result.total += piece.multiplicity;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Ensemble verifications.

struct NecessityReport {
  double mass = 0.0;
  double bound = 0.0;  // -mass
  double min_reduced_winding = 0.0;
  int argmin = -1;
  int evaluated = 0;
  int skipped = 0;  // ensemble members that failed clearance
  bool ok = false;
  std::vector<double> values;
};

/// Checks the boundary-mass inequality: every admissible section's reduced
/// winding on the chain's boundary must be at least -mass(T) (up to tol).
inline NecessityReport necessity_check(const ParamCurve& curve,
                                       const HoloChain& T, int ensemble_size,
                                       int max_degree, std::uint64_t seed,
                                       double tol = 1e-6,
                                       const InvariantOptions& opts = {}) {
  NecessityReport rep;
  rep.mass = chain_mass(T, opts).value;
  rep.bound = -rep.mass;
  rep.min_reduced_winding = std::numeric_limits<double>::infinity();
  std::vector<double> vals(ensemble_size,
                           std::numeric_limits<double>::quiet_NaN());
  parallel_for(ensemble_size, [&](std::size_t i) {
    SplitMix64 rng(mix_seed(seed, 0x6e656331ULL, i));
    const int d = 1 + static_cast<int>(rng.next() % max_degree);
    for (int attempt = 0; attempt < 16; ++attempt) {
      HomogeneousSection sigma = random_section(curve.dimension(), d, rng);
      try {
        vals[i] = reduced_winding(curve, sigma, opts).value;
        return;
      } catch (const NumericalError&) {
        // divisor hit the curve; draw another candidate from the same stream
      }
    }
  });
  for (int i = 0; i < ensemble_size; ++i) {
    if (std::isnan(vals[i])) {
      ++rep.skipped;
      continue;
    }
    ++rep.evaluated;
    rep.values.push_back(vals[i]);
    if (vals[i] < rep.min_reduced_winding) {
      rep.min_reduced_winding = vals[i];
      rep.argmin = i;
    }
  }
  rep.ok = rep.evaluated > 0 && rep.min_reduced_winding >= rep.bound - tol;
  return rep;
}

struct UniquenessRow {
  int index = 0;
  int degree = 0;
  int count = 0;
  double ratio = 0.0;
  bool skipped = false;
};

struct UniquenessReport {
  double min_ratio = std::numeric_limits<double>::infinity();
  int argmin = -1;
  bool conclusive = false;  // zero ratio certifies minimality
  std::vector<UniquenessRow> rows;
};

/// inf over the sampled divisors of T.Z / deg Z. Zero certifies T as the
/// least-mass chain with its boundary; a positive minimum is reported as
/// inconclusive (the infimum over all divisors may still vanish).
inline UniquenessReport uniqueness_criterion(
    const HoloChain& T, const std::vector<HomogeneousSection>& ensemble,
    const InvariantOptions& opts = {}) {
  UniquenessReport rep;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    UniquenessRow row;
    row.index = static_cast<int>(i);
    row.degree = ensemble[i].degree();
    try {
      IntersectionResult hits =
          intersection_count(T, Divisor{ensemble[i]}, opts);
      row.count = hits.total;
      row.ratio = static_cast<double>(hits.total) / ensemble[i].degree();
    } catch (const NumericalError&) {
      row.skipped = true;
    }
    if (!row.skipped && row.ratio < rep.min_ratio) {
      rep.min_ratio = row.ratio;
      rep.argmin = row.index;
    }
    rep.rows.push_back(row);
  }
  rep.conclusive = rep.min_ratio == 0.0;
  return rep;
}

}  // namespace projlink
