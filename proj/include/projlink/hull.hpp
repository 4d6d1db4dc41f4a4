#pragma once

#include <map>

#include "projlink/curves.hpp"
#include "projlink/fs.hpp"
#include "projlink/rng.hpp"
#include "projlink/section.hpp"

namespace projlink {

enum class HullVerdict { Member, NonMember, Undetermined };

inline const char* to_string(HullVerdict v) {
  switch (v) {
    case HullVerdict::Member: return "member";
    case HullVerdict::NonMember: return "non-member";
    case HullVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

/// Per-point hull evidence: the estimated best constants
/// C_d(x) = sup_sigma (||sigma(x)|| / sup_curve ||sigma||)^(1/d)
/// over degrees, a membership verdict, and Lambda = log of the stabilized
/// constant. The estimates are one-sided: maximization over finitely many
/// candidates never overshoots the true supremum beyond the sup-sampling
/// error on the curve.
struct HullEstimate {
  CVec point;
  std::map<int, double> best_constant_by_degree;
  HullVerdict verdict = HullVerdict::Undetermined;
  double lambda = 0.0;
  bool unbounded_detected = false;
  double sup_refinement = 0.0;  // |sup at m - sup at 2m| for the final witness
};

struct HullOptions {
  int degree_min = 1;
  int degree_max = 6;
  int restarts = 12;
  int iterations = 200;
  int sup_samples = 256;  // per component; the optimizer works on 2x this
  std::uint64_t seed = 7777;
  CoefficientWeight weight = CoefficientWeight::Gaussian;
  bool informed_start = true;
  // verdict thresholds (engineering choices, surfaced in the config)
  double c_cap = 1e3;
  double stabil_rel = 0.01;
  double growth_slope = 0.08;
  double sup_floor = 1e-13;
};

namespace detail {

/// Scaled monomial rows: row j holds m_alpha(z_j) / ||z_j||^d, so that
/// |c . row| is the FS norm of the section with coefficients c at z_j.
struct SupRatioProblem {
  std::vector<CVec> rows;
  CVec target;  // the same vector at x
  int degree = 1;

  static CVec scaled_row(const MonomialBasis& basis, const CVec& z) {
    CVec row(basis.size());
    const double zd = std::pow(norm(z), static_cast<double>(basis.degree()));
    std::vector<CVec> pw(z.size(), CVec(basis.degree() + 1));
    for (std::size_t i = 0; i < z.size(); ++i) {
      pw[i][0] = 1.0;
      for (int k = 1; k <= basis.degree(); ++k) pw[i][k] = pw[i][k - 1] * z[i];
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
      cxd mono = 1.0;
      const auto& e = basis.exponent(a);
      for (std::size_t i = 0; i < z.size(); ++i)
        if (e[i] > 0) mono *= pw[i][e[i]];
      row[a] = mono / zd;
    }
    return row;
  }

  double sup_on_curve(const CVec& c, std::size_t* argmax = nullptr) const {
    double best = 0.0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      cxd f = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) f += c[a] * rows[j][a];
      const double v = std::abs(f);
      if (v > best) {
        best = v;
        if (argmax) *argmax = j;
      }
    }
    return best;
  }

  double at_target(const CVec& c) const {
    cxd f = 0.0;
    for (std::size_t a = 0; a < c.size(); ++a) f += c[a] * target[a];
    return std::abs(f);
  }
};

/// Projected (sub)gradient ascent of log |c.v0| - log max_j |c.v_j| on the
/// coefficient unit sphere. Returns the best ratio found and leaves the
/// maximizer in c; sets `unbounded` if the curve sup collapses under the
/// floor (the ratio is effectively infinite, the point sees sections
/// invisible to the curve).
inline double maximize_sup_ratio(const SupRatioProblem& prob, CVec& c,
                                 int iterations, double sup_floor,
                                 bool* unbounded) {
  const std::size_t L = c.size();
  auto normalize = [&](CVec& v) {
    const double s = norm(v);
    for (auto& x : v) x /= s;
  };
  normalize(c);

  auto ratio_of = [&](const CVec& cc) {
    const double s = prob.sup_on_curve(cc);
    const double f0 = prob.at_target(cc);
    if (s < sup_floor * std::max(f0, 1e-300)) return -1.0;  // runaway marker
    return f0 / s;
  };

  double best = ratio_of(c);
  if (best < 0.0) {
    if (unbounded) *unbounded = true;
    return std::numeric_limits<double>::infinity();
  }
  double step = 0.25;
  for (int it = 0; it < iterations; ++it) {
    cxd f0 = 0.0;
    for (std::size_t a = 0; a < L; ++a) f0 += c[a] * prob.target[a];
    std::size_t jmax = 0;
    const double s = prob.sup_on_curve(c, &jmax);
    const double af0 = std::abs(f0);
    if (af0 == 0.0) break;
    if (s < sup_floor * af0) {
      if (unbounded) *unbounded = true;
      return std::numeric_limits<double>::infinity();
    }
    cxd fj = 0.0;
    for (std::size_t a = 0; a < L; ++a) fj += c[a] * prob.rows[jmax][a];
    CVec g(L);
    for (std::size_t a = 0; a < L; ++a)
      g[a] = std::conj(prob.target[a] / f0) - std::conj(prob.rows[jmax][a] / fj);
    // tangent projection on the real sphere
    double gc = 0.0;
    for (std::size_t a = 0; a < L; ++a) gc += std::real(g[a] * std::conj(c[a]));
    for (std::size_t a = 0; a < L; ++a) g[a] -= gc * c[a];
    const double gn = norm(g);
    if (gn < 1e-13) break;
    bool advanced = false;
    while (step > 1e-12) {
      CVec cand = c;
      axpy(cand, step / gn, g);
      normalize(cand);
      const double r = ratio_of(cand);
      if (r < 0.0) {
        if (unbounded) *unbounded = true;
        return std::numeric_limits<double>::infinity();
      }
      if (r > best * (1.0 + 1e-14)) {
        c = cand;
        best = r;
        step *= 1.5;
        advanced = true;
        break;
      }
      step *= 0.5;
    }
    if (!advanced) break;
  }
  return best;
}

}  // namespace detail

/// Estimates the best-constant profile d -> C_d(x) for a point against a
/// curve by random starts plus projected gradient ascent over unit
/// coefficient vectors, and classifies hull membership from the profile's
/// stabilization or growth.
inline HullEstimate best_constant(const ParamCurve& curve, const ProjPoint& x,
                                  const HullOptions& opts = {}) {
  HullEstimate est;
  est.point = x.homogeneous();
  const int n = curve.dimension();
  const int m = 2 * opts.sup_samples;

  for (int d = opts.degree_min; d <= opts.degree_max; ++d) {
    MonomialBasis basis(n, d);
    detail::SupRatioProblem prob;
    prob.degree = d;
    prob.target = detail::SupRatioProblem::scaled_row(basis, x.homogeneous());
    for (const auto& comp : curve.components())
      for (int j = 0; j < m; ++j)
        prob.rows.push_back(detail::SupRatioProblem::scaled_row(
            basis, comp.path.value(kTwoPi * j / m)));

    double best = 0.0;
    CVec best_c;
    bool unbounded = false;
    std::vector<CVec> starts;
    if (opts.informed_start)
      starts.push_back(coherent_section(x.homogeneous(), d).coefficients());
    for (int r = 0; r < opts.restarts; ++r) {
      SplitMix64 rng(mix_seed(opts.seed, static_cast<std::uint64_t>(d), r));
      starts.push_back(rng.cgauss_vec(basis.size()));
    }
    for (CVec c0 : starts) {
      const double r = detail::maximize_sup_ratio(prob, c0, opts.iterations,
                                                  opts.sup_floor, &unbounded);
      if (unbounded) break;
      if (r > best) {
        best = r;
        best_c = std::move(c0);
      }
    }
    double cd;
    if (unbounded) {
      est.unbounded_detected = true;
      cd = opts.c_cap;
    } else {
      cd = std::pow(best, 1.0 / d);
      if (cd > opts.c_cap) {
        cd = opts.c_cap;
        est.unbounded_detected = true;
      }
      // one Richardson doubling certifies the curve-sup sampling: the
      // witness's sup at half resolution must already agree
      if (!best_c.empty()) {
        detail::SupRatioProblem half;
        half.degree = d;
        for (const auto& comp : curve.components())
          for (int j = 0; j < opts.sup_samples; ++j)
            half.rows.push_back(detail::SupRatioProblem::scaled_row(
                basis, comp.path.value(kTwoPi * j / opts.sup_samples)));
        const double s_full = prob.sup_on_curve(best_c);
        const double s_half = half.sup_on_curve(best_c);
        est.sup_refinement = std::max(
            est.sup_refinement,
            std::abs(s_full - s_half) / std::max(s_full, 1e-300));
      }
    }
    est.best_constant_by_degree[d] = cd;
  }

  // verdict: runaway constants mean no single C can work; a flat profile
  // across the top of the degree range is membership evidence.
  std::vector<std::pair<int, double>> prof(est.best_constant_by_degree.begin(),
                                           est.best_constant_by_degree.end());
  double cmax = 0.0;
  for (auto& [d, c] : prof) cmax = std::max(cmax, c);
  est.lambda = std::log(std::max(cmax, 1e-300));

  if (est.unbounded_detected || cmax >= opts.c_cap) {
    est.verdict = HullVerdict::NonMember;
    return est;
  }
  // least-squares slope of log C_d against d
  {
    const double k = static_cast<double>(prof.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [d, c] : prof) {
      const double lx = d, ly = std::log(std::max(c, 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double denom = k * sxx - sx * sx;
    const double slope = denom > 0 ? (k * sxy - sx * sy) / denom : 0.0;
    if (slope >= opts.growth_slope) {
      est.verdict = HullVerdict::NonMember;
      return est;
    }
  }
  // stabilization of the running max across the top third of the range
  {
    std::vector<double> running;
    double run = 0.0;
    for (auto& [d, c] : prof) {
      run = std::max(run, c);
      running.push_back(run);
    }
    const std::size_t window = std::max<std::size_t>(1, prof.size() / 3);
    const std::size_t start = prof.size() - window;
    const double lo = running[start > 0 ? start - 1 : 0];
    const double hi = running.back();
    if (hi <= lo * (1.0 + opts.stabil_rel)) {
      est.verdict = HullVerdict::Member;
      return est;
    }
  }
  est.verdict = HullVerdict::Undetermined;
  return est;
}

/// Batch best_constant over explicit sample points, deterministic per
/// (point, degree) regardless of the thread count.
inline std::vector<HullEstimate> hull_field(const ParamCurve& curve,
                                            const std::vector<ProjPoint>& grid,
                                            const HullOptions& opts = {}) {
  std::vector<HullEstimate> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    HullOptions local = opts;
    local.seed = mix_seed(opts.seed, 0x68756c6cULL, i);
    out[i] = best_constant(curve, grid[i], local);
  });
  return out;
}

}  // namespace projlink
