#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "projlink/core.hpp"
#include "projlink/curves.hpp"
#include "projlink/fs.hpp"
#include "projlink/rng.hpp"
#include "projlink/section.hpp"

namespace projlink {

/// One parameterized piece of a 2-chain: a map F(s, t) from
/// [0,1] x [0,2pi) into C^{n+1}-{0} with exact partial derivatives.
struct ChainPiece {
  // writes F, dF/ds, dF/dt at (s, t)
  std::function<void(double, double, CVec&, CVec&, CVec&)> eval;
  int multiplicity = 1;
  std::string kind = "generic";

  void at(double s, double t, CVec& F, CVec& Fs, CVec& Ft) const {
    eval(s, t, F, Fs, Ft);
  }
};

/// An oriented 2-chain with boundary a ParamCurve: the boundary is the s = 1
/// edge of each piece traversed with increasing t; the s = 0 edge collapses
/// to a point or cancels across pieces.
struct ParamChain2 {
  std::vector<ChainPiece> pieces;
  ParamCurve boundary;
  int dimension() const { return boundary.dimension(); }
};

inline ChainPiece make_cone_piece(const FourierPath& path, const CVec& apex,
                                  int multiplicity) {
  ChainPiece p;
  p.kind = "cone";
  p.multiplicity = multiplicity;
  p.eval = [path, apex](double s, double t, CVec& F, CVec& Fs, CVec& Ft) {
    const CVec g = path.value(t);
    const CVec gp = path.derivative(t);
    const std::size_t n = g.size();
    F.resize(n);
    Fs.resize(n);
    Ft.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      F[i] = (1.0 - s) * apex[i] + s * g[i];
      Fs[i] = g[i] - apex[i];
      Ft[i] = s * gp[i];
    }
  };
  return p;
}

/// Smallest ||F|| over a parameter grid; used to certify that a chain stays
/// away from the origin of C^{n+1}.
inline double chain_min_norm(const ChainPiece& piece, int ns = 64, int nt = 128,
                             double* arg_s = nullptr, double* arg_t = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  CVec F, Fs, Ft;
  for (int i = 0; i <= ns; ++i)
    for (int j = 0; j < nt; ++j) {
      const double s = static_cast<double>(i) / ns;
      const double t = kTwoPi * j / nt;
      piece.at(s, t, F, Fs, Ft);
      const double v = norm(F);
      if (v < best) {
        best = v;
        if (arg_s) *arg_s = s;
        if (arg_t) *arg_t = t;
      }
    }
  return best;
}

/// Cobounding 2-chain for a curve: the homogeneous-coordinate cone
/// F(s,t) = (1-s) p + s gamma(t), one piece per component. When no apex is
/// given, candidates are drawn deterministically from `seed` until
/// min ||F|| >= 0.1 min ||gamma||; fails after bounded retries.
inline ParamChain2 cone_chain(const ParamCurve& curve,
                              std::optional<CVec> apex = std::nullopt,
                              std::uint64_t seed = 2024, int max_retries = 64) {
  if (curve.empty())
    throw ValidationError("cannot cone an empty curve");
  const double curve_floor = curve.min_norm();
  const double needed = 0.1 * curve_floor;

  auto build = [&](const CVec& p) {
    ParamChain2 chain{{}, curve};
    for (const auto& c : curve.components())
      chain.pieces.push_back(make_cone_piece(c.path, p, c.multiplicity));
    return chain;
  };

  if (apex) {
    if (static_cast<int>(apex->size()) != curve.dimension() + 1)
      throw ValidationError("apex dimension mismatch");
    ParamChain2 chain = build(*apex);
    for (const auto& piece : chain.pieces) {
      double s_bad = 0, t_bad = 0;
      const double got = chain_min_norm(piece, 64, 128, &s_bad, &t_bad);
      if (got < needed)
        throw NumericalError(
            ErrorKind::ApexSearchFailed,
            "supplied apex brings the cone within " + std::to_string(got) +
                " of the origin near (s=" + std::to_string(s_bad) +
                ", t=" + std::to_string(t_bad) + ")");
    }
    return chain;
  }

  SplitMix64 rng(mix_seed(seed, 0x636f6e65ULL));
  double best_seen = 0.0;
  double best_s = 0.0, best_t = 0.0;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    CVec p = rng.cgauss_vec(curve.dimension() + 1);
    const double np = norm(p);
    for (auto& x : p) x = x / np * curve_floor;  // apex at the curve's scale
    ParamChain2 chain = build(p);
    double worst = std::numeric_limits<double>::infinity();
    double s_bad = 0, t_bad = 0;
    for (const auto& piece : chain.pieces) {
      double ps = 0, pt = 0;
      const double got = chain_min_norm(piece, 64, 128, &ps, &pt);
      if (got < worst) {
        worst = got;
        s_bad = ps;
        t_bad = pt;
      }
    }
    if (worst >= needed) return chain;
    if (worst > best_seen) {
      best_seen = worst;
      best_s = s_bad;
      best_t = t_bad;
    }
  }
  throw NumericalError(
      ErrorKind::ApexSearchFailed,
      "no apex kept the cone clear of the origin after " +
          std::to_string(max_retries) + " candidates; best min||F|| = " +
          std::to_string(best_seen) + " at (s=" + std::to_string(best_s) +
          ", t=" + std::to_string(best_t) + "), required " +
          std::to_string(needed));
}

// ---------------------------------------------------------------------------
// Positive holomorphic chains with polynomial pieces.

/// Polynomial p(w) = sum_k c_k w^k with complex coefficients.
using Poly = CVec;

inline cxd poly_eval(const Poly& p, cxd w) {
  cxd acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * w + p[k];
  return acc;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k)
    d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

inline Poly poly_multiply(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// One piece of a positive holomorphic 1-chain: a polynomial map from the
/// closed unit disk (or the annulus inner_radius <= |w| <= 1) into
/// homogeneous coordinates. Holomorphy is structural: components are
/// polynomials in w only.
struct HoloPiece {
  std::vector<Poly> components;  // length n+1
  double inner_radius = 0.0;     // 0 -> disk, >0 -> annulus
  int multiplicity = 1;

  int dimension() const { return static_cast<int>(components.size()) - 1; }
  bool is_annulus() const { return inner_radius > 0.0; }

  CVec value(cxd w) const {
    CVec z(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
      z[i] = poly_eval(components[i], w);
    return z;
  }

  CVec derivative(cxd w) const {
    CVec v(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
      v[i] = poly_eval(poly_derivative(components[i]), w);
    return v;
  }
};

struct HoloChain {
  std::vector<HoloPiece> pieces;
  int dim = 0;

  int dimension() const { return dim; }
};

inline HoloPiece disk_in_line_piece(double radius = 1.0, int dim = 2,
                                    int multiplicity = 1) {
  HoloPiece p;
  p.components.assign(dim + 1, Poly{0.0});
  p.components[0] = Poly{1.0};
  p.components[1] = Poly{0.0, radius};
  p.multiplicity = multiplicity;
  return p;
}

/// The full line spanned by the first two coordinates, glued from two unit
/// disks whose boundaries cancel.
inline std::vector<HoloPiece> full_line_pieces(int dim = 2,
                                               int multiplicity = 1) {
  HoloPiece a = disk_in_line_piece(1.0, dim, multiplicity);
  HoloPiece b;
  b.components.assign(dim + 1, Poly{0.0});
  b.components[0] = Poly{0.0, 1.0};
  b.components[1] = Poly{1.0};
  b.multiplicity = multiplicity;
  return {a, b};
}

inline HoloPiece conic_piece() {
  HoloPiece p;
  p.components = {Poly{1.0}, Poly{0.0, 1.0}, Poly{0.0, 0.0, 1.0}};
  p.multiplicity = 1;
  return p;
}

/// Oriented boundary circles of a holomorphic piece as Fourier paths:
/// the outer circle with increasing t, plus (for annuli) the inner circle
/// reversed. Exact: polynomial in e^{it} is a trigonometric polynomial.
inline std::vector<FourierPath> piece_boundary(const HoloPiece& p) {
  const int n = p.dimension();
  int deg = 0;
  for (const auto& c : p.components)
    deg = std::max(deg, static_cast<int>(c.size()) - 1);
  std::vector<FourierPath> out;
  FourierPath outer(n, deg);
  for (int i = 0; i <= n; ++i)
    for (std::size_t k = 0; k < p.components[i].size(); ++k)
      outer.mode(static_cast<int>(k))[i] = p.components[i][k];
  out.push_back(outer);
  if (p.is_annulus()) {
    // inner boundary at |w| = r0, orientation reversed: w = r0 e^{-it}
    FourierPath inner(n, deg);
    for (int i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < p.components[i].size(); ++k)
        inner.mode(-static_cast<int>(k))[i] =
            p.components[i][k] * std::pow(p.inner_radius, static_cast<double>(k));
    out.push_back(inner);
  }
  return out;
}

/// View of a holomorphic piece as a (r, theta) chain piece for quadrature:
/// F(s, t) = phi((r0 + (1-r0) s) e^{it}).
inline ChainPiece holo_as_chain_piece(const HoloPiece& p) {
  ChainPiece cp;
  cp.kind = "holomorphic";
  cp.multiplicity = p.multiplicity;
  const double r0 = p.inner_radius;
  cp.eval = [p, r0](double s, double t, CVec& F, CVec& Fs, CVec& Ft) {
    const double r = r0 + (1.0 - r0) * s;
    const cxd e = std::polar(1.0, t);
    const cxd w = r * e;
    F = p.value(w);
    const CVec d = p.derivative(w);
    const std::size_t n = d.size();
    Fs.resize(n);
    Ft.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Fs[i] = d[i] * e * (1.0 - r0);
      Ft[i] = d[i] * w * cxd(0.0, 1.0);
    }
  };
  return cp;
}

// ---------------------------------------------------------------------------
// Boundary verification.

struct BoundaryIssue {
  std::string kind;  // "missing" | "orientation" | "multiplicity" | "extra"
  std::string detail;
};

struct BoundaryReport {
  bool matched = true;
  std::vector<BoundaryIssue> issues;
  double hausdorff = 0.0;  // worst matched-pair distance observed
};

namespace detail {

struct OrientedCircle {
  std::vector<CVec> pts;  // samples in increasing t
  int weight = 0;
};

inline double hausdorff_fs(const std::vector<CVec>& a,
                           const std::vector<CVec>& b) {
  double h = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) best = std::min(best, fs_distance(p, q));
    h = std::max(h, best);
  }
  for (const auto& q : b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a) best = std::min(best, fs_distance(p, q));
    h = std::max(h, best);
  }
  return h;
}

/// +1 if b traverses the same circle as a in the same direction, -1 if
/// reversed, 0 if undetermined.
inline int orientation_match(const std::vector<CVec>& a,
                             const std::vector<CVec>& b) {
  const int m = static_cast<int>(a.size());
  // align b's start to a's start
  int j0 = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    const double d = fs_distance(a[0], b[j]);
    if (d < best) {
      best = d;
      j0 = j;
    }
  }
  double fwd = 0.0, bwd = 0.0;
  const int probe = m / 4;
  for (int k = 1; k <= probe; ++k) {
    fwd += fs_distance(a[k], b[(j0 + k) % m]);
    bwd += fs_distance(a[k], b[(j0 - k % m + m) % m]);
  }
  if (fwd < bwd) return 1;
  if (bwd < fwd) return -1;
  return 0;
}

}  // namespace detail

/// Verifies that the oriented boundary of T (with multiplicities, after
/// cancelling internal seams) matches the curve pointwise within Hausdorff
/// distance tol in the Fubini-Study metric. Returns a structured report
/// rather than throwing.
inline BoundaryReport chain_boundary_check(const HoloChain& T,
                                           const ParamCurve& curve,
                                           double tol = 1e-8, int m = 128) {
  BoundaryReport rep;
  // collect boundary circles with orientation weights
  std::vector<detail::OrientedCircle> circles;
  for (const auto& piece : T.pieces) {
    const auto paths = piece_boundary(piece);
    for (const auto& path : paths) {
      detail::OrientedCircle oc;
      oc.weight = piece.multiplicity;
      oc.pts.reserve(m);
      for (int j = 0; j < m; ++j) oc.pts.push_back(path.value(kTwoPi * j / m));
      circles.push_back(std::move(oc));
    }
  }
  // cancel / merge circles supported on the same point set
  std::vector<detail::OrientedCircle> merged;
  std::vector<bool> used(circles.size(), false);
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (used[i]) continue;
    detail::OrientedCircle acc = circles[i];
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      if (used[j]) continue;
      if (detail::hausdorff_fs(circles[i].pts, circles[j].pts) <= tol) {
        const int o = detail::orientation_match(circles[i].pts, circles[j].pts);
        acc.weight += o * circles[j].weight;
        used[j] = true;
      }
    }
    used[i] = true;
    if (acc.weight != 0) merged.push_back(std::move(acc));
  }

  // match the survivors against the curve's components
  std::vector<bool> taken(merged.size(), false);
  for (std::size_t c = 0; c < curve.components().size(); ++c) {
    const auto& comp = curve.components()[c];
    std::vector<CVec> target;
    target.reserve(m);
    for (int j = 0; j < m; ++j)
      target.push_back(comp.path.value(kTwoPi * j / m));
    bool found = false;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (taken[i]) continue;
      const double h = detail::hausdorff_fs(target, merged[i].pts);
      if (h > tol) continue;
      taken[i] = true;
      found = true;
      rep.hausdorff = std::max(rep.hausdorff, h);
      const int o = detail::orientation_match(target, merged[i].pts);
      if (o <= 0) {
        rep.matched = false;
        rep.issues.push_back({"orientation",
                              "component " + std::to_string(c) +
                                  " is traversed in the opposite direction"});
      } else if (merged[i].weight != comp.multiplicity) {
        rep.matched = false;
        rep.issues.push_back(
            {"multiplicity", "component " + std::to_string(c) + " carries " +
                                 std::to_string(merged[i].weight) +
                                 ", curve declares " +
                                 std::to_string(comp.multiplicity)});
      }
      break;
    }
    if (!found) {
      rep.matched = false;
      rep.issues.push_back({"missing", "no chain boundary matches component " +
                                           std::to_string(c)});
    }
  }
  for (std::size_t i = 0; i < merged.size(); ++i)
    if (!taken[i]) {
      rep.matched = false;
      rep.issues.push_back(
          {"extra", "chain has an unmatched boundary circle (weight " +
                        std::to_string(merged[i].weight) + ")"});
    }
  return rep;
}

}  // namespace projlink
