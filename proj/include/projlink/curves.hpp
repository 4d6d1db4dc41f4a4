#pragma once

#include <limits>
#include <utility>

#include "projlink/core.hpp"
#include "projlink/projective.hpp"

namespace projlink {

/// Trigonometric polynomial t -> sum_{|k|<=K} a_k e^{ikt} with values in
/// C^{n+1}; evaluation and differentiation are exact.
class FourierPath {
 public:
  FourierPath(int dim, int max_mode)
      : dim_(dim), K_(max_mode), coeffs_(2 * max_mode + 1, CVec(dim + 1, 0.0)) {}

  int dimension() const { return dim_; }
  int max_mode() const { return K_; }

  CVec& mode(int k) { return coeffs_[k + K_]; }
  const CVec& mode(int k) const { return coeffs_[k + K_]; }

  CVec value(double t) const {
    CVec z(dim_ + 1, 0.0);
    for (int k = -K_; k <= K_; ++k) {
      const cxd e = std::polar(1.0, k * t);
      axpy(z, e, coeffs_[k + K_]);
    }
    return z;
  }

  CVec derivative(double t) const {
    CVec v(dim_ + 1, 0.0);
    for (int k = -K_; k <= K_; ++k) {
      if (k == 0) continue;
      const cxd e = cxd(0.0, static_cast<double>(k)) * std::polar(1.0, k * t);
      axpy(v, e, coeffs_[k + K_]);
    }
    return v;
  }

  /// Time reversal t -> -t (swaps the +k and -k modes).
  FourierPath reversed() const {
    FourierPath r(dim_, K_);
    for (int k = -K_; k <= K_; ++k) r.mode(k) = mode(-k);
    return r;
  }

 private:
  int dim_;
  int K_;
  std::vector<CVec> coeffs_;
};

struct CurveComponent {
  FourierPath path;
  int multiplicity = 1;
};

struct CurveSample {
  CVec point;     // homogeneous representative gamma(t)
  CVec tangent;   // gamma'(t)
  double t = 0.0;
  int multiplicity = 1;
  int component = 0;
};

/// An oriented closed real-analytic curve in P^n with positive integer
/// multiplicities, one trigonometric-polynomial path per component.
class ParamCurve {
 public:
  ParamCurve(int dim, std::vector<CurveComponent> components)
      : dim_(dim), components_(std::move(components)) {
    for (const auto& c : components_) {
      if (c.path.dimension() != dim_)
        throw ValidationError("curve component dimension mismatch");
      if (c.multiplicity < 1)
        throw ValidationError("curve multiplicity must be a positive integer");
    }
  }

  int dimension() const { return dim_; }
  const std::vector<CurveComponent>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  ParamCurve reversed() const {
    std::vector<CurveComponent> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_)
      comps.push_back({c.path.reversed(), c.multiplicity});
    return ParamCurve(dim_, std::move(comps));
  }

  ParamCurve with_multiplicity_scaled(int factor) const {
    std::vector<CurveComponent> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_)
      comps.push_back({c.path, c.multiplicity * factor});
    return ParamCurve(dim_, std::move(comps));
  }

  double min_norm(int samples = 256) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : components_)
      for (int j = 0; j < samples; ++j)
        best = std::min(best, norm(c.path.value(kTwoPi * j / samples)));
    return best;
  }

 private:
  int dim_;
  std::vector<CurveComponent> components_;
};

/// Equispaced parameter samples with exact derivatives; deterministic.
inline std::vector<CurveSample> sample_curve(const ParamCurve& curve, int m) {
  if (m < 8 && !curve.empty())
    throw ValidationError("sample count must be at least 8");
  std::vector<CurveSample> out;
  out.reserve(curve.components().size() * m);
  int ci = 0;
  for (const auto& c : curve.components()) {
    for (int j = 0; j < m; ++j) {
      const double t = kTwoPi * j / m;
      out.push_back({c.path.value(t), c.path.derivative(t), t, c.multiplicity, ci});
    }
    ++ci;
  }
  return out;
}

struct EmbeddingReport {
  bool ok = true;
  std::string detail;
};

/// Checks, at sampling resolution only, that each component stays away from
/// the origin of C^{n+1}, has no distant-parameter self-contacts, and that
/// distinct components are disjoint.
inline EmbeddingReport validate_embedding(const ParamCurve& curve, int m = 256,
                                          double tol = 1e-8) {
  EmbeddingReport rep;
  const auto& comps = curve.components();
  std::vector<std::vector<CVec>> pts(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    pts[c].reserve(m);
    for (int j = 0; j < m; ++j) {
      CVec z = comps[c].path.value(kTwoPi * j / m);
      if (norm(z) <= tol) {
        rep.ok = false;
        rep.detail = "component " + std::to_string(c) +
                     " passes through the origin of C^{n+1}";
        return rep;
      }
      pts[c].push_back(std::move(z));
    }
  }
  // self-contacts: ignore parameter-adjacent pairs
  const int guard = std::max(2, m / 32);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int i = 0; i < m; ++i)
      for (int j = i + guard; j < m; ++j) {
        const int wrap = std::min(j - i, m - (j - i));
        if (wrap < guard) continue;
        if (fs_distance(pts[c][i], pts[c][j]) < tol) {
          rep.ok = false;
          rep.detail = "component " + std::to_string(c) +
                       " self-intersects at sampling resolution (t=" +
                       std::to_string(kTwoPi * i / m) + ", t=" +
                       std::to_string(kTwoPi * j / m) + ")";
          return rep;
        }
      }
  }
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (std::size_t b = a + 1; b < comps.size(); ++b)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (fs_distance(pts[a][i], pts[b][j]) < tol) {
            rep.ok = false;
            rep.detail = "components " + std::to_string(a) + " and " +
                         std::to_string(b) + " intersect at sampling resolution";
            return rep;
          }
  return rep;
}

/// The standard test curve: t -> (1, r e^{it}, 0, ...) in P^n, the circle of
/// chart radius r inside the line spanned by the first two coordinates.
inline ParamCurve circle_curve(int dim = 2, double radius = 1.0,
                               int multiplicity = 1) {
  FourierPath path(dim, 1);
  path.mode(0)[0] = 1.0;
  path.mode(1)[1] = radius;
  return ParamCurve(dim, {CurveComponent{path, multiplicity}});
}

/// Boundary of the rational-normal-curve piece w -> (1, w, w^2) in P^2.
inline ParamCurve conic_boundary_curve() {
  FourierPath path(2, 2);
  path.mode(0)[0] = 1.0;
  path.mode(1)[1] = 1.0;
  path.mode(2)[2] = 1.0;
  return ParamCurve(2, {CurveComponent{path, 1}});
}

}  // namespace projlink
