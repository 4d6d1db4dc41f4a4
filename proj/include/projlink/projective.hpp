#pragma once

#include <utility>

#include "projlink/core.hpp"

namespace projlink {

/// A point of P^n held as a nonzero homogeneous representative. Points are
/// equal iff their representatives are complex-proportional.
class ProjPoint {
 public:
  explicit ProjPoint(CVec z, bool normalize = false) : z_(std::move(z)) {
    double n2 = norm2(z_);
    if (!(n2 > 0.0))
      throw ValidationError("projective point must have a nonzero representative");
    if (normalize) {
      double s = std::sqrt(n2);
      for (auto& x : z_) x /= s;
      normalized_ = true;
    }
  }

  const CVec& homogeneous() const { return z_; }
  bool normalized() const { return normalized_; }
  int dimension() const { return static_cast<int>(z_.size()) - 1; }

  ProjPoint normalized_point() const { return ProjPoint(z_, true); }

  /// Index of the largest homogeneous coordinate; the affine chart in which
  /// this point is best conditioned.
  int chart() const {
    int best = 0;
    double mag = std::abs(z_[0]);
    for (std::size_t i = 1; i < z_.size(); ++i)
      if (std::abs(z_[i]) > mag) {
        mag = std::abs(z_[i]);
        best = static_cast<int>(i);
      }
    return best;
  }

 private:
  CVec z_;
  bool normalized_ = false;
};

/// Chordal Fubini-Study distance: sin of the angle between the lines,
/// in [0, 1]. Vanishes iff the points coincide in P^n. Computed as the
/// norm of the projection residual, which stays accurate near zero where
/// the 1 - |<a,b>|^2 form cancels catastrophically.
inline double fs_distance(const CVec& a, const CVec& b) {
  const double na = norm(a), nb = norm(b);
  const cxd c = inner(a, b) / (na * nb);
  double r2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    r2 += std::norm(a[j] / na - c * b[j] / nb);
  return std::min(1.0, std::sqrt(r2));
}

inline double fs_distance(const ProjPoint& a, const ProjPoint& b) {
  return fs_distance(a.homogeneous(), b.homogeneous());
}

inline bool proj_equal(const ProjPoint& a, const ProjPoint& b,
                       double tol = 1e-12) {
  return fs_distance(a, b) <= tol;
}

/// Velocity of a homogeneous-coordinate path through `base`. Pairings with
/// the pulled-back forms are invariant under (z, v) -> (cz, cv) and under
/// v -> v + lambda z, so this represents a tangent vector of P^n.
struct TangentVector {
  CVec base;
  CVec vector;
};

/// Affine coordinates in chart k (the k-th coordinate set to 1, dropped).
inline CVec to_chart(const CVec& z, int k) {
  CVec w(z.size() - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (static_cast<int>(i) == k) continue;
    w[j++] = z[i] / z[k];
  }
  return w;
}

inline CVec from_chart(const CVec& w, int k) {
  CVec z(w.size() + 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (static_cast<int>(i) == k) {
      z[i] = 1.0;
    } else {
      z[i] = w[j++];
    }
  }
  return z;
}

/// Chart velocity of a homogeneous path: d/dt (z_i/z_k) via the quotient rule.
inline CVec chart_velocity(const CVec& z, const CVec& v, int k) {
  CVec w(z.size() - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (static_cast<int>(i) == k) continue;
    w[j++] = (v[i] * z[k] - z[i] * v[k]) / (z[k] * z[k]);
  }
  return w;
}

}  // namespace projlink
