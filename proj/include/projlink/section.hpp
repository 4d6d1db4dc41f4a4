#pragma once

#include <memory>
#include <utility>

#include "projlink/core.hpp"
#include "projlink/multiindex.hpp"
#include "projlink/rng.hpp"

namespace projlink {

/// A degree-d homogeneous polynomial in n+1 complex variables, i.e. a global
/// section of O(d) on P^n in the monomial coefficient basis (descending-lex
/// exponent order, see MonomialBasis).
class HomogeneousSection {
 public:
  HomogeneousSection(int n, int d, CVec coeffs)
      : basis_(std::make_shared<MonomialBasis>(n, d)),
        coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_->size())
      throw ValidationError("section coefficient count mismatch: expected " +
                            std::to_string(basis_->size()) + ", got " +
                            std::to_string(coeffs_.size()));
    if (norm2(coeffs_) == 0.0)
      throw ValidationError("section coefficients are identically zero");
  }

  int dimension() const { return basis_->dimension(); }
  int degree() const { return basis_->degree(); }
  const MonomialBasis& basis() const { return *basis_; }
  const CVec& coefficients() const { return coeffs_; }

  /// Powers table z_i^k for k <= d, shared by evaluation and gradient.
  using PowerTable = std::vector<CVec>;

  PowerTable power_table(const CVec& z) const {
    const int d = degree();
    PowerTable pw(z.size(), CVec(d + 1));
    for (std::size_t i = 0; i < z.size(); ++i) {
      pw[i][0] = 1.0;
      for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * z[i];
    }
    return pw;
  }

  cxd evaluate(const CVec& z) const {
    require_dim(z);
    PowerTable pw = power_table(z);
    return evaluate(pw);
  }

  cxd evaluate(const PowerTable& pw) const {
    cxd acc = 0.0;
    const auto& exps = basis_->exponents();
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (coeffs_[i] == 0.0) continue;
      cxd mono = coeffs_[i];
      for (std::size_t v = 0; v < exps[i].size(); ++v)
        if (exps[i][v] > 0) mono *= pw[v][exps[i][v]];
      acc += mono;
    }
    return acc;
  }

  /// Gradient with respect to z, from the same powers table.
  CVec gradient(const CVec& z) const {
    require_dim(z);
    PowerTable pw = power_table(z);
    CVec g(z.size(), 0.0);
    const auto& exps = basis_->exponents();
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (coeffs_[i] == 0.0) continue;
      const auto& a = exps[i];
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        cxd term = coeffs_[i] * static_cast<double>(a[j]) * pw[j][a[j] - 1];
        for (std::size_t v = 0; v < a.size(); ++v)
          if (v != j && a[v] > 0) term *= pw[v][a[v]];
        g[j] += term;
      }
    }
    return g;
  }

  /// Value and gradient in one pass over the monomial table.
  std::pair<cxd, CVec> evaluate_with_gradient(const CVec& z) const {
    require_dim(z);
    PowerTable pw = power_table(z);
    cxd val = 0.0;
    CVec g(z.size(), 0.0);
    const auto& exps = basis_->exponents();
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (coeffs_[i] == 0.0) continue;
      const auto& a = exps[i];
      cxd mono = coeffs_[i];
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] > 0) mono *= pw[v][a[v]];
      val += mono;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        // mono / z_j * a_j, rebuilt from the table to stay safe at z_j = 0.
        cxd term = coeffs_[i] * static_cast<double>(a[j]) * pw[j][a[j] - 1];
        for (std::size_t v = 0; v < a.size(); ++v)
          if (v != j && a[v] > 0) term *= pw[v][a[v]];
        g[j] += term;
      }
    }
    return {val, g};
  }

  HomogeneousSection normalized() const {
    double s = norm(coeffs_);
    CVec c = coeffs_;
    for (auto& x : c) x /= s;
    return HomogeneousSection(dimension(), degree(), std::move(c));
  }

  HomogeneousSection scaled_by(cxd c) const {
    CVec out = coeffs_;
    for (auto& x : out) x *= c;
    return HomogeneousSection(dimension(), degree(), std::move(out));
  }

 private:
  void require_dim(const CVec& z) const {
    if (static_cast<int>(z.size()) != dimension() + 1)
      throw NumericalError(ErrorKind::DimensionMismatch,
                           "point has " + std::to_string(z.size()) +
                               " homogeneous coordinates, section expects " +
                               std::to_string(dimension() + 1));
  }

  std::shared_ptr<MonomialBasis> basis_;
  CVec coeffs_;
};

/// Product of sections (degrees add); coefficient convolution over exponents.
inline HomogeneousSection multiply(const HomogeneousSection& a,
                                   const HomogeneousSection& b) {
  if (a.dimension() != b.dimension())
    throw NumericalError(ErrorKind::DimensionMismatch,
                         "section product across different P^n");
  const int n = a.dimension();
  MonomialBasis out_basis(n, a.degree() + b.degree());
  CVec out(out_basis.size(), 0.0);
  const auto& ea = a.basis().exponents();
  const auto& eb = b.basis().exponents();
  std::vector<int> sum(n + 1);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (a.coefficients()[i] == 0.0) continue;
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (b.coefficients()[j] == 0.0) continue;
      for (int v = 0; v <= n; ++v) sum[v] = ea[i][v] + eb[j][v];
      out[out_basis.index_of(sum)] += a.coefficients()[i] * b.coefficients()[j];
    }
  }
  return HomogeneousSection(n, a.degree() + b.degree(), std::move(out));
}

inline HomogeneousSection power(const HomogeneousSection& a, int k) {
  HomogeneousSection r = a;
  for (int i = 1; i < k; ++i) r = multiply(r, a);
  return r;
}

/// sigma(z) = (sum_i conj(x_i) z_i)^d. Its Fubini-Study norm peaks exactly
/// at [x], which makes it the canonical informed start for sup-ratio
/// optimizers.
inline HomogeneousSection coherent_section(const CVec& x, int d) {
  const int n = static_cast<int>(x.size()) - 1;
  MonomialBasis basis(n, d);
  CVec c(basis.size());
  double nx = norm(x);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& a = basis.exponent(i);
    double multinom = 1.0;
    int used = 0;
    for (int v = 0; v <= n; ++v) {
      for (int k = 1; k <= a[v]; ++k) {
        ++used;
        multinom *= static_cast<double>(used) / k;
      }
    }
    cxd mono = multinom;
    for (int v = 0; v <= n; ++v)
      for (int k = 0; k < a[v]; ++k) mono *= std::conj(x[v]) / nx;
    c[i] = mono;
  }
  return HomogeneousSection(n, d, std::move(c));
}

enum class CoefficientWeight { Gaussian, Bombieri };

/// Random section with iid complex Gaussian coefficients; the Bombieri flag
/// scales variances by multinomial weights, which makes the ensemble
/// invariant under unitary coordinate changes.
inline HomogeneousSection random_section(int n, int d, SplitMix64& rng,
                                         CoefficientWeight w = CoefficientWeight::Gaussian) {
  MonomialBasis basis(n, d);
  CVec c(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c[i] = rng.cgauss();
    if (w == CoefficientWeight::Bombieri) {
      const auto& a = basis.exponent(i);
      double multinom = 1.0;
      int used = 0;
      for (int v = 0; v <= n; ++v)
        for (int k = 1; k <= a[v]; ++k) {
          ++used;
          multinom *= static_cast<double>(used) / k;
        }
      c[i] *= std::sqrt(multinom);
    }
  }
  return HomogeneousSection(n, d, std::move(c)).normalized();
}

}  // namespace projlink
