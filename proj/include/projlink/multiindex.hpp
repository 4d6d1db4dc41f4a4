#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "projlink/core.hpp"

namespace projlink {

/// Number of monomials of degree d in n+1 variables: C(n+d, d).
inline std::size_t monomial_count(int n, int d) {
  // C(n+d, n) computed incrementally to stay in integer range.
  std::uint64_t r = 1;
  for (int i = 1; i <= n; ++i) r = r * (d + i) / i;
  return static_cast<std::size_t>(r);
}

/// Exponent table for the homogeneous monomials of degree d in variables
/// z_0..z_n, in descending lexicographic order of the exponent vector:
/// index 0 is z_0^d, the last index is z_n^d. This order is the file-format
/// contract for section coefficient lists.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d) : n_(n), d_(d) {
    std::vector<int> alpha(n + 1, 0);
    build(alpha, 0, d);
  }

  int dimension() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<int>& exponent(std::size_t i) const { return exps_[i]; }
  const std::vector<std::vector<int>>& exponents() const { return exps_; }

  /// Rank of an exponent vector in this basis; size() if not present.
  std::size_t index_of(const std::vector<int>& alpha) const {
    auto it = std::lower_bound(
        exps_.begin(), exps_.end(), alpha,
        [](const std::vector<int>& a, const std::vector<int>& b) {
          return std::lexicographical_compare(b.begin(), b.end(), a.begin(),
                                              a.end());
        });
    if (it != exps_.end() && *it == alpha) return it - exps_.begin();
    return exps_.size();
  }

 private:
  void build(std::vector<int>& alpha, int var, int rem) {
    if (var == n_) {
      alpha[var] = rem;
      exps_.push_back(alpha);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      alpha[var] = e;
      build(alpha, var + 1, rem - e);
    }
    alpha[var] = 0;
  }

  int n_;
  int d_;
  std::vector<std::vector<int>> exps_;
};

}  // namespace projlink
