#include <doctest.h>

#include "projlink/rng.hpp"
#include "projlink/section.hpp"

using namespace projlink;

namespace {

HomogeneousSection make(int n, int d, std::vector<std::pair<std::vector<int>, cxd>> terms) {
  MonomialBasis b(n, d);
  CVec c(b.size(), 0.0);
  for (auto& [e, v] : terms) c[b.index_of(e)] = v;
  return HomogeneousSection(n, d, std::move(c));
}

}  // namespace

TEST_CASE("monomial evaluation matches hand values") {
  // sigma = z_1 on P^1
  auto z1 = make(1, 1, {{{0, 1}, 1.0}});
  CHECK(z1.evaluate({1.0, cxd(2.0, 1.0)}) == cxd(2.0, 1.0));

  // sigma = z_0 z_1, homogeneity sigma(cz) = c^2 sigma(z)
  auto z0z1 = make(1, 2, {{{1, 1}, 1.0}});
  const cxd c(0.3, -1.2);
  const CVec z{1.0, 1.0};
  CHECK(std::abs(z0z1.evaluate({c, c})) > 0.0);
  CHECK(std::abs(z0z1.evaluate({c, c}) - c * c * z0z1.evaluate(z)) < 1e-15);

  // sigma = z_0^2 - z_1^2 vanishes at (1, 1)
  auto diff = make(1, 2, {{{2, 0}, 1.0}, {{0, 2}, -1.0}});
  CHECK(std::abs(diff.evaluate({1.0, 1.0})) == 0.0);
}

TEST_CASE("homogeneity holds to 1e-12 relative over random draws") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 3);
    const int d = 1 + static_cast<int>(rng.next() % 4);
    HomogeneousSection s = random_section(n, d, rng);
    CVec z = rng.cgauss_vec(n + 1);
    const cxd c = rng.cgauss();
    cxd cd = 1.0;
    for (int k = 0; k < d; ++k) cd *= c;
    CVec cz = z;
    for (auto& x : cz) x *= c;
    const cxd lhs = s.evaluate(cz);
    const cxd rhs = cd * s.evaluate(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs) + 1e-300);
  }
}

TEST_CASE("gradient agrees with finite differences") {
  SplitMix64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 2);
    const int d = 1 + static_cast<int>(rng.next() % 3);
    HomogeneousSection s = random_section(n, d, rng);
    const CVec z = rng.cgauss_vec(n + 1);
    auto [val, grad] = s.evaluate_with_gradient(z);
    CHECK(std::abs(val - s.evaluate(z)) < 1e-14);
    const double h = 1e-6;
    for (int j = 0; j <= n; ++j) {
      CVec zp = z, zm = z;
      zp[j] += h;
      zm[j] -= h;
      const cxd fd = (s.evaluate(zp) - s.evaluate(zm)) / (2.0 * h);
      CHECK(std::abs(fd - grad[j]) < 1e-7 * std::max(1.0, std::abs(grad[j])));
    }
  }
}

TEST_CASE("products convolve coefficients and powers stack degrees") {
  auto z0 = make(1, 1, {{{1, 0}, 1.0}});
  auto z1 = make(1, 1, {{{0, 1}, 1.0}});
  auto prod = multiply(z0, z1);
  CHECK(prod.degree() == 2);
  CHECK(prod.evaluate({cxd(2, 0), cxd(0, 3)}) == cxd(0, 6));
  auto cube = power(z1, 3);
  CHECK(cube.degree() == 3);
  CHECK(cube.evaluate({1.0, cxd(0, 1)}) == cxd(0, -1));
}

TEST_CASE("coherent section peaks at its point") {
  SplitMix64 rng(77);
  const CVec x = rng.cgauss_vec(3);
  HomogeneousSection s = coherent_section(x, 3);
  const double at_x = std::abs(s.evaluate(x)) / std::pow(norm(x), 3.0);
  for (int k = 0; k < 50; ++k) {
    const CVec y = rng.cgauss_vec(3);
    const double at_y = std::abs(s.evaluate(y)) / std::pow(norm(y), 3.0);
    CHECK(at_y <= at_x * (1.0 + 1e-12));
  }
}

TEST_CASE("constructor and evaluation reject bad input") {
  CHECK_THROWS_AS(HomogeneousSection(2, 1, CVec{0.0, 0.0, 0.0}),
                  ValidationError);
  CHECK_THROWS_AS(HomogeneousSection(2, 1, CVec{1.0, 0.0}), ValidationError);
  auto z1 = make(1, 1, {{{0, 1}, 1.0}});
  CHECK_THROWS_AS(z1.evaluate({1.0, 2.0, 3.0}), NumericalError);
}

TEST_CASE("bombieri-weighted ensemble draws valid unit sections") {
  SplitMix64 a(5), b(5);
  const HomogeneousSection g = random_section(2, 3, a, CoefficientWeight::Gaussian);
  const HomogeneousSection k = random_section(2, 3, b, CoefficientWeight::Bombieri);
  CHECK(norm(g.coefficients()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(k.coefficients()) == doctest::Approx(1.0).epsilon(1e-12));
  // same stream, different weights: the draws must differ
  double diff = 0.0;
  for (std::size_t i = 0; i < g.coefficients().size(); ++i)
    diff += std::abs(g.coefficients()[i] - k.coefficients()[i]);
  CHECK(diff > 1e-6);
}
