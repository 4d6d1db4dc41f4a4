#include <doctest.h>

#include <cstdlib>

#include "projlink/multiindex.hpp"
#include "projlink/quadrature.hpp"
#include "projlink/rng.hpp"

using namespace projlink;

TEST_CASE("splitmix streams are deterministic and decorrelated") {
  SplitMix64 a(42), b(42), c(43);
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
  CHECK(mix_seed(1, 2, 3) == mix_seed(1, 2, 3));
}

TEST_CASE("normal samples have sane moments") {
  SplitMix64 rng(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sum2 / n - 1.0) < 0.05);
}

TEST_CASE("parallel_for result is independent of thread count") {
  std::vector<double> serial(257), parallel(257);
  for (std::size_t i = 0; i < serial.size(); ++i)
    serial[i] = std::sqrt(static_cast<double>(i * i + 1));
  setenv("PROJLINK_THREADS", "5", 1);
  parallel_for(parallel.size(), [&](std::size_t i) {
    parallel[i] = std::sqrt(static_cast<double>(i * i + 1));
  });
  setenv("PROJLINK_THREADS", "1", 1);
  CHECK(serial == parallel);
}

TEST_CASE("monomial basis enumerates descending-lex of the right size") {
  MonomialBasis b(2, 2);
  CHECK(b.size() == monomial_count(2, 2));
  CHECK(b.size() == 6);
  CHECK(b.exponent(0) == std::vector<int>{2, 0, 0});
  CHECK(b.exponent(1) == std::vector<int>{1, 1, 0});
  CHECK(b.exponent(2) == std::vector<int>{1, 0, 1});
  CHECK(b.exponent(3) == std::vector<int>{0, 2, 0});
  CHECK(b.exponent(4) == std::vector<int>{0, 1, 1});
  CHECK(b.exponent(5) == std::vector<int>{0, 0, 2});
  for (std::size_t i = 0; i < b.size(); ++i)
    CHECK(b.index_of(b.exponent(i)) == i);
  CHECK(monomial_count(3, 4) == 35);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(3, x, w);
  double wsum = 0.0, cubic = 0.0;
  for (int i = 0; i < 3; ++i) {
    wsum += w[i];
    cubic += w[i] * x[i] * x[i] * x[i];
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cubic == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("periodic trapezoid is spectrally accurate") {
  // independent oracle: integral of e^{cos t} over a period is 2 pi I_0(1)
  const double expected = kTwoPi * std::cyl_bessel_i(0.0, 1.0);
  QuadResult q =
      periodic_trapezoid([](double t) { return std::exp(std::cos(t)); }, 1e-13);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("product quadrature integrates a separable density") {
  // s^3 (2 + cos t)/2 over [0,1] x [0,2pi) integrates to pi/2
  QuadResult q = product_quadrature(
      [](double s, double t) { return s * s * s * (2.0 + std::cos(t)) / 2.0; },
      0.0, 1.0, 1e-12);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(kTwoPi / 4.0).epsilon(1e-11));
}
