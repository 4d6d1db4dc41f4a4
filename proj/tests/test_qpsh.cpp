#include <doctest.h>

#include "projlink/qpsh.hpp"
#include "projlink/verify.hpp"

using namespace projlink;

TEST_CASE("section logarithms have vanishing curvature defect off the divisor") {
  SplitMix64 rng(2718);
  int tested = 0;
  while (tested < 200) {
    const int d = 1 + static_cast<int>(rng.next() % 4);
    HomogeneousSection s = random_section(2, d, rng);
    CVec z = rng.cgauss_vec(3);
    const double nz = norm(z);
    for (auto& x : z) x /= nz;
    auto [val, grad] = s.evaluate_with_gradient(z);
    if (std::abs(val) / std::max(norm(grad), 1e-12) < 0.15) continue;
    ++tested;
    const double defect = qpsh_defect(QPSHFunction::section_log(s), ProjPoint(z));
    CHECK(defect >= -1e-5);
    CHECK(defect <= 1e-3);  // exact value is zero; FD truncation only
  }
}

TEST_CASE("u = 0 leaves exactly the chart form of omega") {
  const CVec w{cxd(0.3, 0.0), cxd(0.0, 0.0)};
  const double got =
      qpsh_defect_of_chart_function([](const CVec&) { return 0.0; }, w);
  // eigenvalues of the chart Hessian of (1/2) log(1+|w|^2): the radial one
  // is (1/2)/Q^2, the transverse one (1/2)/Q, with Q = 1 + |w|^2
  const double Q = 1.09;
  CHECK(got == doctest::Approx(0.5 / (Q * Q)).epsilon(1e-6));
  CHECK(got > 0.0);
}

TEST_CASE("a doubled section logarithm violates admissibility") {
  // u = -log(1 + ||w||^2) in the chart, i.e. twice the logarithm of the
  // hyperplane section's FS norm: curvature form is -omega, defect < 0
  auto u = [](const CVec& w) { return -std::log(1.0 + norm2(w)); };
  const double at0 = qpsh_defect_of_chart_function(u, CVec{cxd(0, 0), cxd(0, 0)});
  CHECK(at0 < -0.3);
  const double off = qpsh_defect_of_chart_function(u, CVec{cxd(0.4, 0.1), cxd(0, 0.2)});
  CHECK(off < -0.05);
}

TEST_CASE("points on the singular locus are refused") {
  const HomogeneousSection z1 = section_z(2, 1);
  CHECK_THROWS_AS(
      qpsh_defect(QPSHFunction::section_log(z1), ProjPoint(CVec{1.0, 0.0, 0.0})),
      NumericalError);
}

TEST_CASE("max of section logarithms stays admissible") {
  SplitMix64 rng(31415);
  const QPSHFunction u = QPSHFunction::max_of(
      {{random_section(2, 2, rng), 0.1}, {random_section(2, 1, rng), -0.2}});
  int tested = 0;
  while (tested < 40) {
    CVec z = rng.cgauss_vec(3);
    try {
      const double defect = qpsh_defect(u, ProjPoint(z));
      CHECK(defect >= -1e-4);
      ++tested;
    } catch (const NumericalError&) {
      // singular-locus draw, try another point
    }
  }
}

TEST_CASE("finite-difference d^C agrees with the exact pullback") {
  SplitMix64 rng(999);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + static_cast<int>(rng.next() % 3);
    HomogeneousSection s = random_section(2, d, rng);
    const CVec z = rng.cgauss_vec(3);
    const CVec v = rng.cgauss_vec(3);
    if (fs_norm(s, z) < 5e-2) continue;
    const double exact = dc_log_norm_pullback(s, {z, v}) / d;
    const double fd = dc_pullback_fd(QPSHFunction::section_log(s), z, v);
    CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
  }
}
