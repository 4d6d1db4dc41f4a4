#include <doctest.h>

#include "oracles.hpp"
#include "projlink/invariants.hpp"
#include "projlink/verify.hpp"

using namespace projlink;

namespace {
const ParamCurve kCircle = circle_curve(2, 1.0);
}

TEST_CASE("circle winding oracle: stokes value is intersections minus area") {
  // divisor through the disk: one positive intersection, area 1/2
  InvariantReport in = winding_number(kCircle, line_section(2, 0.0));
  CHECK(in.value == doctest::Approx(1.0 - oracle::disk_area(1.0)).epsilon(1e-9));
  InvariantReport half = winding_number(kCircle, line_section(2, cxd(0.3, 0.3)));
  CHECK(half.value == doctest::Approx(0.5).epsilon(1e-9));
  // divisors missing the closed disk: no intersections, -1/2
  InvariantReport out1 = winding_number(kCircle, section_z(2, 0));
  CHECK(out1.value == doctest::Approx(-0.5).epsilon(1e-9));
  InvariantReport out2 = winding_number(kCircle, line_section(2, 2.0));
  CHECK(out2.value == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("winding is scale-invariant and additive in the section") {
  SplitMix64 rng(3);
  const HomogeneousSection a = random_clear_section(kCircle, 2, rng);
  const HomogeneousSection b = random_clear_section(kCircle, 1, rng);
  const double wa = winding_number(kCircle, a).value;
  const double wb = winding_number(kCircle, b).value;
  CHECK(winding_number(kCircle, a.scaled_by(cxd(0, -42))).value ==
        doctest::Approx(wa).epsilon(1e-12));
  CHECK(winding_number(kCircle, multiply(a, b)).value ==
        doctest::Approx(wa + wb).epsilon(1e-9));
}

TEST_CASE("a divisor through the curve is refused") {
  // z_2 vanishes identically on the circle inside the first-line plane
  CHECK_THROWS_AS(winding_number(kCircle, section_z(2, 2)), NumericalError);
  try {
    winding_number(kCircle, section_z(2, 2));
  } catch (const NumericalError& e) {
    CHECK(e.kind() == ErrorKind::ZeroOnCurve);
  }
}

TEST_CASE("intersection counts on the flat disk") {
  // the cone from (1,0,0) over the circle is the flat unit disk
  const ParamChain2 disk = cone_chain(kCircle, CVec{1.0, 0.0, 0.0});
  InvariantOptions opts;

  IntersectionResult one =
      intersection_count(disk, Divisor{line_section(2, 0.5)}, opts);
  CHECK(one.total == 1);
  REQUIRE(one.records.size() == 1);
  CHECK(one.records[0].s == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(one.records[0].sign == 1);

  // the reversed circle cones to the same disk with opposite orientation
  const ParamChain2 rdisk = cone_chain(kCircle.reversed(), CVec{1.0, 0.0, 0.0});
  IntersectionResult neg =
      intersection_count(rdisk, Divisor{line_section(2, 0.5)}, opts);
  CHECK(neg.total == -1);

  IntersectionResult zero =
      intersection_count(disk, Divisor{line_section(2, 2.0)}, opts);
  CHECK(zero.total == 0);
  CHECK(zero.records.empty());

  // divisor through the cone apex collapses the inner edge: rejected
  CHECK_THROWS_AS(
      intersection_count(disk, Divisor{power(section_z(2, 1), 2)}, opts),
      NumericalError);
}

TEST_CASE("projective linking matches its defining combination") {
  const ParamChain2 disk = cone_chain(kCircle, CVec{1.0, 0.0, 0.0});
  InvariantReport rep =
      projective_linking(kCircle, Divisor{line_section(2, 0.5)}, &disk);
  CHECK(rep.value == doctest::Approx(0.5).epsilon(1e-8));
  InvariantReport rep2 =
      projective_linking(kCircle, Divisor{line_section(2, 2.0)}, &disk);
  CHECK(rep2.value == doctest::Approx(-0.5).epsilon(1e-8));

  // winding = linking on random pairs (the full 50-pair run lives in the
  // acceptance suite)
  for (int i = 0; i < 8; ++i) {
    SplitMix64 rng(mix_seed(2029, i));
    const ParamCurve curve = random_fourier_curve(2, rng);
    const int d = 1 + static_cast<int>(rng.next() % 3);
    const HomogeneousSection sigma = random_clear_section(curve, d, rng);
    const double wind = winding_number(curve, sigma).value;
    const double link =
        projective_linking(curve, Divisor{sigma}, nullptr).value;
    CHECK(wind == doctest::Approx(link).epsilon(1e-6));
  }
}

TEST_CASE("linking is independent of the cone apex") {
  for (int i = 0; i < 4; ++i) {
    SplitMix64 rng(mix_seed(404, i));
    const ParamCurve curve = random_fourier_curve(2, rng);
    const HomogeneousSection sigma = random_clear_section(curve, 2, rng);
    InvariantOptions a, b;
    a.apex_seed = 1000 + i;
    b.apex_seed = 9000 + i;
    const double va = projective_linking(curve, Divisor{sigma}, nullptr, a).value;
    const double vb = projective_linking(curve, Divisor{sigma}, nullptr, b).value;
    CHECK(va == doctest::Approx(vb).epsilon(1e-6));
  }
}

TEST_CASE("orientation reversal negates, multiplicity scales") {
  SplitMix64 rng(5150);
  const ParamCurve curve = random_fourier_curve(2, rng);
  const HomogeneousSection sigma = random_clear_section(curve, 2, rng);
  const double w = winding_number(curve, sigma).value;
  CHECK(winding_number(curve.reversed(), sigma).value ==
        doctest::Approx(-w).epsilon(1e-10));
  CHECK(winding_number(curve.with_multiplicity_scaled(3), sigma).value ==
        doctest::Approx(3.0 * w).epsilon(1e-10));
  const double link = projective_linking(curve, Divisor{sigma}).value;
  CHECK(projective_linking(curve.with_multiplicity_scaled(2), Divisor{sigma})
            .value == doctest::Approx(2.0 * link).epsilon(1e-6));
}

TEST_CASE("reduced invariants divide by the degree") {
  // degree-1 values are unchanged
  CHECK(reduced_winding(kCircle, section_z(2, 0)).value ==
        doctest::Approx(-0.5).epsilon(1e-9));
  // powers leave the reduced winding fixed
  SplitMix64 rng(61);
  const HomogeneousSection sigma = random_clear_section(kCircle, 1, rng);
  const double rw = reduced_winding(kCircle, sigma).value;
  CHECK(reduced_winding(kCircle, power(sigma, 3)).value ==
        doctest::Approx(rw).epsilon(1e-10));
  // squared missing line against the circle: (0 - 2 * 1/2) / 2
  CHECK(reduced_winding(kCircle, power(section_z(2, 0), 2)).value ==
        doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("affine linking is the argument-principle integer") {
  CHECK(affine_linking(kCircle, line_section(2, 0.25)) == 1);
  CHECK(affine_linking(kCircle, line_section(2, cxd(1.5, 1.0))) == 0);
  // degree-2 divisor with both roots inside: winding 2
  const HomogeneousSection two_roots =
      multiply(line_section(2, 0.25), line_section(2, cxd(-0.3, 0.2)));
  CHECK(affine_linking(kCircle, two_roots) == 2);
  // curve through the chart hyperplane is refused
  FourierPath thru(1, 1);
  thru.mode(0) = {0.5, 0.0};
  thru.mode(1) = {0.5, 1.0};
  ParamCurve bad(1, {CurveComponent{thru, 1}});
  CHECK_THROWS_AS(affine_linking(bad, section_z(1, 1)), NumericalError);
}

TEST_CASE("chain masses: disk, line, multiplicity, conic") {
  HoloChain disk{{disk_in_line_piece(1.0, 2, 1)}, 2};
  CHECK(chain_mass(disk).value ==
        doctest::Approx(oracle::disk_area(1.0)).epsilon(1e-8));

  HoloChain line{full_line_pieces(2, 1), 2};
  CHECK(chain_mass(line).value == doctest::Approx(1.0).epsilon(1e-8));

  HoloChain disk3{{disk_in_line_piece(1.0, 2, 3)}, 2};
  CHECK(chain_mass(disk3).value ==
        doctest::Approx(3.0 * oracle::disk_area(1.0)).epsilon(1e-8));

  HoloChain conic{{conic_piece()}, 2};
  CHECK(chain_mass(conic).value ==
        doctest::Approx(oracle::conic_piece_mass()).epsilon(1e-7));

  // r-disks match the radial closed form
  for (double r : {0.5, 2.0}) {
    HoloChain rdisk{{disk_in_line_piece(r, 2, 1)}, 2};
    CHECK(chain_mass(rdisk).value ==
          doctest::Approx(oracle::disk_area(r)).epsilon(1e-8));
  }
}

TEST_CASE("holomorphic intersection counts via polynomial roots") {
  HoloChain disk{{disk_in_line_piece(1.0, 2, 1)}, 2};
  CHECK(intersection_count(disk, Divisor{line_section(2, 0.5)}).total == 1);
  CHECK(intersection_count(disk, Divisor{line_section(2, 2.0)}).total == 0);
  CHECK(intersection_count(disk, Divisor{section_z(2, 0)}).total == 0);

  HoloChain line{full_line_pieces(2, 1), 2};
  // the hyperplane z_0 = 0 meets the line once, at (0, 1, 0)
  CHECK(intersection_count(line, Divisor{section_z(2, 0)}).total == 1);

  // degree-2 divisor against the conic piece: roots inside the disk
  HoloChain conic{{conic_piece()}, 2};
  const HomogeneousSection quad =
      multiply(line_section(2, 0.5), line_section(2, cxd(0.0, -0.4)));
  CHECK(intersection_count(conic, Divisor{quad}).total == 2);

  // boundary clearance enforced
  CHECK_THROWS_AS(intersection_count(disk, Divisor{line_section(2, 1.0)}),
                  NumericalError);
}

TEST_CASE("necessity: reduced windings respect the chain-mass bound") {
  HoloChain disk{{disk_in_line_piece(1.0, 2, 1)}, 2};
  NecessityReport rep = necessity_check(kCircle, disk, 100, 4, 777, 1e-5);
  CHECK(rep.ok);
  CHECK(rep.mass == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(rep.min_reduced_winding >= rep.bound - 1e-5);
  // the missing-line section attains the bound
  CHECK(reduced_winding(kCircle, section_z(2, 0)).value ==
        doctest::Approx(rep.bound).epsilon(1e-3));
  // padding the chain with a full line weakens the bound by 1
  HoloChain padded = disk;
  for (auto& p : full_line_pieces(2, 1)) padded.pieces.push_back(p);
  NecessityReport rep2 = necessity_check(kCircle, padded, 50, 4, 777, 1e-5);
  CHECK(rep2.ok);
  CHECK(rep2.min_reduced_winding - rep2.bound >= 0.9);
}

TEST_CASE("uniqueness criterion distinguishes minimal from padded chains") {
  HoloChain disk{{disk_in_line_piece(1.0, 2, 1)}, 2};
  HoloChain padded = disk;
  for (auto& p : full_line_pieces(2, 1)) padded.pieces.push_back(p);

  std::vector<HomogeneousSection> ensemble{section_z(2, 0)};
  SplitMix64 rng(808);
  for (int i = 0; i < 8; ++i)
    ensemble.push_back(random_clear_section(kCircle, 1 + (i % 3), rng));

  UniquenessReport bare = uniqueness_criterion(disk, ensemble);
  CHECK(bare.min_ratio == 0.0);
  CHECK(bare.conclusive);

  UniquenessReport pad = uniqueness_criterion(padded, ensemble);
  CHECK(pad.min_ratio >= 1.0 - 1e-6);
  CHECK_FALSE(pad.conclusive);

  // an ensemble of lines through the disk certifies nothing
  std::vector<HomogeneousSection> through{line_section(2, 0.1),
                                          line_section(2, cxd(0.0, 0.2))};
  UniquenessReport weak = uniqueness_criterion(disk, through);
  CHECK(weak.min_ratio > 0.0);
  CHECK_FALSE(weak.conclusive);
}

TEST_CASE("quadrature reports certify their error a posteriori") {
  SplitMix64 rng(99);
  const ParamCurve curve = random_fourier_curve(2, rng);
  const HomogeneousSection sigma = random_clear_section(curve, 2, rng);
  InvariantReport rep = winding_number(curve, sigma);
  CHECK(rep.converged);
  const double refined = winding_fixed(curve, sigma, 2 * rep.curve_panels);
  CHECK(std::abs(refined - rep.value) <= std::max(rep.estimated_error, 1e-12));
}

TEST_CASE("tangential intersections are flagged as non-transversal") {
  // the squared line through w = 1/2 meets the flat disk in a double point
  const ParamChain2 disk = cone_chain(kCircle, CVec{1.0, 0.0, 0.0});
  const HomogeneousSection tangent = power(line_section(2, 0.5), 2);
  CHECK_THROWS_AS(intersection_count(disk, Divisor{tangent}, {}),
                  NumericalError);
  try {
    intersection_count(disk, Divisor{tangent}, {});
  } catch (const NumericalError& e) {
    CHECK(e.kind() == ErrorKind::NonTransversal);
  }
}
