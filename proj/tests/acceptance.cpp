// Acceptance suite: one pass/fail line per criterion, pinned tolerances.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>

#include "oracles.hpp"
#include "projlink/criterion.hpp"
#include "projlink/hull.hpp"
#include "projlink/invariants.hpp"
#include "projlink/qpsh.hpp"
#include "projlink/verify.hpp"

using namespace projlink;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("%-4s criterion %2d: %-38s %s [%.2fs]\n", pass ? "PASS" : "FAIL",
              index, name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  const ParamCurve circle = circle_curve(2, 1.0);
  const InvariantOptions inv;

  // 1. circle winding oracle, through-disk +1/2 and missing-disk -1/2,
  //    each within 1e-6, in under a second
  {
    Timer t;
    const double win_in = winding_number(circle, section_z(2, 1), inv).value;
    const double win_out = winding_number(circle, section_z(2, 0), inv).value;
    const double elapsed = t.seconds();
    const bool pass = std::abs(win_in - 0.5) <= 1e-6 &&
                      std::abs(win_out + 0.5) <= 1e-6 && elapsed < 1.0;
    report(1, "circle winding oracle", pass,
           "in=" + num(win_in) + " out=" + num(win_out), elapsed);
  }

  // 2. winding equals linking on 50 random pairs, 1e-5, under 60 s
  {
    Timer t;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      SplitMix64 rng(mix_seed(20240915, 0x70726f70ULL, i));
      const ParamCurve curve = random_fourier_curve(2, rng);
      const int d = 1 + static_cast<int>(rng.next() % 3);
      const HomogeneousSection sigma = random_clear_section(curve, d, rng);
      const double wind = winding_number(curve, sigma, inv).value;
      InvariantOptions io2 = inv;
      io2.apex_seed = mix_seed(20240915, 0x61706c6bULL, i);
      const double link =
          projective_linking(curve, Divisor{sigma}, nullptr, io2).value;
      worst = std::max(worst, std::abs(wind - link));
    }
    const double elapsed = t.seconds();
    report(2, "winding = linking, 50 random pairs",
           worst <= 1e-5 && elapsed < 60.0, "max|diff|=" + num(worst), elapsed);
  }

  // 3. cobounding-chain independence: two apexes agree to 1e-6, 20 instances
  {
    Timer t;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      SplitMix64 rng(mix_seed(33, i));
      const ParamCurve curve = random_fourier_curve(2, rng);
      const HomogeneousSection sigma =
          random_clear_section(curve, 1 + (i % 3), rng);
      InvariantOptions a = inv, b = inv;
      a.apex_seed = mix_seed(33, 1, i);
      b.apex_seed = mix_seed(33, 2, i);
      const double va =
          projective_linking(curve, Divisor{sigma}, nullptr, a).value;
      const double vb =
          projective_linking(curve, Divisor{sigma}, nullptr, b).value;
      worst = std::max(worst, std::abs(va - vb));
    }
    report(3, "apex independence, 20 instances", worst <= 1e-6,
           "max|diff|=" + num(worst), t.seconds());
  }

  // 4. necessity: 500 random sections of degree <= 4 against the circle/disk
  //    pair stay above -1/2 - 1e-5; the missing-line section attains the
  //    bound within 1e-3
  {
    Timer t;
    HoloChain disk{{disk_in_line_piece(1.0, 2, 1)}, 2};
    NecessityReport rep =
        necessity_check(circle, disk, 500, 4, mix_seed(20240915, 0x6e6563ULL),
                        1e-5, inv);
    const double extremal = reduced_winding(circle, section_z(2, 0), inv).value;
    const bool pass = rep.ok && rep.evaluated >= 450 &&
                      std::abs(extremal + 0.5) <= 1e-3;
    report(4, "boundary-mass necessity, 500 sections", pass,
           "min=" + num(rep.min_reduced_winding) +
               " extremal=" + num(extremal),
           t.seconds());
  }

  // 5. tightness: estimated minimal mass matches r^2/(1+r^2) within 2e-2
  //    for r in {0.5, 1, 2}, doubled multiplicity doubles it; under 5 min
  {
    Timer t;
    CriterionOptions co;
    co.degree_max = 4;
    co.restarts = 16;
    co.steps = 30;
    co.seed = 424243;
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
      const double est = estimate_minimal_mass(circle_curve(2, r), co);
      worst = std::max(worst, std::abs(est - oracle::disk_area(r)));
    }
    const double est2 = estimate_minimal_mass(circle_curve(2, 1.0, 2), co);
    worst = std::max(worst, std::abs(est2 - 2.0 * oracle::disk_area(1.0)));
    const double elapsed = t.seconds();
    report(5, "minimal-mass tightness on r-circles",
           worst <= 2e-2 && elapsed < 300.0, "max|err|=" + num(worst), elapsed);
  }

  // 6. uniqueness: the bare disk reaches ratio 0 with the missing-line
  //    divisor sampled; disk plus a full line stays >= 1 - 1e-6
  {
    Timer t;
    HoloChain disk{{disk_in_line_piece(1.0, 2, 1)}, 2};
    HoloChain padded = disk;
    for (auto& p : full_line_pieces(2, 1)) padded.pieces.push_back(p);
    std::vector<HomogeneousSection> ensemble{section_z(2, 0)};
    SplitMix64 rng(mix_seed(20240915, 0x756e69ULL));
    for (int i = 0; i < 16; ++i)
      ensemble.push_back(random_clear_section(circle, 1 + (i % 3), rng));
    UniquenessReport bare = uniqueness_criterion(disk, ensemble, inv);
    UniquenessReport pad = uniqueness_criterion(padded, ensemble, inv);
    const bool pass = bare.min_ratio == 0.0 && pad.min_ratio >= 1.0 - 1e-6;
    report(6, "least-mass uniqueness ratios", pass,
           "bare=" + num(bare.min_ratio) + " padded=" + num(pad.min_ratio),
           t.seconds());
  }

  // 7. affine relation Link_P = Link_aff + deg * Link_P(curve, hyperplane)
  //    on 20 instances, 1e-5, with integer affine linkings
  {
    Timer t;
    double worst = 0.0;
    bool integral = true;
    const HomogeneousSection hyper = section_z(2, 0);
    int done = 0;
    for (int i = 0; done < 20 && i < 200; ++i) {
      SplitMix64 rng(mix_seed(20240915, 0x616666ULL, i, 0));
      const ParamCurve curve = random_fourier_curve(2, rng);
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& c : curve.components())
        for (int j = 0; j < 256; ++j)
          lo = std::min(lo, fs_norm(hyper, c.path.value(kTwoPi * j / 256)));
      if (lo < 1e-2) continue;
      ++done;
      const int d = 1 + static_cast<int>(rng.next() % 2);
      const HomogeneousSection sigma = random_clear_section(curve, d, rng);
      InvariantOptions io2 = inv;
      io2.apex_seed = mix_seed(20240915, 0x616670ULL, i);
      const double link_p =
          projective_linking(curve, Divisor{sigma}, nullptr, io2).value;
      const double link_h =
          projective_linking(curve, Divisor{hyper}, nullptr, io2).value;
      int link_aff = 0;
      try {
        link_aff = affine_linking(curve, sigma, 0, inv);
      } catch (const NumericalError&) {
        integral = false;
      }
      worst = std::max(worst, std::abs(link_p - (link_aff + d * link_h)));
    }
    report(7, "affine relation, 20 instances",
           worst <= 1e-5 && integral && done == 20, "max|resid|=" + num(worst),
           t.seconds());
  }

  // 8. curvature defect of 10^4 random section logarithms bounded by -1e-5
  {
    Timer t;
    const int n_pairs = 10000;
    std::vector<double> defects(n_pairs, 0.0);
    parallel_for(n_pairs, [&](std::size_t i) {
      SplitMix64 rng(mix_seed(20240915, 0x646566ULL, i));
      for (;;) {
        const int d = 1 + static_cast<int>(rng.next() % 4);
        HomogeneousSection s = random_section(2, d, rng);
        CVec z = rng.cgauss_vec(3);
        const double nz = norm(z);
        for (auto& x : z) x /= nz;
        auto [val, grad] = s.evaluate_with_gradient(z);
        if (std::abs(val) / std::max(norm(grad), 1e-12) < 0.15) continue;
        defects[i] = qpsh_defect(QPSHFunction::section_log(s), ProjPoint(z));
        return;
      }
    });
    double lo = std::numeric_limits<double>::infinity();
    for (double d : defects) lo = std::min(lo, d);
    report(8, "qpsh defect, 10^4 section logs", lo >= -1e-5,
           "min=" + num(lo), t.seconds());
  }

  // 9. hull calibration: C_4 within [0.999, 1.001] on the curve; the
  //    center's constant within 2% of sqrt(2) and of the brute-force
  //    extremal-section oracle (degrees <= 8, 512 boundary samples)
  {
    Timer t;
    const ParamCurve circle1 = circle_curve(1, 1.0);
    HullOptions ho;
    ho.degree_min = 4;
    ho.degree_max = 4;
    ho.restarts = 8;
    ho.seed = mix_seed(20240915, 0x68756c6cULL);
    bool calibrated = true;
    for (int i = 0; i < 8; ++i) {
      const double tparam = kTwoPi * (i + 0.37) / 8;
      HullEstimate est = best_constant(
          circle1, ProjPoint(CVec{1.0, std::polar(1.0, tparam)}), ho);
      const double c4 = est.best_constant_by_degree.at(4);
      calibrated = calibrated && c4 >= 0.999 && c4 <= 1.001;
    }
    HullOptions ho2 = ho;
    ho2.degree_min = 1;
    ho2.degree_max = 8;
    HullEstimate center =
        best_constant(circle1, ProjPoint(CVec{1.0, 0.0}), ho2);
    double cmax = 0.0;
    for (auto& [d, c] : center.best_constant_by_degree)
      cmax = std::max(cmax, c);
    double brute = 0.0;
    for (int d = 1; d <= 8; ++d)
      brute = std::max(brute, oracle::best_constant_bruteforce(
                                  circle1, CVec{1.0, 0.0}, d, 512));
    const bool center_ok =
        std::abs(cmax - std::sqrt(2.0)) <= 0.02 * std::sqrt(2.0) &&
        std::abs(cmax - brute) <= 0.02 * brute;
    report(9, "hull calibration and center constant", calibrated && center_ok,
           "C=" + num(cmax) + " oracle=" + num(brute), t.seconds());
  }

  // 10. the full property battery under verify, within 5 minutes
  {
    Timer t;
    VerifyOptions vo;
    const auto checks = verify_suite(vo);
    bool all = true;
    std::string bad;
    for (const auto& c : checks) {
      all = all && c.pass;
      if (!c.pass) bad += " " + c.name;
    }
    const double elapsed = t.seconds();
    report(10, "verify battery all green", all && elapsed < 300.0,
           all ? "10/10 checks" : ("failing:" + bad), elapsed);
  }

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures;
}
