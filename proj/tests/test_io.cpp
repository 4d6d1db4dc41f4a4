#include <doctest.h>

#include <fstream>

#include "projlink/io.hpp"
#include "projlink/svg.hpp"
#include "projlink/verify.hpp"

using namespace projlink;

namespace {
const std::string kData = PROJLINK_DATA_DIR;
}

TEST_CASE("bundled curve files load and match their programmatic twins") {
  const ParamCurve circle = load_curve(kData + "/circle.json");
  const ParamCurve expect = circle_curve(2, 1.0);
  REQUIRE(circle.components().size() == 1);
  CHECK(circle.dimension() == 2);
  for (int k = -1; k <= 1; ++k)
    for (int i = 0; i < 3; ++i)
      CHECK(circle.components()[0].path.mode(k)[i] ==
            expect.components()[0].path.mode(k)[i]);

  CHECK(load_curve(kData + "/circle_mult2.json").components()[0].multiplicity == 2);
  const ParamCurve conic = load_curve(kData + "/conic_boundary.json");
  CHECK(conic.components()[0].path.max_mode() == 2);
  const ParamCurve p1 = load_curve(kData + "/circle_p1.json");
  CHECK(p1.dimension() == 1);
}

TEST_CASE("bundled sections and chains load with the documented meaning") {
  const HomogeneousSection z0 = load_section(kData + "/z0.json");
  CHECK(std::abs(z0.evaluate({1.0, 5.0, 7.0}) - cxd(1.0)) < 1e-15);
  const HomogeneousSection mid = load_section(kData + "/z1_minus_half_z0.json");
  CHECK(std::abs(mid.evaluate({1.0, 0.5, 0.0})) < 1e-15);

  const HoloChain disk = load_chain(kData + "/disk.json");
  CHECK(chain_mass(disk).value == doctest::Approx(0.5).epsilon(1e-8));
  const HoloChain padded = load_chain(kData + "/disk_plus_line.json");
  CHECK(chain_mass(padded).value == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(chain_boundary_check(padded, circle_curve(2, 1.0)).matched);
}

TEST_CASE("serialization round-trips exactly") {
  SplitMix64 rng(12);
  const ParamCurve curve = random_fourier_curve(2, rng);
  const ParamCurve back = curve_from_json(curve_to_json(curve));
  for (int k = -2; k <= 2; ++k)
    for (int i = 0; i < 3; ++i)
      CHECK(back.components()[0].path.mode(k)[i] ==
            curve.components()[0].path.mode(k)[i]);

  const HomogeneousSection s = random_section(2, 3, rng);
  const HomogeneousSection s2 = section_from_json(section_to_json(s));
  for (std::size_t i = 0; i < s.coefficients().size(); ++i)
    CHECK(s2.coefficients()[i] == s.coefficients()[i]);

  HoloChain T{{conic_piece()}, 2};
  T.pieces[0].inner_radius = 0.25;
  const HoloChain T2 = chain_from_json(chain_to_json(T));
  CHECK(T2.pieces[0].inner_radius == 0.25);
  CHECK(T2.pieces[0].components[2][2] == cxd(1.0));
}

TEST_CASE("config round-trips through JSON unchanged") {
  JobConfig c;
  c.command = "wind";
  c.seed = 777;
  c.inv.eps_clear = 3e-7;
  c.crit.restarts = 11;
  c.hull.weight = CoefficientWeight::Bombieri;
  c.crit.inv = c.inv;
  const json j = config_to_json(c);
  const JobConfig back = config_from_json(j);
  CHECK(config_to_json(back).dump() == j.dump());
}

TEST_CASE("validation errors carry the offending JSON path") {
  CHECK_THROWS_AS(load_curve(kData + "/malformed_curve.json"), ValidationError);
  try {
    load_curve(kData + "/malformed_curve.json");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("components[0]") != std::string::npos);
    CHECK(msg.find("re") != std::string::npos);
  }
  CHECK_THROWS_AS(load_curve(kData + "/z0.json"), ValidationError);
  CHECK_THROWS_AS(load_curve(kData + "/does_not_exist.json"), ValidationError);

  // schema-valid but geometrically inadmissible curves are rejected too
  json bad = curve_to_json(circle_curve(1, 1.0));
  bad["components"][0]["fourier"][1]["k"] = 2;  // doubly traversed circle
  CHECK_THROWS_AS(curve_from_json(bad), ValidationError);
}

TEST_CASE("result records are schema-shaped and digests are stable") {
  InvariantReport rep;
  rep.value = -0.5;
  rep.estimated_error = 1e-9;
  rep.curve_panels = 128;
  const std::string dig = digest("payload");
  CHECK(dig.size() == 16);
  CHECK(dig == digest("payload"));
  CHECK(dig != digest("payloae"));
  const json rec = result_record("wind", rep.value, rep.estimated_error, dig,
                                 report_to_json(rep));
  for (const char* key : {"invariant", "value", "error", "inputs_digest",
                          "diagnostics"})
    CHECK(rec.contains(key));
  CHECK(rec.dump() == result_record("wind", rep.value, rep.estimated_error,
                                    dig, report_to_json(rep))
                          .dump());
}

TEST_CASE("csv writer emits the documented layout") {
  const std::string file = "/tmp/projlink_test.csv";
  write_csv(file, {"degree", "value"}, {{"1", "-0.5"}, {"2", "-0.5"}});
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  CHECK(line == "degree,value");
  std::getline(in, line);
  CHECK(line == "1,-0.5");
}

TEST_CASE("svg heat maps are emitted") {
  const std::string file = "/tmp/projlink_test.svg";
  write_heatmap_svg(file,
                    {{0.0, 0.0, 1.0, false}, {1.0, 0.0, 2.0, true}}, 1.0);
  std::ifstream in(file);
  std::string head;
  std::getline(in, head);
  CHECK(head.find("<svg") == 0);
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(body.find("rect") != std::string::npos);
  CHECK(body.find("stroke=\"red\"") != std::string::npos);
}

TEST_CASE("golden record: the wind record format is frozen") {
  // regenerate the record exactly as the CLI does and compare byte-wise
  // against the checked-in golden file; any format or value drift fails
  const ParamCurve curve = load_curve(kData + "/circle.json");
  const HomogeneousSection sigma = load_section(kData + "/z0.json");
  InvariantReport rep = winding_number(curve, sigma);
  json inputs = {{"curve", curve_to_json(curve)},
                 {"section", section_to_json(sigma)},
                 {"reduced", false}};
  const json rec = result_record("wind", rep.value, rep.estimated_error,
                                 digest(inputs.dump()), report_to_json(rep));
  std::ifstream in(std::string(PROJLINK_GOLDEN_DIR) + "/wind_circle_z0.json");
  REQUIRE(in.good());
  std::string golden((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
  CHECK(rec.dump(2) + "\n" == golden);
}
