// projlink: projective linking and winding invariants, bounding-mass
// estimation, and projective-hull membership for curves in P^n.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "projlink/io.hpp"
#include "projlink/svg.hpp"
#include "projlink/verify.hpp"

namespace pl = projlink;
using pl::json;

namespace {

/// Parses "a+bi", "a-bi", "bi", "i", or "a".
pl::cxd parse_complex_impl(const std::string& text);

pl::cxd parse_complex(const std::string& text) {
  try {
    return parse_complex_impl(text);
  } catch (const pl::ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw pl::ValidationError("bad complex literal: '" + text + "'");
  }
}

pl::cxd parse_complex_impl(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw pl::ValidationError("empty complex literal");
  if (s.back() == 'i' || s.back() == 'j') {
    s.pop_back();
    // split at the last +/- that is not an exponent sign or leading sign
    for (std::size_t p = s.size(); p-- > 1;) {
      if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
        const std::string re = s.substr(0, p);
        std::string im = s.substr(p);
        if (im == "+" || im == "-") im += "1";
        return {std::stod(re), std::stod(im)};
      }
    }
    if (s.empty() || s == "+") return {0.0, 1.0};
    if (s == "-") return {0.0, -1.0};
    return {0.0, std::stod(s)};
  }
  return {std::stod(s), 0.0};
}

pl::CVec parse_point(const std::string& text) {
  pl::CVec z;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      z.push_back(parse_complex(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) z.push_back(parse_complex(cur));
  if (z.size() < 2)
    throw pl::ValidationError("point needs at least two homogeneous coordinates");
  return z;
}

void parse_range(const std::string& text, int& lo, int& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    lo = hi = std::stoi(text);
    return;
  }
  lo = std::stoi(text.substr(0, colon));
  hi = std::stoi(text.substr(colon + 1));
  if (lo < 1 || hi < lo) throw pl::ValidationError("bad degree range: " + text);
}

struct Axis {
  double lo = 0.0, hi = 0.0;
  int n = 1;
};

Axis parse_axis(const std::string& text) {
  Axis a;
  const auto c1 = text.find(':');
  const auto c2 = text.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    throw pl::ValidationError("grid axis must be min:max:count, got " + text);
  a.lo = std::stod(text.substr(0, c1));
  a.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  a.n = std::stoi(text.substr(c2 + 1));
  if (a.n < 1) throw pl::ValidationError("grid axis needs at least one point");
  return a;
}

double secs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void emit(const pl::JobConfig& cfg, const json& record,
          const std::string& summary) {
  std::cout << summary << "\n";
  if (!cfg.out_file.empty()) pl::write_json(cfg.out_file, record);
}

std::string inputs_digest(const json& inputs) { return pl::digest(inputs.dump()); }

int run_wind(const pl::JobConfig& cfg, bool reduced) {
  const pl::ParamCurve curve = pl::load_curve(cfg.curve_file);
  const pl::HomogeneousSection sigma = pl::load_section(cfg.section_file);
  pl::InvariantReport rep = reduced
                                ? pl::reduced_winding(curve, sigma, cfg.inv)
                                : pl::winding_number(curve, sigma, cfg.inv);
  json inputs = {{"curve", pl::curve_to_json(curve)},
                 {"section", pl::section_to_json(sigma)},
                 {"reduced", reduced}};
  json record = pl::result_record(reduced ? "reduced-wind" : "wind", rep.value,
                                  rep.estimated_error, inputs_digest(inputs),
                                  pl::report_to_json(rep));
  emit(cfg, record,
       std::string(reduced ? "reduced wind" : "wind") + " = " + fmt(rep.value) +
           " +/- " + fmt(rep.estimated_error) + "  (panels " +
           std::to_string(rep.curve_panels) + ")");
  return 0;
}

int run_link(const pl::JobConfig& cfg) {
  const pl::ParamCurve curve = pl::load_curve(cfg.curve_file);
  const pl::HomogeneousSection sigma = pl::load_section(cfg.section_file);
  pl::InvariantReport rep =
      pl::projective_linking(curve, pl::Divisor{sigma}, nullptr, cfg.inv);
  json inputs = {{"curve", pl::curve_to_json(curve)},
                 {"section", pl::section_to_json(sigma)},
                 {"apex_seed", cfg.inv.apex_seed}};
  json record = pl::result_record("link", rep.value, rep.estimated_error,
                                  inputs_digest(inputs), pl::report_to_json(rep));
  emit(cfg, record,
       "link = " + fmt(rep.value) + " +/- " + fmt(rep.estimated_error) + "  (" +
           std::to_string(rep.intersections.size()) + " intersections)");
  return 0;
}

int run_affine_link(const pl::JobConfig& cfg) {
  const pl::ParamCurve curve = pl::load_curve(cfg.curve_file);
  const pl::HomogeneousSection sigma = pl::load_section(cfg.section_file);
  const int link = pl::affine_linking(curve, sigma, cfg.chart, cfg.inv);
  json inputs = {{"curve", pl::curve_to_json(curve)},
                 {"section", pl::section_to_json(sigma)},
                 {"chart", cfg.chart}};
  json record = pl::result_record("affine-link", link, 0.0,
                                  inputs_digest(inputs), json::object());
  emit(cfg, record, "affine link = " + std::to_string(link));
  return 0;
}

int run_mass(const pl::JobConfig& cfg) {
  const pl::HoloChain T = pl::load_chain(cfg.chain_file);
  pl::InvariantReport rep = pl::chain_mass(T, cfg.inv);
  json inputs = {{"chain", pl::chain_to_json(T)}};
  json record = pl::result_record("mass", rep.value, rep.estimated_error,
                                  inputs_digest(inputs), pl::report_to_json(rep));
  emit(cfg, record, "mass = " + fmt(rep.value) + " +/- " + fmt(rep.estimated_error));
  return 0;
}

int run_defect(const pl::JobConfig& cfg, const std::string& point_text,
               int samples, double min_dist) {
  const pl::HomogeneousSection sigma = pl::load_section(cfg.section_file);
  const pl::QPSHFunction u = pl::QPSHFunction::section_log(sigma);
  json inputs = {{"section", pl::section_to_json(sigma)},
                 {"point", point_text},
                 {"samples", samples},
                 {"min_dist", min_dist},
                 {"seed", cfg.seed}};
  if (!point_text.empty()) {
    const double d = pl::qpsh_defect(u, pl::ProjPoint(parse_point(point_text)),
                                     cfg.defect);
    json record = pl::result_record("defect", d, 0.0, inputs_digest(inputs),
                                    json::object());
    emit(cfg, record, "defect = " + fmt(d));
    return 0;
  }
  // random probes, conditioned away from the divisor so the FD stencil
  // stays in its accurate regime (min_dist is a first-order estimate of
  // the FS distance to the zero set)
  double lo = std::numeric_limits<double>::infinity();
  int evaluated = 0;
  pl::SplitMix64 rng(cfg.seed);
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < samples; ++i) {
    pl::CVec z = rng.cgauss_vec(sigma.dimension() + 1);
    const double nz = pl::norm(z);
    for (auto& x : z) x /= nz;
    auto [val, grad] = sigma.evaluate_with_gradient(z);
    if (std::abs(val) / std::max(pl::norm(grad), 1e-12) < min_dist) continue;
    try {
      const double d = pl::qpsh_defect(u, pl::ProjPoint(z), cfg.defect);
      lo = std::min(lo, d);
      ++evaluated;
      rows.push_back({std::to_string(i), pl::csv_number(d)});
    } catch (const pl::NumericalError&) {
      // singular-locus probe; skip it
    }
  }
  if (!cfg.csv_file.empty()) pl::write_csv(cfg.csv_file, {"probe", "defect"}, rows);
  json record = pl::result_record("defect-min", lo, 0.0, inputs_digest(inputs),
                                  json{{"evaluated", evaluated}});
  emit(cfg, record, "min defect over " + std::to_string(evaluated) +
                        " points = " + fmt(lo));
  return 0;
}

int run_hull(const pl::JobConfig& cfg, int coord, const Axis& re_axis,
             const Axis& im_axis, const std::vector<std::string>& fixed) {
  const pl::ParamCurve curve = pl::load_curve(cfg.curve_file);
  const int n = curve.dimension();
  if (coord < 1 || coord > n)
    throw pl::ValidationError("--coord must name a chart coordinate in 1.." +
                              std::to_string(n));
  pl::CVec base(n + 1, 0.0);
  base[0] = 1.0;
  for (const auto& f : fixed) {
    const auto eq = f.find('=');
    if (eq == std::string::npos)
      throw pl::ValidationError("--fix expects j=value, got " + f);
    const int j = std::stoi(f.substr(0, eq));
    if (j < 1 || j > n) throw pl::ValidationError("--fix index out of range");
    base[j] = parse_complex(f.substr(eq + 1));
  }
  std::vector<pl::ProjPoint> grid;
  for (int iy = 0; iy < im_axis.n; ++iy)
    for (int ix = 0; ix < re_axis.n; ++ix) {
      const double re =
          re_axis.n > 1
              ? re_axis.lo + (re_axis.hi - re_axis.lo) * ix / (re_axis.n - 1)
              : re_axis.lo;
      const double im =
          im_axis.n > 1
              ? im_axis.lo + (im_axis.hi - im_axis.lo) * iy / (im_axis.n - 1)
              : im_axis.lo;
      pl::CVec z = base;
      z[coord] = pl::cxd(re, im);
      grid.push_back(pl::ProjPoint(std::move(z)));
    }
  const auto field = pl::hull_field(curve, grid, cfg.hull);

  std::vector<std::string> header = {"re", "im", "lambda", "verdict"};
  for (int d = cfg.hull.degree_min; d <= cfg.hull.degree_max; ++d)
    header.push_back("c" + std::to_string(d));
  std::vector<std::vector<std::string>> rows;
  std::vector<pl::HeatPoint> heat;
  int members = 0, nonmembers = 0, undetermined = 0;
  for (const auto& est : field) {
    const pl::cxd w = est.point[coord] / est.point[0];
    std::vector<std::string> row = {pl::csv_number(w.real()),
                                    pl::csv_number(w.imag()),
                                    pl::csv_number(est.lambda),
                                    pl::to_string(est.verdict)};
    for (int d = cfg.hull.degree_min; d <= cfg.hull.degree_max; ++d)
      row.push_back(pl::csv_number(est.best_constant_by_degree.at(d)));
    rows.push_back(std::move(row));
    heat.push_back({w.real(), w.imag(), est.lambda,
                    est.verdict == pl::HullVerdict::NonMember});
    switch (est.verdict) {
      case pl::HullVerdict::Member: ++members; break;
      case pl::HullVerdict::NonMember: ++nonmembers; break;
      default: ++undetermined;
    }
  }
  if (!cfg.csv_file.empty()) pl::write_csv(cfg.csv_file, header, rows);
  if (!cfg.svg_file.empty()) {
    const double cell =
        re_axis.n > 1 ? (re_axis.hi - re_axis.lo) / (re_axis.n - 1) : 1.0;
    pl::write_heatmap_svg(cfg.svg_file, heat, cell);
  }
  json inputs = {{"curve", pl::curve_to_json(curve)},
                 {"coord", coord},
                 {"seed", cfg.hull.seed}};
  json record = pl::result_record(
      "hull", 0.0, 0.0, inputs_digest(inputs),
      json{{"points", static_cast<int>(field.size())},
           {"members", members},
           {"non_members", nonmembers},
           {"undetermined", undetermined}});
  emit(cfg, record,
       "hull field: " + std::to_string(field.size()) + " points (" +
           std::to_string(members) + " member / " + std::to_string(nonmembers) +
           " non-member / " + std::to_string(undetermined) + " undetermined)");
  return 0;
}

int run_criterion(const pl::JobConfig& cfg, double lambda, bool has_lambda) {
  const pl::ParamCurve curve = pl::load_curve(cfg.curve_file);
  pl::CriterionResult res = pl::minimize_reduced_winding(curve, cfg.crit);
  json sweep = json::object();
  std::vector<std::vector<std::string>> rows;
  for (const auto& [d, v] : res.degree_sweep) {
    sweep[std::to_string(d)] = v;
    rows.push_back({std::to_string(d), pl::csv_number(v)});
  }
  if (!cfg.csv_file.empty())
    pl::write_csv(cfg.csv_file, {"degree", "inf_reduced_winding"}, rows);
  json inputs = {{"curve", pl::curve_to_json(curve)},
                 {"degrees", {cfg.crit.degree_min, cfg.crit.degree_max}},
                 {"restarts", cfg.crit.restarts},
                 {"seed", cfg.crit.seed}};
  json diag = {{"degree_sweep", sweep}, {"status", res.status}};
  if (res.witness) diag["witness"] = pl::section_to_json(*res.witness);
  if (has_lambda) {
    const auto verdict = pl::check_boundary_criterion(curve, lambda, res);
    diag["lambda"] = lambda;
    diag["verdict"] = verdict.pass ? "PASS" : "FAIL";
    diag["margin"] = verdict.margin;
  }
  json record =
      pl::result_record("criterion", res.inf_reduced_winding,
                        res.minimal_mass_estimate, inputs_digest(inputs), diag);
  std::string line = "inf reduced winding = " + fmt(res.inf_reduced_winding) +
                     ", minimal mass >= " + fmt(res.minimal_mass_estimate);
  if (has_lambda)
    line += std::string(", criterion ") +
            (pl::check_boundary_criterion(curve, lambda, res).pass ? "PASS"
                                                                   : "FAIL");
  emit(cfg, record, line);
  return 0;
}

int run_verify(const pl::JobConfig& cfg) {
  bool all = true;
  json items = json::array();
  auto note = [&](const std::string& name, bool pass, const std::string& detail,
                  double seconds) {
    all = all && pass;
    std::printf("%-4s %-28s %s  [%.2fs]\n", pass ? "PASS" : "FAIL",
                name.c_str(), detail.c_str(), seconds);
    // wall times stay out of the record so reruns are byte-identical
    items.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
  };

  if (!cfg.curve_file.empty()) {
    // user-supplied inputs: boundary consistency, the mass bound, and the
    // three-route agreement on this curve
    const pl::ParamCurve curve = pl::load_curve(cfg.curve_file);
    const int ens = cfg.quick ? 64 : cfg.ensemble_size;
    if (!cfg.chain_file.empty()) {
      const pl::HoloChain T = pl::load_chain(cfg.chain_file);
      auto t0 = std::chrono::steady_clock::now();
      const pl::BoundaryReport br = pl::chain_boundary_check(T, curve, 1e-6);
      std::string why;
      for (const auto& i : br.issues) why += "[" + i.kind + "] ";
      note("chain-boundary-check", br.matched,
           br.matched ? "boundary matches the curve" : why, secs(t0));
      t0 = std::chrono::steady_clock::now();
      const pl::NecessityReport nr = pl::necessity_check(
          curve, T, ens, cfg.ensemble_max_degree, cfg.seed, 1e-5, cfg.inv);
      note("boundary-mass-necessity", nr.ok,
           "min reduced winding " + fmt(nr.min_reduced_winding) +
               " >= " + fmt(nr.bound) + " over " +
               std::to_string(nr.evaluated) + " sections",
           secs(t0));
    }
    auto t0 = std::chrono::steady_clock::now();
    const pl::CrossValReport cv = pl::cross_validate_equivalences(
        curve, cfg.quick ? 8 : 24, cfg.ensemble_max_degree, cfg.seed, cfg.inv);
    note("invariant-cross-validation", cv.max_discrepancy <= 1e-5,
         "max route discrepancy " + fmt(cv.max_discrepancy), secs(t0));
  } else {
    pl::VerifyOptions vo;
    vo.quick = cfg.quick;
    vo.seed = cfg.seed;
    for (const auto& c : pl::verify_suite(vo))
      note(c.name, c.pass, c.detail, c.seconds);
  }

  std::printf("%s\n", all ? "verify: all checks green" : "verify: FAILURES");
  if (!cfg.out_file.empty()) {
    json record = {{"invariant", "verify"},
                   {"value", all ? 1.0 : 0.0},
                   {"error", 0.0},
                   {"inputs_digest",
                    inputs_digest(json{{"seed", cfg.seed},
                                       {"quick", cfg.quick},
                                       {"curve", cfg.curve_file},
                                       {"chain", cfg.chain_file}})},
                   {"diagnostics", json{{"checks", items}}}};
    pl::write_json(cfg.out_file, record);
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projective linking/winding invariants and hull estimation"};
  app.require_subcommand(1);
  pl::JobConfig cfg;

  std::string degrees_text, hull_degrees_text, point_text;
  std::string grid_re = "-2:2:21", grid_im = "-2:2:21";
  int coord = 1, defect_samples = 1000;
  double defect_min_dist = 0.1;
  double lambda = 0.0;
  std::vector<std::string> fixed;
  bool reduced = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_file, "write the JSON result record here");
    sub->add_option("--eps-clear", cfg.inv.eps_clear,
                    "divisor/curve clearance threshold (default 1e-8)");
    sub->add_option("--tol", cfg.inv.tol_quad,
                    "quadrature tolerance (default 1e-9)");
    sub->add_option("--apex-seed", cfg.inv.apex_seed,
                    "seed for cone apex selection (default 2024)");
  };

  auto* wind = app.add_subcommand("wind", "projective winding number");
  wind->add_option("--curve", cfg.curve_file)->required();
  wind->add_option("--section", cfg.section_file)->required();
  wind->add_flag("--reduced", reduced, "divide by the section degree");
  add_common(wind);

  auto* link = app.add_subcommand("link", "projective linking number");
  link->add_option("--curve", cfg.curve_file)->required();
  link->add_option("--section", cfg.section_file)->required();
  add_common(link);

  auto* alink = app.add_subcommand("affine-link", "classical linking number in a chart");
  alink->add_option("--curve", cfg.curve_file)->required();
  alink->add_option("--section", cfg.section_file)->required();
  alink->add_option("--chart", cfg.chart, "affine chart index (default 0)");
  add_common(alink);

  auto* mass = app.add_subcommand("mass", "mass of a positive holomorphic chain");
  mass->add_option("--chain", cfg.chain_file)->required();
  add_common(mass);

  auto* defect = app.add_subcommand("defect", "quasi-plurisubharmonicity defect");
  defect->add_option("--section", cfg.section_file)->required();
  defect->add_option("--point", point_text,
                     "homogeneous point, e.g. \"1,0.3-0.2i,0\"");
  defect->add_option("--samples", defect_samples,
                     "random probe count when no point is given (default 1000)");
  defect->add_option("--seed", cfg.seed, "probe seed (default 12345)");
  defect->add_option("--min-dist", defect_min_dist,
                     "skip probes closer than this to the divisor (default 0.1)");
  defect->add_option("--csv", cfg.csv_file, "per-probe defect CSV");
  defect->add_option("--fd-step", cfg.defect.fd_step,
                     "finite-difference step (default 1e-4)");
  add_common(defect);

  auto* hull = app.add_subcommand("hull", "best-constant field and membership");
  hull->add_option("--curve", cfg.curve_file)->required();
  hull->add_option("--coord", coord, "chart coordinate to sweep (default 1)");
  hull->add_option("--grid-re", grid_re, "re axis min:max:count (default -2:2:21)");
  hull->add_option("--grid-im", grid_im, "im axis min:max:count (default -2:2:21)");
  hull->add_option("--fix", fixed, "fix other chart coordinates, j=value");
  hull->add_option("--degrees", hull_degrees_text, "degree range, e.g. 1:6");
  hull->add_option("--restarts", cfg.hull.restarts, "optimizer restarts (default 12)");
  hull->add_option("--iterations", cfg.hull.iterations, "ascent steps (default 200)");
  hull->add_option("--seed", cfg.hull.seed, "optimizer seed (default 7777)");
  hull->add_flag("--bombieri",
                 [&cfg](std::int64_t) {
                   cfg.hull.weight = pl::CoefficientWeight::Bombieri;
                 },
                 "Bombieri-weighted random coefficients");
  hull->add_option("--csv", cfg.csv_file, "point cloud CSV output");
  hull->add_option("--svg", cfg.svg_file, "heat map SVG output");
  hull->add_option("--out", cfg.out_file, "JSON summary record");

  auto* crit = app.add_subcommand("criterion", "boundary criterion search");
  crit->add_option("--curve", cfg.curve_file)->required();
  crit->add_option("--degrees", degrees_text, "degree range, e.g. 1:6");
  crit->add_option("--restarts", cfg.crit.restarts, "restarts per degree (default 32)");
  crit->add_option("--steps", cfg.crit.steps, "descent steps (default 80)");
  crit->add_option("--seed", cfg.crit.seed, "restart seed (default 99991)");
  auto* lam = crit->add_option("--lambda", lambda, "mass budget to test against");
  crit->add_option("--sweep", cfg.csv_file, "per-degree sweep CSV");
  crit->add_option("--out", cfg.out_file, "JSON result record");

  auto* verify = app.add_subcommand("verify", "cross-validation battery");
  verify->add_option("--curve", cfg.curve_file,
                     "verify this curve instead of the bundled battery");
  verify->add_option("--chain", cfg.chain_file,
                     "with --curve: check the chain bounds it");
  verify->add_option("--ensemble", cfg.ensemble_size,
                     "random sections for the necessity check (default 500)");
  verify->add_flag("--quick", cfg.quick, "30-second subset");
  verify->add_option("--seed", cfg.seed, "battery seed (default 12345)");
  verify->add_option("--out", cfg.out_file, "JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!degrees_text.empty())
      parse_range(degrees_text, cfg.crit.degree_min, cfg.crit.degree_max);
    if (!hull_degrees_text.empty())
      parse_range(hull_degrees_text, cfg.hull.degree_min, cfg.hull.degree_max);
    cfg.crit.inv = cfg.inv;

    if (wind->parsed()) return run_wind(cfg, reduced);
    if (link->parsed()) return run_link(cfg);
    if (alink->parsed()) return run_affine_link(cfg);
    if (mass->parsed()) return run_mass(cfg);
    if (defect->parsed())
      return run_defect(cfg, point_text, defect_samples, defect_min_dist);
    if (hull->parsed())
      return run_hull(cfg, coord, parse_axis(grid_re), parse_axis(grid_im), fixed);
    if (crit->parsed()) return run_criterion(cfg, lambda, lam->count() > 0);
    if (verify->parsed()) return run_verify(cfg);
  } catch (const pl::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    if (!cfg.out_file.empty()) {
      pl::write_json(cfg.out_file,
                     json{{"error", "validation"}, {"message", e.what()}});
    }
    return 1;
  } catch (const std::invalid_argument& e) {
    // malformed numeric literals in flags land here via the std parsers
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const pl::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    if (!cfg.out_file.empty()) {
      pl::write_json(cfg.out_file, json{{"error", pl::to_string(e.kind())},
                                        {"message", e.what()}});
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
