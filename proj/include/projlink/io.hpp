#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "projlink/chains.hpp"
#include "projlink/criterion.hpp"
#include "projlink/curves.hpp"
#include "projlink/hull.hpp"
#include "projlink/invariants.hpp"

namespace projlink {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Validation helpers. Errors carry the offending JSON path so a bad file is
// diagnosable from the CLI message alone.

namespace iodetail {

inline const json& require(const json& j, const std::string& key,
                           const std::string& path) {
  if (!j.contains(key))
    throw ValidationError(path + ": missing required field '" + key + "'");
  return j.at(key);
}

inline int require_int(const json& j, const std::string& key,
                       const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number_integer())
    throw ValidationError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

inline std::vector<double> require_numbers(const json& j, const std::string& key,
                                           const std::string& path,
                                           std::size_t expected = 0) {
  const json& v = require(j, key, path);
  if (!v.is_array())
    throw ValidationError(path + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number())
      throw ValidationError(path + "." + key + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  if (expected && out.size() != expected)
    throw ValidationError(path + "." + key + ": expected " +
                          std::to_string(expected) + " numbers, found " +
                          std::to_string(out.size()));
  return out;
}

inline json load_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open file: " + file);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError(file + ": invalid JSON (" + e.what() + ")");
  }
  return j;
}

}  // namespace iodetail

// ---------------------------------------------------------------------------
// Curves. Schema: schemas/curve.schema.json.

inline ParamCurve curve_from_json(const json& j, const std::string& path = "$") {
  using namespace iodetail;
  const int dim = require_int(j, "dimension", path);
  if (dim < 1) throw ValidationError(path + ".dimension: must be >= 1");
  const json& comps = require(j, "components", path);
  if (!comps.is_array() || comps.empty())
    throw ValidationError(path + ".components: expected a nonempty array");
  std::vector<CurveComponent> components;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string cpath = path + ".components[" + std::to_string(c) + "]";
    const int mult = require_int(comps[c], "multiplicity", cpath);
    if (mult < 1)
      throw ValidationError(cpath + ".multiplicity: must be a positive integer");
    const json& modes = require(comps[c], "fourier", cpath);
    if (!modes.is_array() || modes.empty())
      throw ValidationError(cpath + ".fourier: expected a nonempty array");
    int kmax = 0;
    for (std::size_t i = 0; i < modes.size(); ++i)
      kmax = std::max(kmax, std::abs(require_int(
                                modes[i], "k",
                                cpath + ".fourier[" + std::to_string(i) + "]")));
    FourierPath fp(dim, kmax);
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string mpath = cpath + ".fourier[" + std::to_string(i) + "]";
      const int k = require_int(modes[i], "k", mpath);
      const auto re = require_numbers(modes[i], "re", mpath, dim + 1);
      const auto im = require_numbers(modes[i], "im", mpath, dim + 1);
      for (int v = 0; v <= dim; ++v) fp.mode(k)[v] += cxd(re[v], im[v]);
    }
    components.push_back({fp, mult});
  }
  ParamCurve curve(dim, std::move(components));
  if (curve.min_norm() <= 0.0)
    throw ValidationError(path + ": curve passes through the origin of C^{n+1}");
  const EmbeddingReport emb = validate_embedding(curve);
  if (!emb.ok) throw ValidationError(path + ": " + emb.detail);
  return curve;
}

inline json curve_to_json(const ParamCurve& curve) {
  json j;
  j["dimension"] = curve.dimension();
  j["components"] = json::array();
  for (const auto& c : curve.components()) {
    json comp;
    comp["multiplicity"] = c.multiplicity;
    comp["fourier"] = json::array();
    for (int k = -c.path.max_mode(); k <= c.path.max_mode(); ++k) {
      const CVec& a = c.path.mode(k);
      if (norm2(a) == 0.0) continue;
      json mode;
      mode["k"] = k;
      json re = json::array(), im = json::array();
      for (const cxd& x : a) {
        re.push_back(x.real());
        im.push_back(x.imag());
      }
      mode["re"] = re;
      mode["im"] = im;
      comp["fourier"].push_back(mode);
    }
    j["components"].push_back(comp);
  }
  return j;
}

inline ParamCurve load_curve(const std::string& file) {
  return curve_from_json(iodetail::load_file(file), file);
}

// ---------------------------------------------------------------------------
// Sections. Coefficients in descending-lex monomial order (index 0 is
// z_0^d, the last index is z_n^d). Schema: schemas/section.schema.json.

inline HomogeneousSection section_from_json(const json& j,
                                            const std::string& path = "$") {
  using namespace iodetail;
  const int dim = require_int(j, "dimension", path);
  const int deg = require_int(j, "degree", path);
  if (dim < 1) throw ValidationError(path + ".dimension: must be >= 1");
  if (deg < 1) throw ValidationError(path + ".degree: must be >= 1");
  const std::size_t expect = monomial_count(dim, deg);
  const auto re = require_numbers(j, "re", path, expect);
  const auto im = require_numbers(j, "im", path, expect);
  CVec c(expect);
  for (std::size_t i = 0; i < expect; ++i) c[i] = cxd(re[i], im[i]);
  try {
    return HomogeneousSection(dim, deg, std::move(c));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline json section_to_json(const HomogeneousSection& s) {
  json j;
  j["dimension"] = s.dimension();
  j["degree"] = s.degree();
  json re = json::array(), im = json::array();
  for (const cxd& x : s.coefficients()) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline HomogeneousSection load_section(const std::string& file) {
  return section_from_json(iodetail::load_file(file), file);
}

// ---------------------------------------------------------------------------
// Holomorphic chains. Schema: schemas/chain.schema.json.

inline HoloChain chain_from_json(const json& j, const std::string& path = "$") {
  using namespace iodetail;
  const int dim = require_int(j, "dimension", path);
  const json& pieces = require(j, "pieces", path);
  if (!pieces.is_array() || pieces.empty())
    throw ValidationError(path + ".pieces: expected a nonempty array");
  HoloChain T;
  T.dim = dim;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const std::string ppath = path + ".pieces[" + std::to_string(p) + "]";
    HoloPiece piece;
    piece.multiplicity = require_int(pieces[p], "multiplicity", ppath);
    if (piece.multiplicity < 1)
      throw ValidationError(ppath + ".multiplicity: must be a positive integer");
    const json& dom = require(pieces[p], "domain", ppath);
    if (!dom.is_string() || (dom != "disk" && dom != "annulus"))
      throw ValidationError(ppath + ".domain: expected \"disk\" or \"annulus\"");
    if (dom == "annulus") {
      const json& ir = require(pieces[p], "inner_radius", ppath);
      if (!ir.is_number() || !(ir.get<double>() > 0.0) || !(ir.get<double>() < 1.0))
        throw ValidationError(ppath + ".inner_radius: expected a number in (0,1)");
      piece.inner_radius = ir.get<double>();
    }
    const json& comps = require(pieces[p], "components", ppath);
    if (!comps.is_array() || comps.size() != static_cast<std::size_t>(dim) + 1)
      throw ValidationError(ppath + ".components: expected " +
                            std::to_string(dim + 1) + " polynomial entries");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string ipath = ppath + ".components[" + std::to_string(i) + "]";
      const auto re = require_numbers(comps[i], "re", ipath);
      const auto im = require_numbers(comps[i], "im", ipath);
      if (re.size() != im.size())
        throw ValidationError(ipath + ": re and im lengths differ");
      Poly poly(re.size());
      for (std::size_t k = 0; k < re.size(); ++k) poly[k] = cxd(re[k], im[k]);
      piece.components.push_back(std::move(poly));
    }
    double sup = 0.0;
    for (const auto& c : piece.components)
      for (const auto& x : c) sup = std::max(sup, std::abs(x));
    if (sup == 0.0)
      throw ValidationError(ppath + ".components: piece is identically zero");
    T.pieces.push_back(std::move(piece));
  }
  return T;
}

inline json chain_to_json(const HoloChain& T) {
  json j;
  j["dimension"] = T.dim;
  j["pieces"] = json::array();
  for (const auto& p : T.pieces) {
    json piece;
    piece["multiplicity"] = p.multiplicity;
    piece["domain"] = p.is_annulus() ? "annulus" : "disk";
    if (p.is_annulus()) piece["inner_radius"] = p.inner_radius;
    piece["components"] = json::array();
    for (const auto& poly : p.components) {
      json re = json::array(), im = json::array();
      for (const cxd& x : poly) {
        re.push_back(x.real());
        im.push_back(x.imag());
      }
      piece["components"].push_back(json{{"re", re}, {"im", im}});
    }
    j["pieces"].push_back(piece);
  }
  return j;
}

inline HoloChain load_chain(const std::string& file) {
  return chain_from_json(iodetail::load_file(file), file);
}

// ---------------------------------------------------------------------------
// Result records.

/// FNV-1a digest of a canonical serialization; result records carry it so
/// outputs can be traced to their exact inputs.
inline std::string digest(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

inline json report_to_json(const InvariantReport& rep) {
  json d;
  d["curve_panels"] = rep.curve_panels;
  d["area_panels"] = rep.area_panels;
  d["richardson"] = rep.richardson;
  if (!rep.intersections.empty()) {
    json xs = json::array();
    for (const auto& r : rep.intersections)
      xs.push_back(json{{"piece", r.piece},
                        {"s", r.s},
                        {"t", r.t},
                        {"sign", r.sign},
                        {"conditioning", r.conditioning}});
    d["intersections"] = xs;
  }
  return d;
}

inline json result_record(const std::string& invariant, double value,
                          double error, const std::string& inputs_digest,
                          json diagnostics) {
  json j;
  j["invariant"] = invariant;
  j["value"] = value;
  j["error"] = error;
  j["inputs_digest"] = inputs_digest;
  j["diagnostics"] = std::move(diagnostics);
  return j;
}

inline void write_json(const std::string& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw ValidationError("cannot write file: " + file);
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// CSV.

inline std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline void write_csv(const std::string& file,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(file);
  if (!out) throw ValidationError("cannot write file: " + file);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Job configuration: one struct holding every tunable knob with its default;
// round-trips through JSON unchanged.

struct JobConfig {
  std::string command;
  std::string curve_file;
  std::string section_file;
  std::string chain_file;
  std::string out_file;
  std::string csv_file;
  std::string svg_file;
  std::uint64_t seed = 12345;
  InvariantOptions inv{};
  CriterionOptions crit{};
  HullOptions hull{};
  DefectOptions defect{};
  int ensemble_size = 500;
  int ensemble_max_degree = 4;
  int chart = 0;
  bool quick = false;
};

inline json config_to_json(const JobConfig& c) {
  json j;
  j["command"] = c.command;
  j["curve_file"] = c.curve_file;
  j["section_file"] = c.section_file;
  j["chain_file"] = c.chain_file;
  j["out_file"] = c.out_file;
  j["csv_file"] = c.csv_file;
  j["svg_file"] = c.svg_file;
  j["seed"] = c.seed;
  j["chart"] = c.chart;
  j["quick"] = c.quick;
  j["ensemble_size"] = c.ensemble_size;
  j["ensemble_max_degree"] = c.ensemble_max_degree;
  j["invariants"] = {{"eps_clear", c.inv.eps_clear},
                     {"tol_quad", c.inv.tol_quad},
                     {"tol_area", c.inv.tol_area},
                     {"quad_m0", c.inv.quad_m0},
                     {"quad_mmax", c.inv.quad_mmax},
                     {"clearance_samples", c.inv.clearance_samples},
                     {"newton_grid", c.inv.newton_grid},
                     {"newton_grid_max", c.inv.newton_grid_max},
                     {"dedup_radius", c.inv.dedup_radius},
                     {"cond_min", c.inv.cond_min},
                     {"apex_seed", c.inv.apex_seed}};
  j["criterion"] = {{"degree_min", c.crit.degree_min},
                    {"degree_max", c.crit.degree_max},
                    {"restarts", c.crit.restarts},
                    {"steps", c.crit.steps},
                    {"opt_quad_m", c.crit.opt_quad_m},
                    {"barrier_factor", c.crit.barrier_factor},
                    {"grad_tol", c.crit.grad_tol},
                    {"seed", c.crit.seed}};
  j["hull"] = {{"degree_min", c.hull.degree_min},
               {"degree_max", c.hull.degree_max},
               {"restarts", c.hull.restarts},
               {"iterations", c.hull.iterations},
               {"sup_samples", c.hull.sup_samples},
               {"seed", c.hull.seed},
               {"bombieri", c.hull.weight == CoefficientWeight::Bombieri},
               {"informed_start", c.hull.informed_start},
               {"c_cap", c.hull.c_cap},
               {"stabil_rel", c.hull.stabil_rel},
               {"growth_slope", c.hull.growth_slope},
               {"sup_floor", c.hull.sup_floor}};
  j["defect"] = {{"fd_step", c.defect.fd_step}, {"eps_clear", c.defect.eps_clear}};
  return j;
}

inline JobConfig config_from_json(const json& j) {
  JobConfig c;
  auto get = [&](const json& o, const char* k, auto& slot) {
    if (o.contains(k)) slot = o.at(k).get<std::decay_t<decltype(slot)>>();
  };
  get(j, "command", c.command);
  get(j, "curve_file", c.curve_file);
  get(j, "section_file", c.section_file);
  get(j, "chain_file", c.chain_file);
  get(j, "out_file", c.out_file);
  get(j, "csv_file", c.csv_file);
  get(j, "svg_file", c.svg_file);
  get(j, "seed", c.seed);
  get(j, "chart", c.chart);
  get(j, "quick", c.quick);
  get(j, "ensemble_size", c.ensemble_size);
  get(j, "ensemble_max_degree", c.ensemble_max_degree);
  if (j.contains("invariants")) {
    const json& o = j.at("invariants");
    get(o, "eps_clear", c.inv.eps_clear);
    get(o, "tol_quad", c.inv.tol_quad);
    get(o, "tol_area", c.inv.tol_area);
    get(o, "quad_m0", c.inv.quad_m0);
    get(o, "quad_mmax", c.inv.quad_mmax);
    get(o, "clearance_samples", c.inv.clearance_samples);
    get(o, "newton_grid", c.inv.newton_grid);
    get(o, "newton_grid_max", c.inv.newton_grid_max);
    get(o, "dedup_radius", c.inv.dedup_radius);
    get(o, "cond_min", c.inv.cond_min);
    get(o, "apex_seed", c.inv.apex_seed);
  }
  if (j.contains("criterion")) {
    const json& o = j.at("criterion");
    get(o, "degree_min", c.crit.degree_min);
    get(o, "degree_max", c.crit.degree_max);
    get(o, "restarts", c.crit.restarts);
    get(o, "steps", c.crit.steps);
    get(o, "opt_quad_m", c.crit.opt_quad_m);
    get(o, "barrier_factor", c.crit.barrier_factor);
    get(o, "grad_tol", c.crit.grad_tol);
    get(o, "seed", c.crit.seed);
  }
  if (j.contains("hull")) {
    const json& o = j.at("hull");
    get(o, "degree_min", c.hull.degree_min);
    get(o, "degree_max", c.hull.degree_max);
    get(o, "restarts", c.hull.restarts);
    get(o, "iterations", c.hull.iterations);
    get(o, "sup_samples", c.hull.sup_samples);
    get(o, "seed", c.hull.seed);
    bool bombieri = false;
    get(o, "bombieri", bombieri);
    c.hull.weight =
        bombieri ? CoefficientWeight::Bombieri : CoefficientWeight::Gaussian;
    get(o, "informed_start", c.hull.informed_start);
    get(o, "c_cap", c.hull.c_cap);
    get(o, "stabil_rel", c.hull.stabil_rel);
    get(o, "growth_slope", c.hull.growth_slope);
    get(o, "sup_floor", c.hull.sup_floor);
  }
  if (j.contains("defect")) {
    const json& o = j.at("defect");
    get(o, "fd_step", c.defect.fd_step);
    get(o, "eps_clear", c.defect.eps_clear);
  }
  c.crit.inv = c.inv;
  return c;
}

}  // namespace projlink
