#include "zoll/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "zoll/errors.hpp"

namespace zoll {

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw InvalidInputError(where + ": expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw InvalidInputError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void read_field(const Json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T required(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInputError(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(where + "." + key + ": " + e.what());
  }
}

Json sampling_json(const SamplingConfig& s) {
  Json j;
  j["base_samples"] = s.base_samples;
  j["directions"] = s.directions;
  j["refine_spacing"] = s.refine_spacing;
  j["refine_extent"] = s.refine_extent;
  j["l24_base_samples"] = s.l24_base_samples;
  j["l24_directions"] = s.l24_directions;
  j["l24_family_grid"] = s.l24_family_grid;
  j["l24_nu_fraction"] = s.l24_nu_fraction;
  j["l24_floor"] = s.l24_floor;
  j["l24_resolution"] = s.l24_resolution;
  j["witness_keep"] = s.witness_keep;
  j["gv_base_samples"] = s.gv_base_samples;
  return j;
}

SamplingConfig sampling_from_json(const Json& j, SamplingConfig s) {
  const std::string w = "config.sampling";
  reject_unknown(j,
                 {"base_samples", "directions", "refine_spacing", "refine_extent", "l24_base_samples",
                  "l24_directions", "l24_family_grid", "l24_nu_fraction", "l24_floor", "l24_resolution",
                  "witness_keep", "gv_base_samples"},
                 w);
  read_field(j, "base_samples", s.base_samples, w);
  read_field(j, "directions", s.directions, w);
  read_field(j, "refine_spacing", s.refine_spacing, w);
  read_field(j, "refine_extent", s.refine_extent, w);
  read_field(j, "l24_base_samples", s.l24_base_samples, w);
  read_field(j, "l24_directions", s.l24_directions, w);
  read_field(j, "l24_family_grid", s.l24_family_grid, w);
  read_field(j, "l24_nu_fraction", s.l24_nu_fraction, w);
  read_field(j, "l24_floor", s.l24_floor, w);
  read_field(j, "l24_resolution", s.l24_resolution, w);
  read_field(j, "witness_keep", s.witness_keep, w);
  read_field(j, "gv_base_samples", s.gv_base_samples, w);
  return s;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidInputError("config: " + what); };
  if (!(spread >= 0.0 && spread < 0.3)) fail("spread must lie in [0, 0.3)");
  if (!(eps_frac > 0.0 && eps_frac < 1.0)) fail("eps_frac must lie in (0, 1)");
  if (sampling.base_samples < 1 || sampling.gv_base_samples < 1 || sampling.l24_base_samples < 1) {
    fail("base sample counts must be positive");
  }
  if (sampling.directions < 16) fail("directions must be at least 16");
  if (sampling.l24_directions < 1 || sampling.l24_family_grid < 2) fail("near-antipodal sampling too small");
  if (!(sampling.refine_spacing > 0.0) || !(sampling.refine_extent >= 0.0)) fail("refinement rings invalid");
  if (!(sampling.l24_nu_fraction > 0.0 && sampling.l24_nu_fraction <= 1.0)) fail("l24_nu_fraction must lie in (0, 1]");
  if (!(sampling.l24_floor > 0.0 && sampling.l24_floor < 0.5 * kPi)) fail("l24_floor must lie in (0, pi/2)");
  if (!(sampling.l24_resolution > 0.0)) fail("l24_resolution must be positive");
  if (sampling.witness_keep < 0) fail("witness_keep must be >= 0");
  if (quad_order < 2 || quad_order > 64) fail("quadrature order must lie in [2, 64]");
  if (!(quad_tol >= 0.0) || quad_max_depth < 0) fail("quadrature tolerance invalid");
  if (mesh_level < 0 || mesh_level > kMaxMeshLevel) fail("mesh_level must lie in [0, 8]");
  for (double t : t_grid) {
    if (!std::isfinite(t)) fail("t grid entries must be finite");
  }
  if (format != "json" && format != "csv") fail("format must be json or csv");
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["spread"] = cfg.spread;
  j["eps_frac"] = cfg.eps_frac;
  j["sampling"] = sampling_json(cfg.sampling);
  j["quadrature"] = {{"order", cfg.quad_order}, {"tol_per_radian", cfg.quad_tol}, {"max_depth", cfg.quad_max_depth}};
  j["mesh_level"] = cfg.mesh_level;
  j["t_grid"] = cfg.t_grid;
  return j;
}

RunConfig run_config_from_json(const Json& j, RunConfig cfg) {
  const std::string w = "config";
  reject_unknown(j, {"seed", "spread", "eps_frac", "sampling", "quadrature", "mesh_level", "t_grid"}, w);
  read_field(j, "seed", cfg.seed, w);
  read_field(j, "spread", cfg.spread, w);
  read_field(j, "eps_frac", cfg.eps_frac, w);
  if (j.contains("sampling")) cfg.sampling = sampling_from_json(j["sampling"], cfg.sampling);
  if (j.contains("quadrature")) {
    const Json& q = j["quadrature"];
    reject_unknown(q, {"order", "tol_per_radian", "max_depth"}, "config.quadrature");
    read_field(q, "order", cfg.quad_order, "config.quadrature");
    read_field(q, "tol_per_radian", cfg.quad_tol, "config.quadrature");
    read_field(q, "max_depth", cfg.quad_max_depth, "config.quadrature");
  }
  read_field(j, "mesh_level", cfg.mesh_level, w);
  read_field(j, "t_grid", cfg.t_grid, w);
  cfg.validate();
  return cfg;
}

QuadratureRule quadrature_for(const RunConfig& cfg, double epsilon) {
  return QuadratureRule(cfg.quad_order, std::min(0.25 * epsilon, 0.05), cfg.quad_tol, cfg.quad_max_depth);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }
Json point_json(const SpherePoint& p) { return vec_json(p.vec()); }

Vec3 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidInputError("expected a 3-vector");
  Vec3 v;
  try {
    v = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("bad 3-vector: ") + e.what());
  }
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) throw InvalidInputError("non-finite vector");
  return v;
}

SpherePoint point_from_json(const Json& j) {
  const Vec3 v = vec_from_json(j);
  if (std::abs(norm(v) - 1.0) > 1e-9) throw InvalidInputError("point is not a unit vector");
  return SpherePoint(v);
}

Json margins_json(const FinenessReport& r) {
  Json j;
  j["collinearity"] = r.margins.collinearity;
  j["concurrency"] = r.margins.concurrency;
  j["hemisphere"] = r.margins.hemisphere;
  j["hemisphere_certified"] = r.margins.hemisphere_certified;
  j["hemisphere_grid_level"] = r.margins.hemisphere_grid_level;
  return j;
}

Json witness_json(const PathWitness& w) {
  Json j;
  j["start"] = point_json(w.start);
  j["dir"] = vec_json(w.dir);
  j["gamma_length"] = w.gamma_length;
  j["theta"] = w.theta;
  j["round_length"] = w.round_length;
  j["integral"] = w.integral;
  return j;
}

PathWitness path_witness_from_json(const Json& j) {
  const std::string w = "witness";
  PathWitness out;
  out.start = point_from_json(required<Json>(j, "start", w));
  out.dir = vec_from_json(required<Json>(j, "dir", w));
  out.gamma_length = required<double>(j, "gamma_length", w);
  out.theta = required<double>(j, "theta", w);
  out.round_length = required<double>(j, "round_length", w);
  out.integral = required<double>(j, "integral", w);
  if (!(out.gamma_length > 0.0 && out.gamma_length <= kPi)) throw InvalidInputError("witness: bad gamma_length");
  return out;
}

Json certificate_body(const GoodnessCertificate& c) {
  Json j;
  j["epsilon"] = c.epsilon;
  j["nu_hat"] = c.nu_hat;
  j["max_semicircle_gap"] = c.max_semicircle_gap;
  j["lemma24_eps"] = c.lemma24_eps;
  j["lemma24_nu"] = c.lemma24_nu;
  j["gv_max_gap"] = c.gv_max_gap;
  j["base_points"] = c.base_points;
  j["samples"] = c.samples;
  j["gv_samples"] = c.gv_samples;
  j["quadrature_id"] = c.quadrature_id;
  j["worst_sample"] = {{"base", point_json(c.worst.base)},
                       {"v_angle", c.worst.v_angle},
                       {"w_angle", c.worst.w_angle},
                       {"integral", c.worst.integral}};
  Json ws = Json::array();
  for (const auto& w : c.lemma24_witnesses) ws.push_back(witness_json(w));
  j["lemma24_witnesses"] = std::move(ws);
  return j;
}

Json diameter_report_json(const DiameterReport& r) {
  Json j;
  j["t"] = r.t;
  j["level"] = r.level;
  j["covering_radius"] = r.covering_radius;
  j["graph_diameter"] = r.graph_diameter;
  j["certified_bound"] = r.certified_bound;
  j["margin_below_pi"] = r.margin_below_pi;
  j["success"] = r.success;
  j["diametral_pair"] = {r.from, r.to};
  j["sources"] = r.sources;
  j["fd_epsilon_note"] = r.fd_epsilon_note;
  return j;
}

Json shortcut_report_json(const ShortcutReport& r) {
  Json j;
  j["t"] = r.t;
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  j["min_slack"] = r.min_slack;
  j["min_gain"] = r.min_gain;
  return j;
}

FineSet fineset_from_json(const Json& j) {
  const std::string w = "fineset";
  const Json pts = required<Json>(j, "points", w);
  if (!pts.is_array() || pts.size() < 3) throw InvalidInputError("fineset: need at least 3 points");
  std::vector<SpherePoint> points;
  for (const auto& p : pts) points.push_back(point_from_json(p));

  const Json margins = required<Json>(j, "margins", w);
  for (const char* key : {"collinearity", "concurrency", "hemisphere"}) {
    const double m = required<double>(margins, key, "fineset.margins");
    if (!(m > 0.0)) throw InvalidInputError(std::string("fineset: ") + key + " margin is not positive");
  }
  const double stored_eps = required<double>(j, "epsilon_sigma", w);
  if (!(stored_eps > 0.0)) throw InvalidInputError("fineset: epsilon_sigma is not positive");

  const FinenessReport report = evaluate_fineness(points);
  if (!report.fine()) throw InvalidInputError("fineset: points fail fineness (" + report.failures() + ")");
  if (std::abs(report.epsilon_sigma - stored_eps) > 1e-12 * std::max(1.0, stored_eps)) {
    throw InvalidInputError("fineset: epsilon_sigma does not match the points");
  }
  if (std::abs(report.margins.hemisphere - required<double>(margins, "hemisphere", "fineset.margins")) > 1e-12) {
    throw InvalidInputError("fineset: hemisphere margin does not match the points");
  }
  return FineSet{std::move(points), report.margins, report.epsilon_sigma};
}

}  // namespace zoll
