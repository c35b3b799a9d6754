#include "zoll/commands.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "zoll/errors.hpp"

namespace zoll {

namespace fs = std::filesystem;

namespace {

// Shortest round-trip decimal form.
std::string shortest(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json header(const char* artifact, const RunConfig& cfg, Json inputs) {
  Json j;
  j["artifact"] = artifact;
  j["config"] = to_json(cfg);
  j["inputs"] = std::move(inputs);
  return j;
}

// Parsed artifact file together with its content hash.
struct Loaded {
  Json json;
  std::string sha;
};

Loaded load(const fs::path& path, const char* artifact) {
  if (!fs::exists(path)) throw InvalidInputError(std::string("missing ") + artifact + " file " + path.string());
  const std::string text = read_file(path);
  Loaded out;
  out.sha = sha256_hex(text);
  try {
    out.json = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
  if (!out.json.is_object() || out.json.value("artifact", "") != artifact) {
    throw InvalidInputError(path.string() + ": not a " + artifact + " artifact");
  }
  return out;
}

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInputError(std::string(where) + ": missing '" + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key, const char* where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) throw InvalidInputError(std::string(where) + ": '" + key + "' is not a number");
  return v.get<double>();
}

Json fineness_json(const FinenessReport& report) {
  Json j;
  j["fine"] = report.fine();
  j["failures"] = report.failures();
  j["margins"] = margins_json(report);
  j["epsilon_sigma"] = report.epsilon_sigma;
  return j;
}

}  // namespace

ArtifactPaths ArtifactPaths::in(const fs::path& dir) {
  return {dir / "fineset.json", dir / "certificate.json", dir / "diameter.json"};
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto points = generate_perturbed_tetrahedron(cfg.seed, cfg.spread);
  const FinenessReport report = evaluate_fineness(points);
  const fs::path dir(cfg.out_dir);
  if (!report.fine()) {
    Json j = header("fineness", cfg, Json::object());
    j.update(fineness_json(report));
    write_json(dir / "fineness.json", j);
    out << "fineness failed: " << report.failures() << "\n";
    return kExitFineness;
  }
  Json j = header("fineset", cfg, Json::object());
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(point_json(p));
  j["points"] = std::move(pts);
  j["margins"] = margins_json(report);
  j["epsilon_sigma"] = report.epsilon_sigma;
  write_json(dir / "fineset.json", j);
  out << "fine set of " << points.size() << " points, eps(Sigma) = " << shortest(report.epsilon_sigma) << "\n";
  return kExitOk;
}

int cmd_verify_fine(const RunConfig& cfg, const std::optional<fs::path>& points_file, bool tetrahedron,
                    std::ostream& out) {
  cfg.validate();
  std::vector<SpherePoint> points;
  Json inputs = Json::object();
  if (tetrahedron) {
    points = tetrahedron_vertices();
  } else {
    const fs::path path = points_file.value_or(ArtifactPaths::in(cfg.out_dir).fineset);
    if (!fs::exists(path)) throw InvalidInputError("missing point file " + path.string());
    const std::string text = read_file(path);
    inputs[path.filename().string()] = sha256_hex(text);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInputError(path.string() + ": " + e.what());
    }
    const Json& pts = field(j, "points", "point file");
    if (!pts.is_array() || pts.size() < 3) throw InvalidInputError("point file: need at least 3 points");
    for (const auto& p : pts) points.push_back(point_from_json(p));
  }
  const FinenessReport report = evaluate_fineness(points);
  Json j = header("fineness", cfg, inputs);
  j["source"] = tetrahedron ? "tetrahedron" : "file";
  j.update(fineness_json(report));
  write_json(fs::path(cfg.out_dir) / "fineness.json", j);
  if (!report.fine()) {
    out << "fineness failed: " << report.failures() << "\n";
    return kExitFineness;
  }
  out << "fine: collinearity " << shortest(report.margins.collinearity) << ", concurrency "
      << shortest(report.margins.concurrency) << ", hemisphere " << shortest(report.margins.hemisphere) << "\n";
  return kExitOk;
}

int cmd_agood(const RunConfig& cfg, const fs::path& fineset_path, std::ostream& out) {
  cfg.validate();
  const Loaded in = load(fineset_path, "fineset");
  const FineSet set = fineset_from_json(in.json);
  const double eps = cfg.eps_frac * set.epsilon_sigma;
  const OddBumpSum f(set, eps);
  const QuadratureRule rule = quadrature_for(cfg, eps);
  const GoodnessCertificate cert = certify_goodness(f, set.epsilon_sigma, cfg.sampling, rule);

  Json j = header("certificate", cfg, {{fineset_path.filename().string(), in.sha}});
  j.update(certificate_body(cert));
  const fs::path dir(cfg.out_dir);
  write_json(dir / "certificate.json", j);
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "x,y,z,v_angle,w_angle,integral\n";
    for (const auto& w : cert.witnesses) {
      csv << shortest(w.base.x()) << ',' << shortest(w.base.y()) << ',' << shortest(w.base.z()) << ',' << shortest(w.v_angle) << ','
          << shortest(w.w_angle) << ',' << shortest(w.integral) << '\n';
    }
    write_text(dir / "witnesses.csv", csv.str());
  }
  out << "A-good: nu_hat = " << shortest(cert.nu_hat) << ", max gap = " << shortest(cert.max_semicircle_gap)
      << ", near-antipodal eps = " << shortest(cert.lemma24_eps) << "\n";
  return kExitOk;
}

int cmd_diameter(const RunConfig& cfg, const fs::path& fineset_path, const fs::path& certificate_path,
                 std::ostream& out) {
  cfg.validate();
  const Loaded fin = load(fineset_path, "fineset");
  const Loaded cer = load(certificate_path, "certificate");
  const FineSet set = fineset_from_json(fin.json);

  const Json& chain = field(cer.json, "inputs", "certificate");
  bool linked = false;
  for (const auto& [name, sha] : chain.items()) linked = linked || (sha.is_string() && sha.get<std::string>() == fin.sha);
  if (!linked) throw InvalidInputError("certificate was not issued for this fineset");
  const double eps = number(cer.json, "epsilon", "certificate");
  if (!(eps > 0.0 && eps < set.epsilon_sigma)) throw InvalidInputError("certificate: epsilon out of range");
  if (!(number(cer.json, "nu_hat", "certificate") > 0.0)) throw InvalidInputError("certificate: nu_hat not positive");
  const double l24_eps = number(cer.json, "lemma24_eps", "certificate");
  std::vector<PathWitness> witnesses;
  const Json& ws = field(cer.json, "lemma24_witnesses", "certificate");
  if (!ws.is_array()) throw InvalidInputError("certificate: witnesses must be a list");
  for (const auto& w : ws) witnesses.push_back(path_witness_from_json(w));

  const OddBumpSum f(set, eps);
  const QuadratureRule rule = quadrature_for(cfg, eps);
  for (double t : cfg.t_grid) require_positive_factor(f, t);

  DiameterSolver solver(cfg.mesh_level);
  const DiameterReport baseline = certify_diameter_drop(f, 0.0, solver, rule, l24_eps);

  Json rows = Json::array();
  std::ostringstream csv;
  csv << "t,graph_diameter,certified_bound\n";
  bool any = false;
  Json best = nullptr;
  for (double t : cfg.t_grid) {
    const DiameterReport r = certify_diameter_drop(f, t, solver, rule, l24_eps);
    const ShortcutReport s = shortcut_length_check(f, t, witnesses, rule);
    Json row = diameter_report_json(r);
    row["shortcuts"] = shortcut_report_json(s);
    rows.push_back(std::move(row));
    csv << shortest(t) << ',' << shortest(r.graph_diameter) << ',' << shortest(r.certified_bound) << '\n';
    if (best.is_null() || r.certified_bound < best["certified_bound"].get<double>()) {
      best = {{"t", t}, {"certified_bound", r.certified_bound}};
    }
    any = any || r.success;
  }

  Json j = header("diameter", cfg,
                  {{fineset_path.filename().string(), fin.sha}, {certificate_path.filename().string(), cer.sha}});
  j["f_id"] = fin.sha.substr(0, 16) + "/eps=" + shortest(eps);
  j["epsilon"] = eps;
  j["level"] = cfg.mesh_level;
  j["covering_radius"] = solver.graph().covering_radius();
  j["baseline"] = diameter_report_json(baseline);
  j["rows"] = std::move(rows);
  j["best"] = best;
  j["any_success"] = any;
  const fs::path dir(cfg.out_dir);
  write_json(dir / "diameter.json", j);
  write_text(dir / "diameter.csv", csv.str());
  out << "round graph diameter " << shortest(baseline.graph_diameter) << ", h = " << shortest(baseline.covering_radius) << "\n";
  if (!best.is_null()) {
    out << "best certified bound " << shortest(best["certified_bound"].get<double>()) << " at t = "
        << shortest(best["t"].get<double>()) << (any ? " (below pi)\n" : " (not below pi)\n");
  }
  return any ? kExitOk : kExitNoDrop;
}

int cmd_report(const RunConfig& cfg, const ArtifactPaths& paths, std::ostream& out) {
  const Loaded fin = load(paths.fineset, "fineset");
  const Loaded cer = load(paths.certificate, "certificate");
  const Loaded dia = load(paths.diameter, "diameter");
  fineset_from_json(fin.json);

  Json s = header("summary", cfg,
                  {{paths.fineset.filename().string(), fin.sha},
                   {paths.certificate.filename().string(), cer.sha},
                   {paths.diameter.filename().string(), dia.sha}});
  s["margins"] = field(fin.json, "margins", "fineset");
  s["epsilon_sigma"] = number(fin.json, "epsilon_sigma", "fineset");
  s["epsilon"] = number(cer.json, "epsilon", "certificate");
  s["nu_hat"] = number(cer.json, "nu_hat", "certificate");
  s["max_semicircle_gap"] = number(cer.json, "max_semicircle_gap", "certificate");
  s["lemma24_eps"] = number(cer.json, "lemma24_eps", "certificate");
  s["gv_max_gap"] = number(cer.json, "gv_max_gap", "certificate");
  s["level"] = field(dia.json, "level", "diameter");
  s["round_graph_diameter"] = number(field(dia.json, "baseline", "diameter"), "graph_diameter", "diameter.baseline");
  s["best"] = field(dia.json, "best", "diameter");
  const Json& any = field(dia.json, "any_success", "diameter");
  if (!any.is_boolean()) throw InvalidInputError("diameter: any_success must be a boolean");
  s["success"] = any.get<bool>();
  const fs::path dir(cfg.out_dir);
  write_json(dir / "summary.json", s);

  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "key,value\n";
    for (const char* key : {"epsilon_sigma", "epsilon", "nu_hat", "max_semicircle_gap", "lemma24_eps", "gv_max_gap",
                            "round_graph_diameter"}) {
      csv << key << ',' << shortest(s[key].get<double>()) << '\n';
    }
    csv << "success," << (s["success"].get<bool>() ? "true" : "false") << '\n';
    write_text(dir / "summary.csv", csv.str());
  }

  const Json& m = s["margins"];
  out << "collinearity margin  " << shortest(m.value("collinearity", 0.0)) << "\n"
      << "concurrency margin   " << shortest(m.value("concurrency", 0.0)) << "\n"
      << "hemisphere margin    " << shortest(m.value("hemisphere", 0.0)) << "\n"
      << "eps(Sigma)           " << shortest(s["epsilon_sigma"].get<double>()) << "\n"
      << "bump radius          " << shortest(s["epsilon"].get<double>()) << "\n"
      << "nu_hat               " << shortest(s["nu_hat"].get<double>()) << "\n"
      << "max semicircle gap   " << shortest(s["max_semicircle_gap"].get<double>()) << "\n"
      << "near-antipodal eps   " << shortest(s["lemma24_eps"].get<double>()) << "\n"
      << "round graph diameter " << shortest(s["round_graph_diameter"].get<double>()) << "\n";
  if (!s["best"].is_null()) {
    out << "best bound           " << shortest(s["best"].value("certified_bound", 0.0)) << " at t = "
        << shortest(s["best"].value("t", 0.0)) << "\n";
  }
  out << "diameter drop        " << (s["success"].get<bool>() ? "certified" : "not certified") << "\n";
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const FinenessError& e) {
    err << "fineness error (" << to_string(e.condition()) << "): " << e.what() << "\n";
    return kExitFineness;
  } catch (const GoodnessError& e) {
    err << "A-goodness failure: " << e.what() << "\n";
    return kExitGoodness;
  } catch (const InvalidInputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const DegenerateMetricError& e) {
    err << "degenerate metric: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace zoll
