#pragma once

// JSON forms of the pipeline artifacts and the run configuration.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "zoll/deformation.hpp"
#include "zoll/fine_sets.hpp"
#include "zoll/goodness.hpp"

namespace zoll {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::uint64_t seed = 42;
  double spread = 0.1;
  double eps_frac = 0.5;  // epsilon = eps_frac * eps(Sigma)
  SamplingConfig sampling;
  int quad_order = 8;
  double quad_tol = 1e-12;
  int quad_max_depth = 40;
  int mesh_level = 6;
  std::vector<double> t_grid = {0.02, 0.05, 0.1, 0.2, 0.4};
  // Not serialized: artifacts must not depend on where they are written.
  std::string out_dir = "out";
  std::string format = "json";

  // Throws InvalidInputError on out-of-range fields.
  void validate() const;
};

Json to_json(const RunConfig& cfg);
// Missing keys keep their defaults; unknown keys throw InvalidInputError.
RunConfig run_config_from_json(const Json& j, RunConfig base = {});

QuadratureRule quadrature_for(const RunConfig& cfg, double epsilon);

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::filesystem::path& path);
// Parses a JSON file; InvalidInputError if missing or malformed.
Json read_json(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

Json point_json(const SpherePoint& p);
Json vec_json(const Vec3& v);
SpherePoint point_from_json(const Json& j);
Vec3 vec_from_json(const Json& j);

Json margins_json(const FinenessReport& report);
Json witness_json(const PathWitness& w);
PathWitness path_witness_from_json(const Json& j);
Json certificate_body(const GoodnessCertificate& cert);
Json diameter_report_json(const DiameterReport& r);
Json shortcut_report_json(const ShortcutReport& r);

// Validates the point list and fineness fields of a fineset artifact;
// InvalidInputError on any inconsistency.
FineSet fineset_from_json(const Json& j);

}  // namespace zoll
