// zollcert: generate a fine set, certify A-goodness of its odd bump sum and
// bound the diameter of the deformed metric.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "zoll/commands.hpp"
#include "zoll/errors.hpp"

using namespace zoll;

int main(int argc, char** argv) {
  CLI::App app{"Certified diameter bounds for first-order Zoll deformations"};
  app.require_subcommand(1);

  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<double> spread;
  std::optional<double> eps_frac;
  std::optional<int> dirs;
  std::optional<int> base_samples;
  std::optional<int> mesh_level;
  std::vector<double> t_grid;
  std::string out_dir = "out";
  std::string format = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "RunConfig JSON; flags override it");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--spread", spread, "cap radius of the perturbation (rad)");
    sub->add_option("--eps-frac", eps_frac, "bump radius as a fraction of eps(Sigma)");
    sub->add_option("--dirs", dirs, "directions per base point");
    sub->add_option("--base-samples", base_samples, "lattice base points");
    sub->add_option("--mesh-level", mesh_level, "icosphere subdivision level");
    sub->add_option("--t-grid", t_grid, "deformation parameters")->delimiter(',');
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* generate = app.add_subcommand("generate", "perturbed tetrahedron and fineness margins");
  auto* verify = app.add_subcommand("verify-fine", "re-check fineness of a point file");
  auto* agood = app.add_subcommand("agood", "A-goodness certificate");
  auto* diameter = app.add_subcommand("diameter", "diameter bounds over the t grid");
  auto* report = app.add_subcommand("report", "summary of all artifacts");
  for (auto* sub : {generate, verify, agood, diameter, report}) add_common(sub);

  std::string points_file;
  bool tetrahedron = false;
  verify->add_option("--points", points_file, "JSON file with a \"points\" list (default: <out>/fineset.json)");
  verify->add_flag("--tetrahedron", tetrahedron, "check the four bare tetrahedron vertices");
  std::string fineset_file;
  std::string certificate_file;
  std::string diameter_file;
  for (auto* sub : {agood, diameter, report}) sub->add_option("--fineset", fineset_file, "fineset artifact");
  for (auto* sub : {diameter, report}) sub->add_option("--certificate", certificate_file, "certificate artifact");
  report->add_option("--diameter", diameter_file, "diameter artifact");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  return run_guarded(
      [&]() -> int {
        RunConfig cfg;
        if (!config_file.empty()) cfg = run_config_from_json(read_json(config_file));
        if (seed) cfg.seed = *seed;
        if (spread) cfg.spread = *spread;
        if (eps_frac) cfg.eps_frac = *eps_frac;
        if (dirs) cfg.sampling.directions = *dirs;
        if (base_samples) {
          cfg.sampling.base_samples = *base_samples;
          cfg.sampling.gv_base_samples = *base_samples;
        }
        if (mesh_level) cfg.mesh_level = *mesh_level;
        if (!t_grid.empty()) cfg.t_grid = t_grid;
        cfg.out_dir = out_dir;
        cfg.format = format;
        cfg.validate();

        ArtifactPaths paths = ArtifactPaths::in(cfg.out_dir);
        if (!fineset_file.empty()) paths.fineset = fineset_file;
        if (!certificate_file.empty()) paths.certificate = certificate_file;
        if (!diameter_file.empty()) paths.diameter = diameter_file;

        if (generate->parsed()) return cmd_generate(cfg, std::cout);
        if (verify->parsed()) {
          std::optional<std::filesystem::path> file;
          if (!points_file.empty()) file = points_file;
          return cmd_verify_fine(cfg, file, tetrahedron, std::cout);
        }
        if (agood->parsed()) return cmd_agood(cfg, paths.fineset, std::cout);
        if (diameter->parsed()) return cmd_diameter(cfg, paths.fineset, paths.certificate, std::cout);
        return cmd_report(cfg, paths, std::cout);
      },
      std::cerr);
}
