#pragma once

// Pipeline steps behind the command-line tool. Each returns a process exit
// code and writes its artifacts below cfg.out_dir.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>

#include "zoll/io.hpp"

namespace zoll {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitFineness = 2,
  kExitGoodness = 3,
  kExitInvalidInput = 4,
  kExitNoDrop = 5,
  kExitDegenerate = 6,
};

struct ArtifactPaths {
  std::filesystem::path fineset;
  std::filesystem::path certificate;
  std::filesystem::path diameter;

  static ArtifactPaths in(const std::filesystem::path& dir);
};

int cmd_generate(const RunConfig& cfg, std::ostream& out);

// Re-checks a point file (default: the fineset artifact) or, with
// `tetrahedron`, the four bare tetrahedron vertices.
int cmd_verify_fine(const RunConfig& cfg, const std::optional<std::filesystem::path>& points_file, bool tetrahedron,
                    std::ostream& out);

int cmd_agood(const RunConfig& cfg, const std::filesystem::path& fineset, std::ostream& out);

int cmd_diameter(const RunConfig& cfg, const std::filesystem::path& fineset, const std::filesystem::path& certificate,
                 std::ostream& out);

int cmd_report(const RunConfig& cfg, const ArtifactPaths& paths, std::ostream& out);

// Runs `body`, mapping library errors onto exit codes and printing the
// message to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace zoll
