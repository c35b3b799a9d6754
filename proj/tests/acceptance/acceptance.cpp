// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "zoll/bump.hpp"
#include "zoll/commands.hpp"
#include "zoll/deformation.hpp"
#include "zoll/errors.hpp"
#include "zoll/fine_sets.hpp"
#include "zoll/goodness.hpp"
#include "zoll/io.hpp"
#include "zoll/random.hpp"

using namespace zoll;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void verdict(const char* id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Chord of B(c, eps) whose carrying circle passes at distance `offset`.
GeodesicSegment chord_at(const SpherePoint& c, double eps, double offset, double angle) {
  const Vec3 u = UnitTangent::at_angle(c, angle).dir();
  const Vec3 foot = std::cos(offset) * c.vec() + std::sin(offset) * u;
  const Vec3 along = cross(c.vec(), u);
  const double half = std::acos(std::cos(eps) / std::cos(offset));
  const SpherePoint start(std::cos(half) * foot - std::sin(half) * along);
  return GeodesicSegment(UnitTangent(start, std::sin(half) * foot + std::cos(half) * along), 2 * half);
}

void ac1() {
  const auto start = Clock::now();
  const FinenessReport r = evaluate_fineness(generate_perturbed_tetrahedron(42, 0.1));
  const FinenessReport control = evaluate_fineness(tetrahedron_vertices());
  const double secs = seconds_since(start);
  const bool pass = r.fine() && r.margins.collinearity > 0 && r.margins.concurrency > 0 && r.margins.hemisphere > 0 &&
                    r.epsilon_sigma > 0 && !control.hemisphere_ok && secs < 10.0;
  std::ostringstream os;
  os << "fineness: collinearity " << r.margins.collinearity << ", concurrency " << r.margins.concurrency
     << ", hemisphere " << r.margins.hemisphere << ", eps(Sigma) " << r.epsilon_sigma
     << "; bare tetrahedron fails [" << control.failures() << "]; " << fmt("%.2f s", secs);
  verdict("AC1", pass, os.str());
}

void ac2(const FineSet& set, const OddBumpSum& f) {
  const auto start = Clock::now();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  double center_err = 0.0;
  for (const auto& p : set.points) center_err = std::max({center_err, std::abs(f(p) + 1.0), std::abs(f(-p) - 1.0)});

  Rng rng(2002);
  double odd_err = 0.0;
  for (int i = 0; i < 100000; ++i) {
    SpherePoint q = rng.point();
    if (i % 2) {
      const SpherePoint& c = f.center(static_cast<std::size_t>(rng.next() % f.bump_count()));
      q = GeodesicSegment(UnitTangent::at_angle(c, rng.uniform(0.0, kTwoPi)), f.epsilon() * rng.uniform()).end();
    }
    odd_err = std::max(odd_err, std::abs(f(q) + f(-q)));
  }

  double circle_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    UnitTangent v = rng.tangent();
    // Half of the circles are forced through a bump center.
    if (i % 2) v = UnitTangent::toward(v.base(), f.center(static_cast<std::size_t>(i) % f.bump_count()));
    circle_err = std::max(circle_err, std::abs(f.line_integral(great_circle(v), rule)));
  }

  // Gaps on the shipped bump radius: diameters vanish, other chords are
  // strictly positive.
  double min_gap = 1.0;
  double diameter_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BumpFunction b(f.center(static_cast<std::size_t>(rng.next() % f.bump_count())), f.epsilon());
    if (i % 10 == 0) {
      diameter_gap = std::max(diameter_gap, std::abs(chord_vs_diameter_gap(b, chord_at(b.center(), b.radius(), 0.0, rng.uniform(0.0, kTwoPi)), rule)));
    } else {
      const double offset = b.radius() * rng.uniform(1e-3, 1.0);
      min_gap = std::min(min_gap, chord_vs_diameter_gap(b, chord_at(b.center(), b.radius(), offset, rng.uniform(0.0, kTwoPi)), rule));
    }
  }
  const double secs = seconds_since(start);
  const bool pass = center_err <= 1e-12 && odd_err < 1e-14 && circle_err < 1e-10 && min_gap > 0.0 &&
                    diameter_gap <= 1e-9 && secs < 30.0;
  std::ostringstream os;
  os << "bumps: center error " << center_err << ", oddness " << odd_err << ", great circles " << circle_err
     << ", diameter gap " << diameter_gap << ", min chord gap " << min_gap << "; " << fmt("%.2f s", secs);
  verdict("AC2", pass, os.str());
}

void ac3(const OddBumpSum& f) {
  const auto start = Clock::now();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  const ScalarField field = f.as_field();
  Rng rng(3003);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    // Legs aimed at bump centers, some with a small miss.
    GeodesicPath path;
    SpherePoint at = rng.point();
    const int legs = 1 + static_cast<int>(rng.next() % 4);
    for (int k = 0; k < legs; ++k) {
      const SpherePoint& c = f.center(static_cast<std::size_t>(rng.next() % f.bump_count()));
      const double to_c = distance0(at, c);
      const double miss = (k % 2) * rng.uniform(-1.0, 1.0) * f.epsilon() * f.epsilon();
      const UnitTangent v = UnitTangent::at_angle(at, tangent_angle(at, UnitTangent::toward(at, c).dir()) + miss / std::sin(to_c));
      path.emplace_back(v, std::min(kTwoPi, to_c + rng.uniform(0.01, 1.0)));
      at = path.back().end();
    }
    // Large t keeps the cancellation in E_t - E_0 small next to t * integral.
    const double t = 0.5;
    const double dq = (energy_t(field, t, path, rule) - energy_t(field, 0.0, path, rule)) / t;
    const double ref = f.line_integral(path, rule);
    worst = std::max(worst, std::abs(dq - ref) / std::abs(ref));
  }
  const double secs = seconds_since(start);
  verdict("AC3", worst < 1e-8,
          "first-order energy variation: worst relative error " + fmt("%.3g", worst) + " on 100 paths; " +
              fmt("%.2f s", secs));
}

struct GoodnessRun {
  bool ok = false;
  GoodnessCertificate cert;
};

GoodnessRun ac4(const FineSet& set, const OddBumpSum& f) {
  GoodnessRun run;
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  const SamplingConfig cfg;
  const auto start = Clock::now();
  try {
    run.cert = certify_goodness(f, set.epsilon_sigma, cfg, rule);
  } catch (const Error& e) {
    verdict("AC4", false, std::string("certificate failed: ") + e.what());
    return run;
  }
  const double secs = seconds_since(start);

  // Both densities doubled; the refinement rings stay as they are.
  SamplingConfig dense = cfg;
  dense.base_samples *= 2;
  dense.directions *= 2;
  const auto start2 = Clock::now();
  double nu2 = 0.0;
  try {
    nu2 = estimate_nu(f, dense, rule).nu_hat;
  } catch (const Error& e) {
    verdict("AC4", false, std::string("doubled sampling failed: ") + e.what());
    return run;
  }
  const double secs2 = seconds_since(start2);
  const double change = std::abs(nu2 - run.cert.nu_hat) / run.cert.nu_hat;
  const bool pass = run.cert.nu_hat > 0.0 && run.cert.max_semicircle_gap < kPi && run.cert.lemma24_eps > 1e-3 &&
                    run.cert.base_points >= 10000 && cfg.directions >= 512 && change < 0.2 && secs < 600.0;
  std::ostringstream os;
  os << "A-goodness: nu_hat " << run.cert.nu_hat << " over " << run.cert.base_points << " bases x " << cfg.directions
     << " dirs, max gap " << run.cert.max_semicircle_gap << ", near-antipodal eps " << run.cert.lemma24_eps
     << "; doubled nu_hat " << nu2 << " (change " << fmt("%.1f%%", 100 * change) << "); " << fmt("%.1f s", secs)
     << " + " << fmt("%.1f s", secs2);
  verdict("AC4", pass, os.str());
  run.ok = pass;
  return run;
}

void ac5(const FineSet& set, const OddBumpSum& f) {
  const auto start = Clock::now();
  const SamplingConfig cfg;
  const GvReport r = gv_y_like_check(set.points, set.epsilon_sigma, cfg.gv_base_samples, f.epsilon(), cfg);
  const GvReport control = gv_y_like_check(tetrahedron_vertices(), 0.05, cfg.gv_base_samples, 0.05, cfg);
  std::ostringstream os;
  os << "through-point directions: max gap " << r.max_gap << " over " << r.samples << " bases"
     << "; bare tetrahedron control max gap " << control.max_gap << (control.all_y_like ? " (Y-like)" : " (not Y-like)")
     << "; " << fmt("%.1f s", seconds_since(start));
  verdict("AC5", r.all_y_like && r.max_gap < kPi, os.str());
}

void ac6(const OddBumpSum& f, const GoodnessRun& good) {
  const auto start = Clock::now();
  const RunConfig defaults;
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  const std::vector<double>& grid = defaults.t_grid;
  std::ostringstream os;
  bool pass = good.ok;

  // Best certified bound per level over the grid.
  std::vector<double> best_by_level;
  bool any_success = false;
  DiameterReport base6;
  double level6_secs = 0.0;
  for (int level = 4; level <= 6; ++level) {
    const auto level_start = Clock::now();
    DiameterSolver solver(level);
    const DiameterReport base = certify_diameter_drop(f, 0.0, solver, rule);
    double best = base.certified_bound;
    for (double t : grid) {
      const DiameterReport r = certify_diameter_drop(f, t, solver, rule);
      best = std::min(best, r.certified_bound);
      any_success = any_success || r.success;
    }
    best_by_level.push_back(best);
    if (level == 6) {
      base6 = base;
      level6_secs = seconds_since(level_start);
    }
  }
  const double h = base6.covering_radius;
  const bool sane = base6.certified_bound > kPi && base6.graph_diameter > kPi && base6.graph_diameter <= kPi + 3 * h;
  const bool monotone = best_by_level[0] > best_by_level[1] && best_by_level[1] > best_by_level[2];

  // Witness paths get shorter, more so for larger t.
  bool shortcuts = !good.cert.lemma24_witnesses.empty();
  double last_slack = -1.0;
  std::ostringstream slacks;
  for (double t : grid) {
    const ShortcutReport s = shortcut_length_check(f, t, good.cert.lemma24_witnesses, rule);
    shortcuts = shortcuts && s.ok() && s.min_slack > last_slack;
    last_slack = s.min_slack;
    slacks << (slacks.tellp() > 0 ? "," : "") << s.min_slack;
  }
  pass = pass && sane && monotone && shortcuts && level6_secs < 900.0;
  os << "diameter: level 6 round graph diameter " << base6.graph_diameter << " in (pi, pi+3h=" << kPi + 3 * h
     << "], t=0 bound " << base6.certified_bound << "; best bound by level 4/5/6 " << best_by_level[0] << "/"
     << best_by_level[1] << "/" << best_by_level[2] << "; witness slack by t " << slacks.str() << "; drop below pi "
     << (any_success ? "achieved" : "not achieved") << "; level 6 " << fmt("%.1f s", level6_secs) << ", total "
     << fmt("%.1f s", seconds_since(start));
  verdict("AC6", pass, os.str());
}

void ac7() {
  const auto start = Clock::now();
  RunConfig cfg;
  cfg.sampling.base_samples = 2000;
  cfg.sampling.directions = 128;
  cfg.sampling.gv_base_samples = 2000;
  cfg.sampling.l24_base_samples = 200;
  cfg.mesh_level = 4;
  std::vector<fs::path> dirs;
  bool ran = true;
  for (const char* name : {"zoll_acceptance_a", "zoll_acceptance_b"}) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    cfg.out_dir = dir.string();
    const ArtifactPaths paths = ArtifactPaths::in(dir);
    std::ostringstream sink;
    ran = ran && run_guarded([&] { return cmd_generate(cfg, sink); }, sink) == kExitOk;
    ran = ran && run_guarded([&] { return cmd_agood(cfg, paths.fineset, sink); }, sink) == kExitOk;
    const int code = run_guarded([&] { return cmd_diameter(cfg, paths.fineset, paths.certificate, sink); }, sink);
    ran = ran && (code == kExitOk || code == kExitNoDrop);
    ran = ran && run_guarded([&] { return cmd_report(cfg, paths, sink); }, sink) == kExitOk;
    dirs.push_back(dir);
  }
  std::size_t compared = 0;
  bool same = ran;
  for (const char* file : {"fineset.json", "certificate.json", "diameter.json", "summary.json"}) {
    if (!fs::exists(dirs[0] / file) || !fs::exists(dirs[1] / file)) {
      same = false;
      continue;
    }
    same = same && read_file(dirs[0] / file) == read_file(dirs[1] / file);
    ++compared;
  }
  verdict("AC7", same && compared == 4,
          "determinism: " + std::to_string(compared) + " JSON artifacts compared across two runs, " +
              (same ? "byte-identical" : "differ") + "; " + fmt("%.1f s", seconds_since(start)));
}

}  // namespace

int main() {
  ac1();
  const FineSet set = certify_fine_set(generate_perturbed_tetrahedron(42, 0.1));
  const OddBumpSum f(set, RunConfig{}.eps_frac * set.epsilon_sigma);
  ac2(set, f);
  ac3(f);
  const GoodnessRun good = ac4(set, f);
  ac5(set, f);
  ac6(f, good);
  ac7();
  return failures == 0 ? 0 : 1;
}
