#include "zoll/goodness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zoll/errors.hpp"

namespace zoll {

namespace {

double wrap_2pi(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t >= kTwoPi ? 0.0 : t;
}

std::string describe(const SpherePoint& p, double v_angle) {
  std::ostringstream os;
  os.precision(17);
  os << "p = (" << p.x() << ", " << p.y() << ", " << p.z() << "), v angle = " << v_angle;
  return os.str();
}

// For every query angle (sorted, in [0, 2pi)), the entry of minimal
// (value, angle) among entries with angle strictly within pi/2 of it.
// Returns -1 for queries whose window is empty.
std::vector<long> window_minima(const std::vector<double>& angles, const std::vector<double>& values,
                                const std::vector<double>& queries) {
  const long n = static_cast<long>(angles.size());
  // Unrolled copy over three turns; index i maps to entry i % n.
  auto angle_of = [&](long i) { return angles[i % n] + kTwoPi * static_cast<double>(i / n - 1); };
  auto less = [&](long a, long b) {
    const double va = values[a % n];
    const double vb = values[b % n];
    if (va != vb) return va < vb;
    return angles[a % n] < angles[b % n];
  };
  std::vector<long> out(queries.size(), -1);
  if (n == 0) return out;
  std::deque<long> dq;
  long lo = 0;
  long hi = 0;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const double q = queries[k];
    while (hi < 3 * n && angle_of(hi) < q + 0.5 * kPi) {
      while (!dq.empty() && !less(dq.back(), hi)) dq.pop_back();
      dq.push_back(hi);
      ++hi;
    }
    while (lo < hi && !(angle_of(lo) > q - 0.5 * kPi)) ++lo;
    while (!dq.empty() && dq.front() < lo) dq.pop_front();
    if (!dq.empty()) out[k] = dq.front() % n;
  }
  return out;
}

std::vector<double> grid_angles(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = kTwoPi * k / n;
  return out;
}

}  // namespace

GeodesicPath PathWitness::path() const {
  const GeodesicSegment gamma(UnitTangent(start, dir), gamma_length);
  return MidpointFamily(gamma).member(theta);
}

std::vector<SpherePoint> sample_base_points(int lattice_size, std::span<const SpherePoint> centers, double eps,
                                            double spacing_fraction, double extent_fraction) {
  std::vector<SpherePoint> out = fibonacci_lattice(lattice_size);
  if (!(eps > 0.0) || !(spacing_fraction > 0.0) || !(extent_fraction > 0.0)) return out;
  const double h = spacing_fraction * eps;
  const int rings = static_cast<int>(std::ceil(extent_fraction / spacing_fraction - 1e-9));
  for (const auto& c : centers) {
    const auto [e1, e2] = tangent_frame(c);
    out.push_back(c);
    for (int k = 1; k <= rings; ++k) {
      const double r = k * h;
      const int m = std::max(6, static_cast<int>(std::ceil(kTwoPi * r / h)));
      for (int j = 0; j < m; ++j) {
        const double a = kTwoPi * j / m;
        out.emplace_back(std::cos(r) * c.vec() + std::sin(r) * (std::cos(a) * e1 + std::sin(a) * e2));
      }
    }
  }
  return out;
}

HalfCircleScan scan_half_circles(const OddBumpSum& f, const SpherePoint& p, int n_dirs, const QuadratureRule& rule) {
  if (n_dirs < 16) throw std::invalid_argument("scan_half_circles: need at least 16 directions");
  std::vector<double> angles = grid_angles(n_dirs);
  for (std::size_t i = 0; i < f.bump_count(); ++i) {
    const Vec3& c = f.center(i).vec();
    const Vec3 t = c - dot(c, p.vec()) * p.vec();
    if (norm(t) < 1e-12) continue;
    angles.push_back(wrap_2pi(tangent_angle(p, t)));
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> unique;
  for (double a : angles) {
    if (unique.empty() || a - unique.back() > 1e-13) unique.push_back(a);
  }
  if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= 1e-13) unique.pop_back();

  HalfCircleScan scan{p, std::move(unique), {}};
  scan.values.reserve(scan.angles.size());
  for (double a : scan.angles) scan.values.push_back(f.line_integral(half_circle(UnitTangent::at_angle(p, a)), rule));
  return scan;
}

DirectionSet negative_direction_set(const OddBumpSum& f, const SpherePoint& p, int n_dirs, double threshold,
                                    const QuadratureRule& rule) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("negative_direction_set: threshold must be >= 0");
  const HalfCircleScan scan = scan_half_circles(f, p, n_dirs, rule);
  const double cut = -std::max(threshold, kNegativeSlack * kPi);
  DirectionSet out{p, {}, {}};
  for (std::size_t i = 0; i < scan.angles.size(); ++i) {
    if (scan.values[i] < cut) {
      out.angles.push_back(scan.angles[i]);
      out.values.push_back(scan.values[i]);
    }
  }
  return out;
}

YLikeResult y_like_check(std::span<const double> angles) {
  if (angles.empty()) return {false, kTwoPi};
  std::vector<double> a;
  a.reserve(angles.size());
  for (double x : angles) a.push_back(wrap_2pi(x));
  std::sort(a.begin(), a.end());
  double gap = a.front() + kTwoPi - a.back();
  for (std::size_t i = 1; i < a.size(); ++i) gap = std::max(gap, a[i] - a[i - 1]);
  return {gap < kPi, gap};
}

NuEstimate estimate_nu(const OddBumpSum& f, const SamplingConfig& cfg, const QuadratureRule& rule) {
  std::vector<SpherePoint> centers;
  for (std::size_t i = 0; i < f.bump_count(); ++i) centers.push_back(f.center(i));
  const auto bases = sample_base_points(cfg.base_samples, centers, f.epsilon(), cfg.refine_spacing, cfg.refine_extent);
  const std::vector<double> queries = grid_angles(cfg.directions);
  const double cut = -kNegativeSlack * kPi;

  NuEstimate est;
  est.base_points = bases.size();
  est.nu_hat = std::numeric_limits<double>::infinity();
  est.witnesses.reserve(bases.size());
  for (const auto& p : bases) {
    const HalfCircleScan scan = scan_half_circles(f, p, cfg.directions, rule);

    std::vector<double> negative;
    for (std::size_t i = 0; i < scan.angles.size(); ++i) {
      if (scan.values[i] < cut) negative.push_back(scan.angles[i]);
    }
    const YLikeResult y = y_like_check(negative);
    est.max_semicircle_gap = std::max(est.max_semicircle_gap, y.max_gap);

    const auto best = window_minima(scan.angles, scan.values, queries);
    Witness local{p, 0.0, 0.0, -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < queries.size(); ++k) {
      const double value = best[k] < 0 ? std::numeric_limits<double>::infinity() : scan.values[best[k]];
      if (!(value < cut)) {
        throw GoodnessError("no acute witness with negative integral at " + describe(p, queries[k]));
      }
      if (value > local.integral) local = {p, queries[k], scan.angles[best[k]], value};
    }
    if (!y.y_like) throw GoodnessError("negative direction set not Y-like at " + describe(p, 0.0));
    est.samples += queries.size();
    if (-local.integral < est.nu_hat) {
      est.nu_hat = -local.integral;
      est.worst = local;
    }
    est.witnesses.push_back(local);
  }
  return est;
}

Lemma24Result estimate_lemma24_eps(const OddBumpSum& f, double nu, const SamplingConfig& cfg,
                                   const QuadratureRule& rule) {
  if (!(nu > 0.0)) throw std::invalid_argument("estimate_lemma24_eps: nu must be positive");
  const auto bases = fibonacci_lattice(cfg.l24_base_samples);
  std::vector<SpherePoint> negative_centers;
  for (std::size_t i = 0; i < f.bump_count(); ++i) {
    if (f.sign(i) < 0.0) negative_centers.push_back(f.center(i));
  }

  Lemma24Result result;
  result.nu = nu;
  result.segments_per_check = bases.size() * static_cast<std::size_t>(cfg.l24_directions) * 3;

  // Some member of the short subfamily of every sampled gamma of each length
  // has integral below -nu; records the witnesses at the first length.
  auto passes = [&](double eps, std::vector<PathWitness>* witnesses) {
    ++result.checks;
    const double lengths[3] = {kPi - eps, kPi - 0.5 * eps, kPi};
    for (const auto& p : bases) {
      for (int k = 0; k < cfg.l24_directions; ++k) {
        const UnitTangent v = UnitTangent::at_angle(p, kTwoPi * k / cfg.l24_directions);
        for (int li = 0; li < 3; ++li) {
          const GeodesicSegment gamma(v, lengths[li]);
          const MidpointFamily fam(gamma);
          const AngleInterval range = short_subfamily(fam).front();
          std::vector<double> cands;
          for (const auto& c : negative_centers) {
            for (double th : fam.parameters_through(c)) {
              if (range.contains(th, 1e-12)) cands.push_back(th);
            }
          }
          const int g = std::max(2, cfg.l24_family_grid);
          for (int j = 0; j < g; ++j) cands.push_back(range.lo + (range.hi - range.lo) * j / (g - 1));

          bool found = false;
          for (double th : cands) {
            const GeodesicPath tau = fam.member(th);
            const double len = round_length(tau);
            if (len > kPi + 1e-9) continue;
            const double value = f.line_integral(tau, rule);
            if (value < -nu) {
              if (witnesses && li == 0) {
                witnesses->push_back({p, v.dir(), lengths[li], th, len, value});
              }
              found = true;
              break;
            }
          }
          if (!found) return false;
        }
      }
    }
    return true;
  };

  std::vector<PathWitness> best;
  if (!passes(cfg.l24_floor, &best)) {
    throw GoodnessError("no near-antipodal threshold above " + std::to_string(cfg.l24_floor));
  }
  double lo = cfg.l24_floor;
  double hi = 0.5 * kPi;
  std::vector<PathWitness> trial;
  if (passes(hi, &trial)) {
    lo = hi;
    best = std::move(trial);
  } else {
    while (hi - lo > cfg.l24_resolution) {
      const double mid = 0.5 * (lo + hi);
      trial.clear();
      if (passes(mid, &trial)) {
        lo = mid;
        best = std::move(trial);
      } else {
        hi = mid;
      }
    }
  }
  result.eps = lo;
  std::stable_sort(best.begin(), best.end(),
                   [](const PathWitness& a, const PathWitness& b) { return a.integral > b.integral; });
  if (best.size() > static_cast<std::size_t>(std::max(0, cfg.witness_keep))) {
    best.resize(static_cast<std::size_t>(std::max(0, cfg.witness_keep)));
  }
  result.witnesses = std::move(best);
  return result;
}

GvReport gv_y_like_check(std::span<const SpherePoint> sigma, double eps_sigma, int base_samples, double refine_eps,
                         const SamplingConfig& cfg) {
  std::vector<SpherePoint> centers;
  for (const auto& p : sigma) {
    centers.push_back(p);
    centers.push_back(-p);
  }
  const auto bases = sample_base_points(base_samples, centers, refine_eps, cfg.refine_spacing, cfg.refine_extent);
  constexpr double tol = 1e-9;

  GvReport report;
  report.all_y_like = true;
  for (const auto& p : bases) {
    std::vector<double> members;
    for (const auto& target : sigma) {
      const double d = distance0(p, target);
      if (!(d > eps_sigma && d < kPi - eps_sigma)) continue;
      const UnitTangent w = UnitTangent::toward(p, target);
      const Vec3& b = p.vec();
      const Vec3& u = w.dir();
      const Vec3 pole = cross(b, u);
      bool blocked = false;
      for (const auto& q : sigma) {
        const Vec3 c = -q.vec();
        const double a = dot(b, c);
        const double beta = dot(u, c);
        const double offset = std::atan2(std::abs(dot(c, pole)), std::hypot(a, beta));
        const double s = std::atan2(beta, a);
        if (offset < tol && s > tol && s < kPi - tol) {
          blocked = true;
          break;
        }
      }
      if (!blocked) members.push_back(tangent_angle(p, u));
    }
    const YLikeResult y = y_like_check(members);
    ++report.samples;
    if (y.max_gap > report.max_gap || report.samples == 1) {
      report.max_gap = y.max_gap;
      report.worst_base = p;
    }
    if (!y.y_like) report.all_y_like = false;
  }
  return report;
}

void require_y_like(const GvReport& report) {
  if (!report.all_y_like) {
    throw GoodnessError("through-point directions not Y-like: gap " + std::to_string(report.max_gap) + " at " +
                        describe(report.worst_base, 0.0));
  }
}

GoodnessCertificate certify_goodness(const OddBumpSum& f, double eps_sigma, const SamplingConfig& cfg,
                                     const QuadratureRule& rule) {
  GoodnessCertificate cert;
  cert.epsilon = f.epsilon();
  cert.sampling = cfg;
  cert.quadrature_id = rule.id();

  NuEstimate nu = estimate_nu(f, cfg, rule);
  cert.nu_hat = nu.nu_hat;
  cert.max_semicircle_gap = nu.max_semicircle_gap;
  cert.base_points = nu.base_points;
  cert.samples = nu.samples;
  cert.worst = nu.worst;
  cert.witnesses = std::move(nu.witnesses);

  const GvReport gv = gv_y_like_check(f.sigma(), eps_sigma, cfg.gv_base_samples, f.epsilon(), cfg);
  require_y_like(gv);
  cert.gv_max_gap = gv.max_gap;
  cert.gv_samples = gv.samples;

  const Lemma24Result l24 = estimate_lemma24_eps(f, cfg.l24_nu_fraction * cert.nu_hat, cfg, rule);
  cert.lemma24_eps = l24.eps;
  cert.lemma24_nu = l24.nu;
  cert.lemma24_witnesses = l24.witnesses;
  return cert;
}

}  // namespace zoll
