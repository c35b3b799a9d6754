#pragma once

// Shared library objects built once per test process.

#include "zoll/bump.hpp"
#include "zoll/fine_sets.hpp"
#include "zoll/goodness.hpp"

namespace fixture {

inline const zoll::FineSet& shipped_set() {
  static const zoll::FineSet set = zoll::certify_fine_set(zoll::generate_perturbed_tetrahedron(42, 0.1));
  return set;
}

inline const zoll::OddBumpSum& shipped_f() {
  static const zoll::OddBumpSum f(shipped_set(), 0.5 * shipped_set().epsilon_sigma);
  return f;
}

// Sampling small enough for unit tests.
inline zoll::SamplingConfig small_sampling() {
  zoll::SamplingConfig cfg;
  cfg.base_samples = 400;
  cfg.directions = 64;
  cfg.refine_spacing = 0.25;
  cfg.refine_extent = 1.5;
  cfg.l24_base_samples = 120;
  cfg.l24_directions = 12;
  cfg.l24_family_grid = 16;
  cfg.l24_resolution = 1e-2;
  cfg.witness_keep = 32;
  cfg.gv_base_samples = 1000;
  return cfg;
}

}  // namespace fixture
