#pragma once

// Synthetic multi-look coherency scenes built from rectangular regions of
// canonical scattering models.
//
// Each pixel of a region is (1/L) sum_i k_i k_i^H with k_i drawn i.i.d. from a
// zero-mean circular complex Gaussian whose covariance is the region model
// plus 1e-6 * span * I. Region r draws from its own mt19937_64 stream seeded
// with splitmix64(seed + (r + 1) * golden_gamma), so output does not depend
// on how regions are scheduled across threads.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "polgd/raster.hpp"

namespace polgd {

enum class ScatteringModel { trihedral, dihedral, volume };

// trihedral: diag(s, 0, 0); dihedral: diag(0, s, 0); volume: s/4 diag(2, 1, 1)
CoherencyMatrix model_coherency(ScatteringModel model, double span);

struct SceneRegion {
  std::size_t row_begin = 0;  // half-open bounds
  std::size_t row_end = 0;
  std::size_t col_begin = 0;
  std::size_t col_end = 0;
  ScatteringModel model = ScatteringModel::trihedral;
  double span = 1.0;
  int looks = 1;
};

struct SyntheticSceneSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<std::uint64_t> seed;
  std::vector<SceneRegion> regions;

  // Regions must tile the raster exactly; span > 0; looks >= 1; seed set.
  void validate() const;
};

// Text format, one item per line, '#' comments:
//   rows = 128
//   cols = 128
//   seed = 7
//   looks = 25                      (default for region lines)
//   region = r0 r1 c0 c1 model span [looks]
// with model one of trihedral, dihedral, volume. Errors name the line.
SyntheticSceneSpec parse_scene_spec(std::istream& in);

// Three equal vertical stripes (trihedral | dihedral | volume).
SyntheticSceneSpec three_region_spec(std::size_t rows, std::size_t cols, int looks, std::uint64_t seed,
                                     double span = 1.0);

CoherencyRaster generate_scene(const SyntheticSceneSpec& spec);

// Per-pixel truth (the region model) of a generated scene.
std::vector<ScatteringModel> scene_truth(const SyntheticSceneSpec& spec);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace polgd
