#pragma once

// Raster-wide kernels. Every kernel has a plain serial reference in
// kernels::serial and an OpenMP version in kernels::omp with the same
// signature. Per-pixel kernels give bit-identical results in both. Reductions
// in the OpenMP path sum fixed-size chunks in a fixed order, so their results
// do not depend on the thread count (they may differ from the serial loop in
// the last bits).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polgd/geodesic.hpp"
#include "polgd/raster.hpp"
#include "polgd/wishart.hpp"

namespace polgd {

// Per-pixel f, gamma and w for every registered target, stored pixel-major:
// values for pixel i live at [i * n_targets, (i + 1) * n_targets).
struct SimilarityRaster {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t n_targets = 0;
  std::vector<double> f;
  std::vector<double> gamma;
  std::vector<double> w;
  std::vector<std::uint8_t> valid;

  std::size_t size() const { return rows * cols; }
  std::span<const double> f_at(std::size_t i) const { return {f.data() + i * n_targets, n_targets}; }
  std::span<const double> gamma_at(std::size_t i) const { return {gamma.data() + i * n_targets, n_targets}; }
  std::span<const double> w_at(std::size_t i) const { return {w.data() + i * n_targets, n_targets}; }
};

// Inputs of one Wishart assignment pass. Label values index `models`.
struct AssignmentProblem {
  std::span<const CoherencyMatrix> pixels;
  std::span<const std::uint8_t> valid;
  std::span<const std::uint8_t> category;  // initial category per pixel
  std::span<const std::uint8_t> mixed;
  std::span<const WishartModel> models;
  std::span<const std::uint8_t> model_category;
};

struct CenterSums {
  std::vector<CoherencyMatrix> sums;
  std::vector<std::size_t> counts;
};

inline constexpr int kUnlabeled = -1;
inline constexpr std::size_t kReductionChunk = 4096;

namespace kernels {

#define POLGD_KERNEL_DECLS                                                                         \
  KennaughRaster kennaugh(const CoherencyRaster& in);                                              \
  SimilarityRaster similarity(const KennaughRaster& in, const TargetRegistry& targets);            \
  void deorient(CoherencyRaster& raster);                                                          \
  CoherencyRaster boxcar(const CoherencyRaster& in, int window);                                   \
  /* Returns the number of pixels whose label changed. Ties go to the lowest model index. */      \
  std::size_t assign(const AssignmentProblem& problem, std::span<int> labels);                     \
  CenterSums accumulate(std::span<const CoherencyMatrix> pixels, std::span<const int> labels,      \
                        std::size_t n_clusters);                                                   \
  double objective(std::span<const CoherencyMatrix> pixels, std::span<const int> labels,           \
                   std::span<const WishartModel> models);

namespace serial {
POLGD_KERNEL_DECLS
}
namespace omp {
POLGD_KERNEL_DECLS
}

#undef POLGD_KERNEL_DECLS

}  // namespace kernels
}  // namespace polgd
