#include "kernel_common.hpp"

namespace polgd::kernels::serial {

KennaughRaster kennaugh(const CoherencyRaster& in) {
  KennaughRaster out(in.rows, in.cols, in.looks);
  out.valid = in.valid;
  for (std::size_t i = 0; i < in.size(); ++i) out.pixels[i] = kennaugh_from_coherency(in.pixels[i]);
  return out;
}

SimilarityRaster similarity(const KennaughRaster& in, const TargetRegistry& targets) {
  SimilarityRaster out = detail::make_similarity_raster(in, targets.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in.is_valid(i)) out.valid[i] = detail::similarity_pixel(in.pixels[i], targets, i, out);
  return out;
}

void deorient(CoherencyRaster& raster) {
  for (std::size_t i = 0; i < raster.size(); ++i)
    if (raster.is_valid(i)) raster.pixels[i] = polgd::deorient(raster.pixels[i]);
}

CoherencyRaster boxcar(const CoherencyRaster& in, int window) {
  CoherencyRaster out(in.rows, in.cols, in.looks);
  const int half = window / 2;
  for (std::size_t r = 0; r < in.rows; ++r)
    for (std::size_t c = 0; c < in.cols; ++c) detail::boxcar_pixel(in, half, r, c, out);
  return out;
}

std::size_t assign(const AssignmentProblem& problem, std::span<int> labels) {
  std::size_t changes = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int next = detail::assign_pixel(problem, i);
    changes += next != labels[i];
    labels[i] = next;
  }
  return changes;
}

CenterSums accumulate(std::span<const CoherencyMatrix> pixels, std::span<const int> labels, std::size_t n_clusters) {
  CenterSums out{std::vector<CoherencyMatrix>(n_clusters), std::vector<std::size_t>(n_clusters, 0)};
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (labels[i] == kUnlabeled) continue;
    out.sums[labels[i]] += pixels[i];
    ++out.counts[labels[i]];
  }
  return out;
}

double objective(std::span<const CoherencyMatrix> pixels, std::span<const int> labels,
                 std::span<const WishartModel> models) {
  double total = 0.0;
  for (std::size_t i = 0; i < pixels.size(); ++i)
    if (labels[i] != kUnlabeled) total += wishart_pixel_distance(pixels[i], models[labels[i]]);
  return total;
}

}  // namespace polgd::kernels::serial
