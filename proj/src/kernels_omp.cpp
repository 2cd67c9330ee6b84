#include <omp.h>

#include "kernel_common.hpp"

namespace polgd::kernels::omp {

namespace {

std::size_t chunk_count(std::size_t n) { return (n + kReductionChunk - 1) / kReductionChunk; }

}  // namespace

KennaughRaster kennaugh(const CoherencyRaster& in) {
  KennaughRaster out(in.rows, in.cols, in.looks);
  out.valid = in.valid;
  const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out.pixels[i] = kennaugh_from_coherency(in.pixels[i]);
  return out;
}

SimilarityRaster similarity(const KennaughRaster& in, const TargetRegistry& targets) {
  SimilarityRaster out = detail::make_similarity_raster(in, targets.size());
  const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (in.is_valid(i)) out.valid[i] = detail::similarity_pixel(in.pixels[i], targets, i, out);
  return out;
}

void deorient(CoherencyRaster& raster) {
  const auto n = static_cast<std::ptrdiff_t>(raster.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (raster.is_valid(i)) raster.pixels[i] = polgd::deorient(raster.pixels[i]);
}

CoherencyRaster boxcar(const CoherencyRaster& in, int window) {
  CoherencyRaster out(in.rows, in.cols, in.looks);
  const int half = window / 2;
  const auto rows = static_cast<std::ptrdiff_t>(in.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < in.cols; ++c) detail::boxcar_pixel(in, half, r, c, out);
  return out;
}

std::size_t assign(const AssignmentProblem& problem, std::span<int> labels) {
  std::size_t changes = 0;
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
#pragma omp parallel for schedule(static) reduction(+ : changes)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const int next = detail::assign_pixel(problem, i);
    changes += next != labels[i];
    labels[i] = next;
  }
  return changes;
}

CenterSums accumulate(std::span<const CoherencyMatrix> pixels, std::span<const int> labels, std::size_t n_clusters) {
  const std::size_t chunks = chunk_count(pixels.size());
  std::vector<CoherencyMatrix> partial(chunks * n_clusters);
  std::vector<std::size_t> partial_counts(chunks * n_clusters, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ch = 0; ch < static_cast<std::ptrdiff_t>(chunks); ++ch) {
    const std::size_t begin = ch * kReductionChunk;
    const std::size_t end = std::min(pixels.size(), begin + kReductionChunk);
    CoherencyMatrix* sums = partial.data() + ch * n_clusters;
    std::size_t* counts = partial_counts.data() + ch * n_clusters;
    for (std::size_t i = begin; i < end; ++i) {
      if (labels[i] == kUnlabeled) continue;
      sums[labels[i]] += pixels[i];
      ++counts[labels[i]];
    }
  }
  CenterSums out{std::vector<CoherencyMatrix>(n_clusters), std::vector<std::size_t>(n_clusters, 0)};
  for (std::size_t ch = 0; ch < chunks; ++ch)
    for (std::size_t k = 0; k < n_clusters; ++k) {
      out.sums[k] += partial[ch * n_clusters + k];
      out.counts[k] += partial_counts[ch * n_clusters + k];
    }
  return out;
}

double objective(std::span<const CoherencyMatrix> pixels, std::span<const int> labels,
                 std::span<const WishartModel> models) {
  const std::size_t chunks = chunk_count(pixels.size());
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ch = 0; ch < static_cast<std::ptrdiff_t>(chunks); ++ch) {
    const std::size_t begin = ch * kReductionChunk;
    const std::size_t end = std::min(pixels.size(), begin + kReductionChunk);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i)
      if (labels[i] != kUnlabeled) s += wishart_pixel_distance(pixels[i], models[labels[i]]);
    partial[ch] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace polgd::kernels::omp
