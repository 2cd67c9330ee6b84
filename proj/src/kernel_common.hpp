#pragma once

// Per-pixel bodies shared by the serial and OpenMP kernel loops. Nothing here
// throws: kernels run inside parallel regions.

#include <cmath>
#include <cstdint>
#include <limits>

#include "polgd/kernels.hpp"
#include "polgd/preprocess.hpp"

namespace polgd::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Writes f, gamma, w for pixel i; returns false (and writes NaN) when the
// pixel cannot be compared against the targets.
inline bool similarity_pixel(const KennaughMatrix& k, const TargetRegistry& targets, std::size_t i,
                             SimilarityRaster& out) {
  const std::size_t n = targets.size();
  const std::size_t base = i * n;
  const double norm = k.frobenius_norm();
  bool ok = norm > 0.0 && std::isfinite(norm) && k.k11() >= 0.0;
  double total = 0.0;
  if (ok) {
    for (std::size_t t = 0; t < n; ++t) {
      const auto& target = targets[t].kennaugh;
      out.f[base + t] = 1.0 - geodesic_distance(k, norm, target, target.frobenius_norm());
      total += out.f[base + t];
    }
    ok = total > 0.0;
  }
  if (!ok) {
    for (std::size_t t = 0; t < n; ++t) out.f[base + t] = out.gamma[base + t] = out.w[base + t] = kNaN;
    return false;
  }
  const double power = 2.0 * k.k11();
  for (std::size_t t = 0; t < n; ++t) {
    out.gamma[base + t] = out.f[base + t] / total;
    out.w[base + t] = power * out.gamma[base + t];
  }
  return true;
}

inline SimilarityRaster make_similarity_raster(const KennaughRaster& in, std::size_t n_targets) {
  SimilarityRaster out;
  out.rows = in.rows;
  out.cols = in.cols;
  out.n_targets = n_targets;
  out.f.assign(in.size() * n_targets, kNaN);
  out.gamma.assign(in.size() * n_targets, kNaN);
  out.w.assign(in.size() * n_targets, kNaN);
  out.valid.assign(in.size(), 0);
  return out;
}

// Mean over the valid members of the truncated window centred on (r, c).
inline void boxcar_pixel(const CoherencyRaster& in, int half, std::size_t r, std::size_t c, CoherencyRaster& out) {
  const std::size_t i = in.index(r, c);
  if (!in.is_valid(i)) {
    out.pixels[i] = in.pixels[i];
    out.valid[i] = 0;
    return;
  }
  const std::size_t r0 = r >= static_cast<std::size_t>(half) ? r - half : 0;
  const std::size_t c0 = c >= static_cast<std::size_t>(half) ? c - half : 0;
  const std::size_t r1 = std::min(in.rows, r + half + 1);
  const std::size_t c1 = std::min(in.cols, c + half + 1);
  CoherencyMatrix sum;
  std::size_t n = 0;
  for (std::size_t rr = r0; rr < r1; ++rr)
    for (std::size_t cc = c0; cc < c1; ++cc) {
      const std::size_t j = in.index(rr, cc);
      if (!in.is_valid(j)) continue;
      sum += in.pixels[j];
      ++n;
    }
  sum *= 1.0 / static_cast<double>(n);
  out.pixels[i] = sum;
  out.valid[i] = 1;
}

// Best admissible model for pixel i, or kUnlabeled for invalid pixels.
inline int assign_pixel(const AssignmentProblem& p, std::size_t i) {
  if (!p.valid[i]) return kUnlabeled;
  const bool any_category = p.mixed[i] != 0;
  int best = kUnlabeled;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < p.models.size(); ++m) {
    if (!any_category && p.model_category[m] != p.category[i]) continue;
    const double d = wishart_pixel_distance(p.pixels[i], p.models[m]);
    if (best == kUnlabeled || d < best_d) {
      best = static_cast<int>(m);
      best_d = d;
    }
  }
  return best;
}

}  // namespace polgd::detail
