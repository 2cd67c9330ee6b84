#pragma once

// Geodesic distance between Kennaugh matrices projected onto the unit sphere
// in R^16, and the per-pixel scattering similarity built on it.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "polgd/types.hpp"

namespace polgd {

struct CanonicalTarget {
  std::string name;
  KennaughMatrix kennaugh;
};

KennaughMatrix trihedral_kennaugh();      // diag(1, 1, 1, -1)
KennaughMatrix dihedral_kennaugh();       // diag(1, 1, -1, 1)
KennaughMatrix random_volume_kennaugh();  // diag(1, 1/2, 1/2, 0)

// Ordered, read-only-after-construction list of reference targets. The order
// is the tie-break order for dominant_target().
class TargetRegistry {
 public:
  TargetRegistry() = default;

  // trihedral, dihedral, random_volume
  static TargetRegistry builtin();

  void add(CanonicalTarget target);
  std::size_t size() const { return targets_.size(); }
  const CanonicalTarget& operator[](std::size_t i) const { return targets_[i]; }
  std::size_t index_of(const std::string& name) const;

  auto begin() const { return targets_.begin(); }
  auto end() const { return targets_.end(); }

 private:
  std::vector<CanonicalTarget> targets_;
};

inline constexpr std::size_t kTrihedral = 0;
inline constexpr std::size_t kDihedral = 1;
inline constexpr std::size_t kRandomVolume = 2;

// (2/pi) acos( Tr(K1^T K2) / (|K1|_F |K2|_F) ). Lies in [0, 1] for
// physically realizable pairs and in [0, 2] for arbitrary symmetric input.
// Throws on a zero matrix.
double geodesic_distance(const KennaughMatrix& k1, const KennaughMatrix& k2);

// Same angle from precomputed positive norms. Evaluated as
// 2 atan2(|x - y|, |x + y|) on the normalized matrices x, y, which is exact
// for identical inputs and well conditioned near 0 and 1, where acos of the
// cosine loses about half the digits.
inline double geodesic_distance(const KennaughMatrix& k1, double n1, const KennaughMatrix& k2, double n2) noexcept {
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = m; n < 4; ++n) {
      const double x = k1.at(m, n) / n1;
      const double y = k2.at(m, n) / n2;
      const double weight = m == n ? 1.0 : 2.0;
      diff += weight * (x - y) * (x - y);
      sum += weight * (x + y) * (x + y);
    }
  return 4.0 / std::numbers::pi * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

// 1 - GD(K, K_target)
double similarity(const KennaughMatrix& k, const CanonicalTarget& target);

// Per-pixel similarities f, their normalization gamma (sums to 1) and the
// span-modulated weights w = 2 k11 gamma (sums to Span). Indexed like the
// registry.
struct SimilarityTriple {
  std::vector<double> f;
  std::vector<double> gamma;
  std::vector<double> w;
};

SimilarityTriple similarity_triple(const KennaughMatrix& k, const TargetRegistry& targets);

// Allocation-free variant used by the raster kernels. Each output span must
// hold targets.size() values.
void similarity_into(const KennaughMatrix& k, const TargetRegistry& targets, std::span<double> f,
                     std::span<double> gamma, std::span<double> w);

// argmax over w; the earliest registry entry wins ties.
std::size_t dominant_target(std::span<const double> w);
inline std::size_t dominant_target(const SimilarityTriple& st) { return dominant_target(st.w); }

}  // namespace polgd
