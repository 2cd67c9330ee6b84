#pragma once

// Category-preserving iterative Wishart classification.
//
// Every valid pixel is put in the category of its dominant canonical target.
// Each category is cut into span-ordered initial clusters, clusters are merged
// pairwise by inter-center Wishart distance under a size cap, and then pixels
// are reassigned by Wishart distance for a fixed number of passes. Non-mixed
// pixels only ever compete among clusters of their own category; mixed pixels
// compete among all clusters and take the winner's category.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polgd/kernels.hpp"
#include "polgd/preprocess.hpp"
#include "polgd/types.hpp"
#include "polgd/wishart.hpp"

namespace polgd {

enum class Category : std::uint8_t { trihedral = 0, dihedral = 1, random_volume = 2 };
inline constexpr std::size_t kCategoryCount = 3;
inline constexpr std::array<Category, kCategoryCount> kAllCategories{Category::trihedral, Category::dihedral,
                                                                     Category::random_volume};

std::string_view category_name(Category c);

struct PixelCategory {
  Category category = Category::trihedral;
  bool mixed = false;

  friend bool operator==(const PixelCategory&, const PixelCategory&) = default;
};

struct ClassifierConfig {
  int initial_clusters_per_category = 30;
  int final_classes_per_category = 5;
  int max_iterations = 4;
  double convergence_fraction = 0.01;
  double mixed_threshold = 0.5;

  void validate() const;
};

// Category from argmax(w) (registry order breaks ties); mixed when
// max(w) / sum(w) <= threshold. Empty when sum(w) is not positive.
std::optional<PixelCategory> categorize(std::span<const double> w, double mixed_threshold);

struct Cluster {
  int id = 0;
  Category category = Category::trihedral;
  CoherencyMatrix center;
  std::size_t member_count = 0;
};

struct InitialClustering {
  std::vector<Cluster> clusters;
  std::vector<int> cluster_of;  // cluster id per input pixel
};

// Sorts pixels by span (stable) and cuts them into k contiguous bins of
// floor(n / k) pixels, the last bin taking the remainder. Fewer than k pixels
// give one singleton cluster per pixel. Ids start at first_id.
InitialClustering initial_clusters(std::span<const CoherencyMatrix> pixels, Category category, int k,
                                   int first_id = 0);

// Inter-center distance evaluated on the regularized centers.
double wishart_center_distance(const Cluster& a, const Cluster& b);

struct MergeResult {
  std::vector<Cluster> clusters;
  std::vector<int> merged_into;  // for each input cluster, the id it ended up in
};

// Greedy pairwise merging within one category. The closest admissible pair
// is merged until final_classes_per_category clusters remain or no pair fits
// under N_max = 2 N / N_d, where N is category_pixels. Merged clusters keep
// the lower id and the member-weighted mean center.
MergeResult merge_clusters(std::span<const Cluster> clusters, std::size_t category_pixels,
                           const ClassifierConfig& cfg);

struct IterationRecord {
  int iteration = 0;  // 0 is the post-merge state
  std::size_t changes = 0;
  double objective = 0.0;
  std::size_t clusters = 0;
};

// Runs the Wishart reassignment passes. `labels` holds cluster ids (or
// kUnlabeled) and `clusters` the current classes; both are updated in place.
// Emptied clusters are retired. Stops after cfg.max_iterations passes or once
// fewer than cfg.convergence_fraction of the valid pixels change label.
std::vector<IterationRecord> iterate_classification(std::span<const CoherencyMatrix> pixels,
                                                    std::span<const std::uint8_t> valid,
                                                    std::span<const PixelCategory> categories,
                                                    std::vector<int>& labels, std::vector<Cluster>& clusters,
                                                    const ClassifierConfig& cfg, Backend backend = Backend::openmp);

struct ClassificationResult {
  std::vector<std::uint8_t> valid;
  std::vector<PixelCategory> initial;  // meaningful where valid
  std::vector<int> initial_labels;     // after initial clustering
  std::vector<int> merged_labels;      // after merging
  std::vector<Cluster> merged_clusters;
  std::vector<int> labels;  // final cluster id per pixel
  std::vector<Cluster> clusters;
  std::vector<IterationRecord> history;

  const Cluster& cluster(int id) const;
  Category final_category(std::size_t pixel) const { return cluster(labels[pixel]).category; }
};

// Full scheme on a preprocessed coherency raster and its similarity weights.
ClassificationResult classify(const CoherencyRaster& raster, const SimilarityRaster& similarity,
                              const ClassifierConfig& cfg, Backend backend = Backend::openmp);

}  // namespace polgd
