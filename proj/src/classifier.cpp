#include "polgd/classifier.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "polgd/error.hpp"

namespace polgd {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::trihedral: return "trihedral";
    case Category::dihedral: return "dihedral";
    case Category::random_volume: return "random_volume";
  }
  return "unknown";
}

void ClassifierConfig::validate() const {
  if (initial_clusters_per_category < 1) throw Error("--initial-clusters must be >= 1");
  if (final_classes_per_category < 1) throw Error("--classes-per-category must be >= 1");
  if (final_classes_per_category > initial_clusters_per_category)
    throw Error("--classes-per-category must not exceed --initial-clusters");
  if (max_iterations < 0) throw Error("--max-iterations must be >= 0");
  if (!(convergence_fraction >= 0.0 && convergence_fraction <= 1.0))
    throw Error("--convergence-fraction must lie in [0, 1]");
  if (!(mixed_threshold > 0.0 && mixed_threshold <= 1.0)) throw Error("--mixed-threshold must lie in (0, 1]");
}

std::optional<PixelCategory> categorize(std::span<const double> w, double mixed_threshold) {
  if (w.size() != kCategoryCount) throw Error("categorization needs exactly three target weights");
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) return std::nullopt;
    total += v;
  }
  if (!(total > 0.0)) return std::nullopt;
  const std::size_t best = dominant_target(w);
  return PixelCategory{static_cast<Category>(best), w[best] / total <= mixed_threshold};
}

InitialClustering initial_clusters(std::span<const CoherencyMatrix> pixels, Category category, int k, int first_id) {
  if (k < 1) throw Error("initial cluster count must be >= 1");
  InitialClustering out;
  out.cluster_of.assign(pixels.size(), kUnlabeled);
  if (pixels.empty()) return out;

  std::vector<std::size_t> order(pixels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pixels[a].trace() < pixels[b].trace(); });

  const std::size_t bins = std::min<std::size_t>(k, pixels.size());
  const std::size_t per_bin = pixels.size() / bins;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t begin = b * per_bin;
    const std::size_t end = b + 1 == bins ? pixels.size() : begin + per_bin;
    Cluster c;
    c.id = first_id + static_cast<int>(b);
    c.category = category;
    for (std::size_t j = begin; j < end; ++j) {
      c.center += pixels[order[j]];
      out.cluster_of[order[j]] = c.id;
    }
    c.member_count = end - begin;
    c.center *= 1.0 / static_cast<double>(c.member_count);
    out.clusters.push_back(c);
  }
  return out;
}

double wishart_center_distance(const Cluster& a, const Cluster& b) {
  return wishart_center_distance(regularized(a.center), regularized(b.center));
}

MergeResult merge_clusters(std::span<const Cluster> clusters, std::size_t category_pixels,
                           const ClassifierConfig& cfg) {
  MergeResult out;
  out.clusters.assign(clusters.begin(), clusters.end());
  for (const auto& c : clusters)
    if (c.category != clusters.front().category) throw Error("merge_clusters: clusters span several categories");
  std::sort(out.clusters.begin(), out.clusters.end(), [](const Cluster& a, const Cluster& b) { return a.id < b.id; });

  // id -> surviving id, resolved at the end
  std::vector<std::pair<int, int>> absorbed;
  const std::size_t target = static_cast<std::size_t>(cfg.final_classes_per_category);
  const std::size_t nd = target;

  while (out.clusters.size() > target) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < out.clusters.size(); ++i)
      for (std::size_t j = i + 1; j < out.clusters.size(); ++j) {
        const std::size_t combined = out.clusters[i].member_count + out.clusters[j].member_count;
        // combined <= 2N / N_d
        if (combined * nd > 2 * category_pixels) continue;
        const double d = wishart_center_distance(out.clusters[i], out.clusters[j]);
        if (!found || d < best) {
          best = d;
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) break;

    Cluster& keep = out.clusters[bi];
    const Cluster& gone = out.clusters[bj];
    const double ni = static_cast<double>(keep.member_count);
    const double nj = static_cast<double>(gone.member_count);
    CoherencyMatrix center = (ni / (ni + nj)) * keep.center + (nj / (ni + nj)) * gone.center;
    keep.center = center;
    keep.member_count += gone.member_count;
    absorbed.emplace_back(gone.id, keep.id);
    out.clusters.erase(out.clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  out.merged_into.resize(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    int id = clusters[i].id;
    for (const auto& [from, to] : absorbed)
      if (from == id) id = to;
    out.merged_into[i] = id;
  }
  return out;
}

namespace {

std::vector<WishartModel> build_models(const std::vector<Cluster>& clusters) {
  std::vector<WishartModel> models;
  models.reserve(clusters.size());
  for (const auto& c : clusters) models.push_back(make_wishart_model(c.center));
  return models;
}

double run_objective(Backend backend, std::span<const CoherencyMatrix> pixels, std::span<const int> slots,
                     std::span<const WishartModel> models) {
  return backend == Backend::serial ? kernels::serial::objective(pixels, slots, models)
                                    : kernels::omp::objective(pixels, slots, models);
}

}  // namespace

std::vector<IterationRecord> iterate_classification(std::span<const CoherencyMatrix> pixels,
                                                    std::span<const std::uint8_t> valid,
                                                    std::span<const PixelCategory> categories,
                                                    std::vector<int>& labels, std::vector<Cluster>& clusters,
                                                    const ClassifierConfig& cfg, Backend backend) {
  cfg.validate();
  const std::size_t n = pixels.size();
  if (valid.size() != n || categories.size() != n || labels.size() != n)
    throw Error("iterate_classification: pixel, mask, category and label counts differ");

  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) { return a.id < b.id; });

  // Work on slot indices into `clusters`; translate back to ids at the end.
  std::vector<int> slots(n, kUnlabeled);
  std::vector<std::uint8_t> category(n, 0);
  std::vector<std::uint8_t> mixed(n, 0);
  std::size_t valid_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid[i]) continue;
    ++valid_count;
    category[i] = static_cast<std::uint8_t>(categories[i].category);
    mixed[i] = categories[i].mixed;
    auto it = std::lower_bound(clusters.begin(), clusters.end(), labels[i],
                               [](const Cluster& c, int id) { return c.id < id; });
    if (it == clusters.end() || it->id != labels[i])
      throw Error("pixel " + std::to_string(i) + " carries unknown cluster id " + std::to_string(labels[i]));
    slots[i] = static_cast<int>(it - clusters.begin());
  }

  std::vector<WishartModel> models = build_models(clusters);
  std::vector<IterationRecord> history;
  history.push_back({0, 0, run_objective(backend, pixels, slots, models), clusters.size()});

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    std::vector<std::uint8_t> model_category(clusters.size());
    for (std::size_t m = 0; m < clusters.size(); ++m) model_category[m] = static_cast<std::uint8_t>(clusters[m].category);
    const AssignmentProblem problem{pixels, valid, category, mixed, models, model_category};
    const std::size_t changes =
        backend == Backend::serial ? kernels::serial::assign(problem, slots) : kernels::omp::assign(problem, slots);

    const CenterSums sums = backend == Backend::serial ? kernels::serial::accumulate(pixels, slots, clusters.size())
                                                       : kernels::omp::accumulate(pixels, slots, clusters.size());

    // Retire emptied clusters, compacting slot numbers.
    std::vector<int> remap(clusters.size(), kUnlabeled);
    std::vector<Cluster> survivors;
    for (std::size_t m = 0; m < clusters.size(); ++m) {
      if (sums.counts[m] == 0) continue;
      Cluster c = clusters[m];
      c.member_count = sums.counts[m];
      c.center = (1.0 / static_cast<double>(sums.counts[m])) * sums.sums[m];
      remap[m] = static_cast<int>(survivors.size());
      survivors.push_back(c);
    }
    for (auto& s : slots)
      if (s != kUnlabeled) s = remap[s];
    clusters = std::move(survivors);
    models = build_models(clusters);

    history.push_back({iter, changes, run_objective(backend, pixels, slots, models), clusters.size()});
    if (static_cast<double>(changes) < cfg.convergence_fraction * static_cast<double>(valid_count)) break;
  }

  for (std::size_t i = 0; i < n; ++i) labels[i] = slots[i] == kUnlabeled ? kUnlabeled : clusters[slots[i]].id;
  return history;
}

const Cluster& ClassificationResult::cluster(int id) const {
  for (const auto& c : clusters)
    if (c.id == id) return c;
  throw Error("no cluster with id " + std::to_string(id));
}

ClassificationResult classify(const CoherencyRaster& raster, const SimilarityRaster& similarity,
                              const ClassifierConfig& cfg, Backend backend) {
  cfg.validate();
  raster.check_shape();
  if (similarity.size() != raster.size()) throw Error("similarity raster does not match the coherency raster");
  if (similarity.n_targets != kCategoryCount) throw Error("classification needs the three built-in targets");

  const std::size_t n = raster.size();
  ClassificationResult out;
  out.valid.assign(n, 0);
  out.initial.assign(n, PixelCategory{});
  out.initial_labels.assign(n, kUnlabeled);

  std::array<std::vector<std::size_t>, kCategoryCount> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (!raster.is_valid(i) || !similarity.valid[i]) continue;
    const auto cat = categorize(similarity.w_at(i), cfg.mixed_threshold);
    if (!cat) continue;
    out.valid[i] = 1;
    out.initial[i] = *cat;
    members[static_cast<std::size_t>(cat->category)].push_back(i);
  }

  out.merged_labels.assign(n, kUnlabeled);
  int next_id = 0;
  for (Category cat : kAllCategories) {
    const auto& idx = members[static_cast<std::size_t>(cat)];
    std::vector<CoherencyMatrix> pix;
    pix.reserve(idx.size());
    for (auto i : idx) pix.push_back(raster.pixels[i]);

    InitialClustering init = initial_clusters(pix, cat, cfg.initial_clusters_per_category, next_id);
    next_id += cfg.initial_clusters_per_category;
    if (init.clusters.empty()) continue;
    for (std::size_t j = 0; j < idx.size(); ++j) out.initial_labels[idx[j]] = init.cluster_of[j];

    MergeResult merged = merge_clusters(init.clusters, idx.size(), cfg);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const int first = init.cluster_of[j] - init.clusters.front().id;
      out.merged_labels[idx[j]] = merged.merged_into[first];
    }
    for (auto& c : merged.clusters) out.merged_clusters.push_back(c);
  }

  out.labels = out.merged_labels;
  out.clusters = out.merged_clusters;
  out.history = iterate_classification(raster.pixels, out.valid, out.initial, out.labels, out.clusters, cfg, backend);
  return out;
}

}  // namespace polgd
