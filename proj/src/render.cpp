#include "polgd/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "polgd/error.hpp"

namespace fs = std::filesystem;

namespace polgd {

Rgb class_color(Category category, int rank, int classes_per_category) {
  if (rank < 0 || rank >= classes_per_category)
    throw Error("class index " + std::to_string(rank) + " outside the " + std::to_string(classes_per_category) +
                "-step colour ramp");
  const double t = classes_per_category == 1 ? 0.0 : static_cast<double>(rank) / (classes_per_category - 1);
  const auto primary = static_cast<std::uint8_t>(std::lround(100.0 + 155.0 * t));
  const auto other = static_cast<std::uint8_t>(std::lround(150.0 * t));
  switch (category) {
    case Category::trihedral: return {other, other, primary};
    case Category::dihedral: return {primary, other, other};
    case Category::random_volume: return {other, primary, other};
  }
  return {0, 0, 0};
}

ClassMap make_class_map(std::span<const int> cluster_labels, std::span<const Cluster> clusters, std::size_t rows,
                        std::size_t cols, int classes_per_category) {
  if (cluster_labels.size() != rows * cols) throw Error("label count does not match the raster shape");
  std::vector<Cluster> sorted(clusters.begin(), clusters.end());
  std::sort(sorted.begin(), sorted.end(), [](const Cluster& a, const Cluster& b) {
    return std::pair(a.category, a.id) < std::pair(b.category, b.id);
  });

  ClassMap out;
  std::map<int, std::size_t> by_id;
  std::array<int, kCategoryCount> next_rank{};
  for (const auto& c : sorted) {
    const int rank = next_rank[static_cast<std::size_t>(c.category)]++;
    if (rank >= classes_per_category)
      throw Error("category " + std::string(category_name(c.category)) + " has more than " +
                  std::to_string(classes_per_category) + " classes");
    ClassInfo info;
    info.category = c.category;
    info.rank = rank;
    info.cluster_id = c.id;
    info.class_id = static_cast<std::uint16_t>(static_cast<int>(c.category) * classes_per_category + rank);
    info.center_trace = c.center.trace();
    by_id[c.id] = out.classes.size();
    out.classes.push_back(info);
  }

  out.labels.rows = rows;
  out.labels.cols = cols;
  out.labels.classes_per_category = classes_per_category;
  out.labels.labels.assign(rows * cols, kMaskedLabel);
  for (std::size_t i = 0; i < cluster_labels.size(); ++i) {
    if (cluster_labels[i] == kUnlabeled) continue;
    auto it = by_id.find(cluster_labels[i]);
    if (it == by_id.end()) throw Error("pixel label refers to unknown cluster " + std::to_string(cluster_labels[i]));
    ClassInfo& info = out.classes[it->second];
    out.labels.labels[i] = info.class_id;
    ++info.pixels;
  }
  std::erase_if(out.classes, [](const ClassInfo& c) { return c.pixels == 0; });
  return out;
}

void write_ppm(const fs::path& file, std::size_t rows, std::size_t cols, std::span<const std::uint8_t> rgb) {
  if (rgb.size() != rows * cols * 3) throw Error("RGB buffer does not match the image shape");
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  out << "P6\n" << cols << " " << rows << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) throw Error("failed writing " + file.string());
}

void write_pgm(const fs::path& file, std::size_t rows, std::size_t cols, std::span<const std::uint8_t> gray) {
  if (gray.size() != rows * cols) throw Error("gray buffer does not match the image shape");
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  out << "P5\n" << cols << " " << rows << "\n255\n";
  out.write(reinterpret_cast<const char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
  if (!out) throw Error("failed writing " + file.string());
}

std::vector<std::uint8_t> to_gray(std::span<const double> values) {
  std::vector<std::uint8_t> g(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v)) continue;
    g[i] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
  }
  return g;
}

void render_map(const ClassMap& map, const fs::path& image, const fs::path& legend) {
  const auto& lr = map.labels;
  std::map<std::uint16_t, Rgb> colors;
  for (const auto& c : map.classes) colors[c.class_id] = class_color(c.category, c.rank, lr.classes_per_category);

  std::vector<std::uint8_t> rgb(lr.labels.size() * 3, 0);
  for (std::size_t i = 0; i < lr.labels.size(); ++i) {
    if (lr.labels[i] == kMaskedLabel) continue;
    auto it = colors.find(lr.labels[i]);
    if (it == colors.end()) throw Error("label " + std::to_string(lr.labels[i]) + " has no legend entry");
    std::copy(it->second.begin(), it->second.end(), rgb.begin() + static_cast<std::ptrdiff_t>(3 * i));
  }
  write_ppm(image, lr.rows, lr.cols, rgb);

  std::ofstream out(legend, std::ios::trunc);
  if (!out) throw Error("cannot write " + legend.string());
  out.precision(9);
  out << "class_id,category,r,g,b,pixels,center_trace\n";
  for (const auto& c : map.classes) {
    const Rgb& col = colors.at(c.class_id);
    out << c.class_id << "," << category_name(c.category) << "," << int(col[0]) << "," << int(col[1]) << ","
        << int(col[2]) << "," << c.pixels << "," << c.center_trace << "\n";
  }
}

}  // namespace polgd
