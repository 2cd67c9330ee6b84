#pragma once

// Output maps: colour-coded class maps (binary P6) with a CSV legend, and
// grayscale similarity maps (binary P5).
//
// Trihedral classes use a blue ramp, dihedral classes red and random-volume
// classes green; class 0 of a category is the darkest shade and class N_d - 1
// the lightest. Masked pixels are black.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "polgd/classifier.hpp"
#include "polgd/scene_io.hpp"

namespace polgd {

using Rgb = std::array<std::uint8_t, 3>;

// Throws when rank is outside [0, classes_per_category).
Rgb class_color(Category category, int rank, int classes_per_category);

struct ClassInfo {
  std::uint16_t class_id = 0;  // category * classes_per_category + rank
  Category category = Category::trihedral;
  int rank = 0;
  int cluster_id = 0;
  std::size_t pixels = 0;
  double center_trace = 0.0;
};

struct ClassMap {
  LabelRaster labels;
  std::vector<ClassInfo> classes;  // non-empty classes, ascending class_id
};

// Ranks surviving clusters by id within each category and encodes labels.
ClassMap make_class_map(std::span<const int> cluster_labels, std::span<const Cluster> clusters, std::size_t rows,
                        std::size_t cols, int classes_per_category);

// Writes the P6 image and the legend CSV
// (class_id,category,r,g,b,pixels,center_trace).
void render_map(const ClassMap& map, const std::filesystem::path& image, const std::filesystem::path& legend);

void write_ppm(const std::filesystem::path& file, std::size_t rows, std::size_t cols, std::span<const std::uint8_t> rgb);
void write_pgm(const std::filesystem::path& file, std::size_t rows, std::size_t cols,
               std::span<const std::uint8_t> gray);

// Maps values in [0, 1] to 0..255; NaN maps to 0.
std::vector<std::uint8_t> to_gray(std::span<const double> values);

}  // namespace polgd
