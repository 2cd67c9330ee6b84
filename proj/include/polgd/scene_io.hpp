#pragma once

// Scene directories: a `header.txt` of key=value lines plus one flat,
// row-major, little-endian binary file per matrix component.
//
//   rows=<int> cols=<int> looks=<real> kind=T3|S2 byte_order=little
//   dtype=float32|float64 (default float32)
//   <component>=<file name>   for every component of the kind
//
// T3 components: T11 T22 T33 (real), T12 T13 T23 (interleaved re/im).
// S2 components: HH HV VH VV (interleaved re/im).
// Masked pixels are stored as NaN and come back masked.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polgd/raster.hpp"

namespace polgd {

enum class SceneKind { T3, S2 };
enum class SampleType { float32, float64 };

struct SceneHeader {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double looks = 1.0;
  SceneKind kind = SceneKind::T3;
  SampleType dtype = SampleType::float32;
  std::map<std::string, std::string> files;  // component -> file name

  static SceneHeader parse(const std::filesystem::path& header_file);
  void write(const std::filesystem::path& header_file) const;
};

std::vector<std::string> component_names(SceneKind kind);

using Scene = std::variant<CoherencyRaster, SinclairRaster>;

Scene read_scene(const std::filesystem::path& dir);
void write_scene(const CoherencyRaster& raster, const std::filesystem::path& dir,
                 SampleType dtype = SampleType::float32);
void write_scene(const SinclairRaster& raster, const std::filesystem::path& dir);

// Flat little-endian sample files.
void write_samples(const std::filesystem::path& file, std::span<const double> values,
                   SampleType dtype = SampleType::float32);
std::vector<double> read_samples(const std::filesystem::path& file, SampleType dtype, std::size_t expected,
                                 const std::string& what);

// Label rasters: u16 little-endian, row-major, kMaskedLabel for masked pixels,
// with a key=value text header.
inline constexpr std::uint16_t kMaskedLabel = 0xFFFF;

struct LabelRaster {
  std::size_t rows = 0;
  std::size_t cols = 0;
  int classes_per_category = 0;
  std::vector<std::uint16_t> labels;
};

void write_labels(const LabelRaster& labels, const std::filesystem::path& bin, const std::filesystem::path& hdr);
LabelRaster read_labels(const std::filesystem::path& bin, const std::filesystem::path& hdr);

}  // namespace polgd
