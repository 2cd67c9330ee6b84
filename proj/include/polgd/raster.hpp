#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polgd/error.hpp"
#include "polgd/types.hpp"

namespace polgd {

// Row-major image of per-pixel payloads. Rows run along azimuth, columns
// along range. Pixels whose valid flag is 0 are skipped by every statistic.
template <class Pixel>
struct Raster {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double looks = 1.0;
  std::vector<Pixel> pixels;
  std::vector<std::uint8_t> valid;

  Raster() = default;
  Raster(std::size_t r, std::size_t c, double l = 1.0)
      : rows(r), cols(c), looks(l), pixels(r * c), valid(r * c, 1) {}

  std::size_t size() const { return rows * cols; }
  bool empty() const { return size() == 0; }
  std::size_t index(std::size_t r, std::size_t c) const { return r * cols + c; }
  Pixel& at(std::size_t r, std::size_t c) { return pixels[index(r, c)]; }
  const Pixel& at(std::size_t r, std::size_t c) const { return pixels[index(r, c)]; }
  bool is_valid(std::size_t i) const { return valid[i] != 0; }

  std::size_t valid_count() const {
    std::size_t n = 0;
    for (auto v : valid) n += v != 0;
    return n;
  }

  void check_shape() const {
    if (pixels.size() != rows * cols || valid.size() != rows * cols)
      throw Error("raster payload does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
};

using SinclairRaster = Raster<SinclairMatrix>;
using CoherencyRaster = Raster<CoherencyMatrix>;
using KennaughRaster = Raster<KennaughMatrix>;

}  // namespace polgd
