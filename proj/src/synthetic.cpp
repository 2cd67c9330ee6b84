#include "polgd/synthetic.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "polgd/error.hpp"

namespace polgd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

CoherencyMatrix model_coherency(ScatteringModel model, double span) {
  switch (model) {
    case ScatteringModel::trihedral: return CoherencyMatrix::diagonal(span, 0.0, 0.0);
    case ScatteringModel::dihedral: return CoherencyMatrix::diagonal(0.0, span, 0.0);
    case ScatteringModel::volume: return CoherencyMatrix::diagonal(0.5 * span, 0.25 * span, 0.25 * span);
  }
  throw Error("unknown scattering model");
}

void SyntheticSceneSpec::validate() const {
  if (!seed) throw Error("scene spec: an explicit seed is required for reproducibility");
  if (rows == 0 || cols == 0) throw Error("scene spec: rows and cols must be positive");
  if (regions.empty()) throw Error("scene spec: no regions");
  std::vector<int> cover(rows * cols, 0);
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const auto& r = regions[k];
    const std::string name = "region " + std::to_string(k + 1);
    if (r.row_begin >= r.row_end || r.col_begin >= r.col_end || r.row_end > rows || r.col_end > cols)
      throw Error("scene spec: " + name + " has bounds outside the " + std::to_string(rows) + "x" +
                  std::to_string(cols) + " raster or is empty");
    if (!(r.span > 0.0)) throw Error("scene spec: " + name + " needs span > 0");
    if (r.looks < 1) throw Error("scene spec: " + name + " needs looks >= 1");
    for (std::size_t y = r.row_begin; y < r.row_end; ++y)
      for (std::size_t x = r.col_begin; x < r.col_end; ++x) ++cover[y * cols + x];
  }
  for (std::size_t i = 0; i < cover.size(); ++i)
    if (cover[i] != 1)
      throw Error("scene spec: regions do not tile the raster (pixel " + std::to_string(i / cols) + "," +
                  std::to_string(i % cols) + " covered " + std::to_string(cover[i]) + " times)");
}

namespace {

ScatteringModel parse_model(const std::string& s, int lineno) {
  if (s == "trihedral") return ScatteringModel::trihedral;
  if (s == "dihedral") return ScatteringModel::dihedral;
  if (s == "volume") return ScatteringModel::volume;
  throw Error("scene spec line " + std::to_string(lineno) + ": unknown model '" + s + "'");
}

// Lower-triangular L with L L^H = C, C Hermitian positive definite.
std::array<cplx, 6> cholesky(const CoherencyMatrix& c) {
  const double l11 = std::sqrt(c.t11);
  const cplx l21 = std::conj(c.t12) / l11;
  const cplx l31 = std::conj(c.t13) / l11;
  const double l22 = std::sqrt(c.t22 - std::norm(l21));
  const cplx l32 = (std::conj(c.t23) - l31 * std::conj(l21)) / l22;
  const double l33 = std::sqrt(c.t33 - std::norm(l31) - std::norm(l32));
  return {l11, l21, l22, l31, l32, l33};
}

}  // namespace

SyntheticSceneSpec parse_scene_spec(std::istream& in) {
  SyntheticSceneSpec spec;
  int default_looks = 1;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw Error("scene spec line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) fail("expected key = value");
    std::istringstream key_stream(line.substr(0, eq));
    std::string key;
    key_stream >> key;
    std::istringstream value(line.substr(eq + 1));

    auto read_int = [&](long long& v) {
      if (!(value >> v)) fail("'" + key + "' needs an integer");
    };
    if (key == "rows" || key == "cols" || key == "looks") {
      long long v = 0;
      read_int(v);
      if (v <= 0) fail("'" + key + "' must be positive");
      if (key == "rows") spec.rows = v;
      if (key == "cols") spec.cols = v;
      if (key == "looks") default_looks = static_cast<int>(v);
    } else if (key == "seed") {
      unsigned long long v = 0;
      if (!(value >> v)) fail("'seed' needs a non-negative integer");
      spec.seed = v;
    } else if (key == "region") {
      long long r0, r1, c0, c1;
      std::string model;
      double span;
      if (!(value >> r0 >> r1 >> c0 >> c1 >> model >> span)) fail("region needs: r0 r1 c0 c1 model span [looks]");
      if (r0 < 0 || c0 < 0 || r1 <= r0 || c1 <= c0) fail("bad region bounds");
      SceneRegion r{static_cast<std::size_t>(r0), static_cast<std::size_t>(r1), static_cast<std::size_t>(c0),
                    static_cast<std::size_t>(c1), parse_model(model, lineno), span, default_looks};
      long long looks;
      if (value >> looks) r.looks = static_cast<int>(looks);
      if (r.looks < 1) fail("region looks must be >= 1");
      if (!(span > 0.0)) fail("region span must be > 0");
      if (spec.rows && r1 > static_cast<long long>(spec.rows)) fail("bad region bounds (row end beyond rows)");
      if (spec.cols && c1 > static_cast<long long>(spec.cols)) fail("bad region bounds (col end beyond cols)");
      spec.regions.push_back(r);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

SyntheticSceneSpec three_region_spec(std::size_t rows, std::size_t cols, int looks, std::uint64_t seed, double span) {
  SyntheticSceneSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.seed = seed;
  const std::size_t a = cols / 3;
  const std::size_t b = 2 * cols / 3;
  spec.regions = {{0, rows, 0, a, ScatteringModel::trihedral, span, looks},
                  {0, rows, a, b, ScatteringModel::dihedral, span, looks},
                  {0, rows, b, cols, ScatteringModel::volume, span, looks}};
  return spec;
}

CoherencyRaster generate_scene(const SyntheticSceneSpec& spec) {
  spec.validate();
  int looks = spec.regions.front().looks;
  for (const auto& r : spec.regions) looks = std::min(looks, r.looks);
  CoherencyRaster out(spec.rows, spec.cols, looks);

  const auto n_regions = static_cast<std::ptrdiff_t>(spec.regions.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n_regions; ++k) {
    const SceneRegion& region = spec.regions[k];
    CoherencyMatrix cov = model_coherency(region.model, region.span);
    const double delta = 1e-6 * region.span;
    cov.t11 += delta;
    cov.t22 += delta;
    cov.t33 += delta;
    const auto l = cholesky(cov);

    std::mt19937_64 rng(splitmix64(*spec.seed + static_cast<std::uint64_t>(k + 1) * 0x9E3779B97F4A7C15ull));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double r2 = 1.0 / std::sqrt(2.0);
    const double inv_looks = 1.0 / region.looks;

    for (std::size_t y = region.row_begin; y < region.row_end; ++y)
      for (std::size_t x = region.col_begin; x < region.col_end; ++x) {
        CoherencyMatrix t;
        for (int look = 0; look < region.looks; ++look) {
          std::array<cplx, 3> z;
          for (auto& zi : z) {
            const double re = normal(rng);
            const double im = normal(rng);
            zi = cplx(re, im) * r2;
          }
          const PauliVector k{{l[0] * z[0], l[1] * z[0] + l[2] * z[1], l[3] * z[0] + l[4] * z[1] + l[5] * z[2]}};
          t += outer_product(k);
        }
        t *= inv_looks;
        out.at(y, x) = t;
      }
  }
  return out;
}

std::vector<ScatteringModel> scene_truth(const SyntheticSceneSpec& spec) {
  std::vector<ScatteringModel> truth(spec.rows * spec.cols);
  for (const auto& r : spec.regions)
    for (std::size_t y = r.row_begin; y < r.row_end; ++y)
      for (std::size_t x = r.col_begin; x < r.col_end; ++x) truth[y * spec.cols + x] = r.model;
  return truth;
}

}  // namespace polgd
