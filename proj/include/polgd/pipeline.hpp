#pragma once

// End-to-end drivers behind the `polgd` subcommands. Stage order for
// classification: read -> [multilook] -> [deorient] -> [filter] -> Kennaugh ->
// similarity -> categorize -> cluster -> merge -> iterate -> render.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polgd/classifier.hpp"
#include "polgd/kernels.hpp"
#include "polgd/preprocess.hpp"
#include "polgd/synthetic.hpp"

namespace polgd {

// Stage names accepted by --dump-stage.
const std::vector<std::string>& dump_stage_names();

struct InputOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  PreprocessConfig preprocess;
  int range_looks = 1;  // S2 input only
  int azimuth_looks = 1;
  int threads = 0;  // 0 keeps the OpenMP default
  Backend backend = Backend::openmp;
};

struct ClassifyOptions : InputOptions {
  ClassifierConfig classifier;
  std::vector<std::string> dump_stages;

  void validate() const;
};

struct SimilarityOptions : InputOptions {
  void validate() const;
};

struct GenerateOptions {
  std::filesystem::path spec_file;
  std::filesystem::path output;
  std::optional<std::uint64_t> seed;  // overrides the spec file
};

struct ClassifyRun {
  CoherencyRaster preprocessed;
  SimilarityRaster similarity;
  ClassificationResult result;
};

// Writes labels.bin, labels.hdr, map.ppm, legend.csv and report.jsonl into
// options.output. Throws polgd::Error on any failure.
ClassifyRun run_classify(const ClassifyOptions& options, std::ostream& log);

// Writes similarity_<target>.pgm and f_/gamma_/w_<target>.f32 per target plus
// similarity.hdr. Returns the number of valid pixels.
std::size_t run_similarity(const SimilarityOptions& options, std::ostream& log);

void run_generate(const GenerateOptions& options, std::ostream& log);

// Reads the scene, multilooks S2 input and applies deorientation and
// filtering; shared by both raster subcommands.
CoherencyRaster load_and_preprocess(const InputOptions& options, std::ostream& log,
                                    const std::vector<std::string>& dump_stages = {});

}  // namespace polgd
