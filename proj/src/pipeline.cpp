#include "polgd/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <omp.h>

#include <json.hpp>

#include "polgd/error.hpp"
#include "polgd/geodesic.hpp"
#include "polgd/render.hpp"
#include "polgd/scene_io.hpp"

namespace fs = std::filesystem;

namespace polgd {

const std::vector<std::string>& dump_stage_names() {
  static const std::vector<std::string> names{"deorient",   "filter",  "kennaugh", "similarity",
                                              "categorize", "cluster", "merge",    "iterate"};
  return names;
}

namespace {

void validate_input(const InputOptions& o) {
  if (o.input.empty()) throw Error("--input is required");
  if (o.output.empty()) throw Error("--out is required");
  if (o.threads < 0) throw Error("--threads must be >= 0");
  if (o.range_looks < 1) throw Error("--multilook-range must be >= 1");
  if (o.azimuth_looks < 1) throw Error("--multilook-azimuth must be >= 1");
  o.preprocess.validate();
}

bool wants(const std::vector<std::string>& stages, const std::string& s) {
  return std::find(stages.begin(), stages.end(), s) != stages.end();
}

fs::path stage_dir(const fs::path& out, const std::string& stage) {
  fs::path d = out / "stages" / stage;
  fs::create_directories(d);
  return d;
}

void apply_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

void write_similarity_rasters(const SimilarityRaster& sim, const TargetRegistry& targets, const fs::path& dir,
                              SampleType dtype) {
  const std::size_t n = sim.size();
  std::vector<double> f(n), g(n), w(n);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = sim.f[i * sim.n_targets + t];
      g[i] = sim.gamma[i * sim.n_targets + t];
      w[i] = sim.w[i * sim.n_targets + t];
    }
    const std::string ext = dtype == SampleType::float32 ? ".f32" : ".f64";
    write_samples(dir / ("f_" + targets[t].name + ext), f, dtype);
    write_samples(dir / ("gamma_" + targets[t].name + ext), g, dtype);
    write_samples(dir / ("w_" + targets[t].name + ext), w, dtype);
  }
  std::ofstream h(dir / "similarity.hdr", std::ios::trunc);
  h << "rows=" << sim.rows << "\ncols=" << sim.cols << "\nbyte_order=little\n"
    << "dtype=" << (dtype == SampleType::float32 ? "float32" : "float64") << "\ntargets=";
  for (std::size_t t = 0; t < targets.size(); ++t) h << (t ? "," : "") << targets[t].name;
  h << "\n";
}

void dump_kennaugh(const KennaughRaster& k, const fs::path& dir) {
  std::vector<double> v(k.size());
  std::ofstream h(dir / "kennaugh.hdr", std::ios::trunc);
  h << "rows=" << k.rows << "\ncols=" << k.cols << "\nbyte_order=little\ndtype=float64\n";
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = m; n < 4; ++n) {
      for (std::size_t i = 0; i < k.size(); ++i)
        v[i] = k.is_valid(i) ? k.pixels[i].at(m, n) : std::numeric_limits<double>::quiet_NaN();
      const std::string name = "K" + std::to_string(m + 1) + std::to_string(n + 1);
      write_samples(dir / (name + ".bin"), v, SampleType::float64);
      h << name << "=" << name << ".bin\n";
    }
}

void dump_labels(std::span<const int> labels, std::size_t rows, std::size_t cols, const fs::path& dir) {
  LabelRaster lr{rows, cols, 0, std::vector<std::uint16_t>(labels.size(), kMaskedLabel)};
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != kUnlabeled) lr.labels[i] = static_cast<std::uint16_t>(labels[i]);
  write_labels(lr, dir / "cluster_ids.bin", dir / "cluster_ids.hdr");
}

void write_class_outputs(const ClassMap& map, const fs::path& dir) {
  write_labels(map.labels, dir / "labels.bin", dir / "labels.hdr");
  render_map(map, dir / "map.ppm", dir / "legend.csv");
}

}  // namespace

void ClassifyOptions::validate() const {
  validate_input(*this);
  classifier.validate();
  for (const auto& s : dump_stages)
    if (!wants(dump_stage_names(), s)) throw Error("--dump-stage: unknown stage '" + s + "'");
}

void SimilarityOptions::validate() const { validate_input(*this); }

CoherencyRaster load_and_preprocess(const InputOptions& options, std::ostream& log,
                                    const std::vector<std::string>& dump_stages) {
  Scene scene = read_scene(options.input);
  CoherencyRaster raster;
  if (auto* s2 = std::get_if<SinclairRaster>(&scene)) {
    raster = multilook(*s2, options.range_looks, options.azimuth_looks);
    log << "multilooked S2 scene to " << raster.rows << "x" << raster.cols << " (" << raster.looks << " looks)\n";
  } else {
    if (options.range_looks != 1) throw Error("--multilook-range applies to S2 scenes only");
    if (options.azimuth_looks != 1) throw Error("--multilook-azimuth applies to S2 scenes only");
    raster = std::move(std::get<CoherencyRaster>(scene));
  }
  log << "scene " << raster.rows << "x" << raster.cols << ", " << raster.valid_count() << " valid pixels\n";

  if (options.preprocess.deorient) {
    raster = deorient(raster, options.backend);
    if (wants(dump_stages, "deorient"))
      write_scene(raster, stage_dir(options.output, "deorient"), SampleType::float64);
  }
  raster = speckle_filter(raster, options.preprocess, options.backend);
  if (wants(dump_stages, "filter")) write_scene(raster, stage_dir(options.output, "filter"), SampleType::float64);
  return raster;
}

ClassifyRun run_classify(const ClassifyOptions& options, std::ostream& log) {
  options.validate();
  apply_threads(options.threads);
  fs::create_directories(options.output);
  const auto& dumps = options.dump_stages;

  ClassifyRun run;
  run.preprocessed = load_and_preprocess(options, log, dumps);
  const TargetRegistry targets = TargetRegistry::builtin();

  const KennaughRaster kennaugh = options.backend == Backend::serial ? kernels::serial::kennaugh(run.preprocessed)
                                                                     : kernels::omp::kennaugh(run.preprocessed);
  if (wants(dumps, "kennaugh")) dump_kennaugh(kennaugh, stage_dir(options.output, "kennaugh"));

  run.similarity = options.backend == Backend::serial ? kernels::serial::similarity(kennaugh, targets)
                                                      : kernels::omp::similarity(kennaugh, targets);
  if (wants(dumps, "similarity"))
    write_similarity_rasters(run.similarity, targets, stage_dir(options.output, "similarity"), SampleType::float64);

  run.result = classify(run.preprocessed, run.similarity, options.classifier, options.backend);
  const auto& res = run.result;
  const std::size_t rows = run.preprocessed.rows;
  const std::size_t cols = run.preprocessed.cols;

  if (wants(dumps, "categorize")) {
    const fs::path d = stage_dir(options.output, "categorize");
    std::vector<std::uint8_t> cat(res.valid.size(), 0xFF), mixed(res.valid.size(), 0);
    for (std::size_t i = 0; i < res.valid.size(); ++i)
      if (res.valid[i]) {
        cat[i] = static_cast<std::uint8_t>(res.initial[i].category);
        mixed[i] = res.initial[i].mixed;
      }
    std::ofstream(d / "category.bin", std::ios::binary).write(reinterpret_cast<const char*>(cat.data()), cat.size());
    std::ofstream(d / "mixed.bin", std::ios::binary).write(reinterpret_cast<const char*>(mixed.data()), mixed.size());
    std::ofstream(d / "category.hdr") << "rows=" << rows << "\ncols=" << cols
                                      << "\ndtype=uint8\nmasked=255\ncategories=trihedral,dihedral,random_volume\n";
  }
  if (wants(dumps, "cluster")) dump_labels(res.initial_labels, rows, cols, stage_dir(options.output, "cluster"));
  if (wants(dumps, "merge")) {
    const fs::path d = stage_dir(options.output, "merge");
    dump_labels(res.merged_labels, rows, cols, d);
    write_class_outputs(make_class_map(res.merged_labels, res.merged_clusters, rows, cols,
                                       options.classifier.final_classes_per_category),
                        d);
  }

  const ClassMap map =
      make_class_map(res.labels, res.clusters, rows, cols, options.classifier.final_classes_per_category);
  write_class_outputs(map, options.output);
  if (wants(dumps, "iterate")) {
    const fs::path d = stage_dir(options.output, "iterate");
    dump_labels(res.labels, rows, cols, d);
    write_class_outputs(map, d);
  }

  std::ofstream report(options.output / "report.jsonl", std::ios::trunc);
  if (!report) throw Error("cannot write report.jsonl");
  for (const auto& rec : res.history) {
    nlohmann::json j;
    j["iteration"] = rec.iteration;
    j["changes"] = rec.changes;
    j["objective"] = rec.objective;
    j["clusters"] = rec.clusters;
    report << j.dump() << "\n";
  }

  log << "classified " << std::count(res.valid.begin(), res.valid.end(), 1) << " pixels into " << map.classes.size()
      << " classes after " << res.history.size() - 1 << " Wishart passes\n";
  return run;
}

std::size_t run_similarity(const SimilarityOptions& options, std::ostream& log) {
  options.validate();
  apply_threads(options.threads);
  fs::create_directories(options.output);

  const CoherencyRaster raster = load_and_preprocess(options, log);
  const TargetRegistry targets = TargetRegistry::builtin();
  const KennaughRaster kennaugh = options.backend == Backend::serial ? kernels::serial::kennaugh(raster)
                                                                     : kernels::omp::kennaugh(raster);
  const SimilarityRaster sim = options.backend == Backend::serial ? kernels::serial::similarity(kennaugh, targets)
                                                                  : kernels::omp::similarity(kennaugh, targets);

  const std::size_t valid = static_cast<std::size_t>(std::count(sim.valid.begin(), sim.valid.end(), 1));
  if (valid == 0) log << "warning: scene has no valid pixels; similarity maps are empty\n";

  write_similarity_rasters(sim, targets, options.output, SampleType::float32);
  std::vector<double> f(sim.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t i = 0; i < sim.size(); ++i) f[i] = sim.f[i * sim.n_targets + t];
    write_pgm(options.output / ("similarity_" + targets[t].name + ".pgm"), sim.rows, sim.cols, to_gray(f));
  }
  log << "wrote similarity maps for " << targets.size() << " targets (" << valid << " valid pixels)\n";
  return valid;
}

void run_generate(const GenerateOptions& options, std::ostream& log) {
  std::ifstream in(options.spec_file);
  if (!in) throw Error("cannot open scene spec " + options.spec_file.string());
  if (options.output.empty()) throw Error("--out is required");

  // A later seed line wins, so --seed overrides the spec file.
  std::stringstream text;
  text << in.rdbuf();
  std::string body = text.str();
  if (options.seed) body += "\nseed = " + std::to_string(*options.seed) + "\n";
  std::istringstream spec_stream(body);
  const SyntheticSceneSpec spec = parse_scene_spec(spec_stream);

  const CoherencyRaster raster = generate_scene(spec);
  write_scene(raster, options.output);
  log << "generated " << spec.rows << "x" << spec.cols << " scene with " << spec.regions.size() << " regions into "
      << options.output.string() << "\n";
}

}  // namespace polgd
