// polgd: geodesic-distance scattering similarity and category-preserving
// Wishart classification of polarimetric SAR scenes.

#include <iostream>

#include <CLI11.hpp>

#include "polgd/error.hpp"
#include "polgd/pipeline.hpp"

namespace {

void add_input_flags(CLI::App* cmd, polgd::InputOptions& o) {
  cmd->add_option("-i,--input", o.input, "Scene directory (header.txt + component files)")->required();
  cmd->add_option("-o,--out", o.output, "Output directory")->required();
  cmd->add_flag("--no-deorient", [&o](std::int64_t) { o.preprocess.deorient = false; },
                "Skip orientation-angle compensation");
  cmd->add_option("--filter-window", o.preprocess.filter_window, "Boxcar speckle filter size (odd, 1 = off)")
      ->default_val(5);
  cmd->add_option("--multilook-range", o.range_looks, "Range multilook factor for S2 input")->default_val(1);
  cmd->add_option("--multilook-azimuth", o.azimuth_looks, "Azimuth multilook factor for S2 input")->default_val(1);
  cmd->add_option("--threads", o.threads, "Worker threads (0 = OpenMP default)")->default_val(0);
  cmd->add_flag("--serial", [&o](std::int64_t) { o.backend = polgd::Backend::serial; },
                "Use the serial reference kernels");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarimetric SAR classification with geodesic scattering similarity"};
  app.require_subcommand(1);

  polgd::ClassifyOptions classify;
  auto* cmd_classify = app.add_subcommand("classify", "Run the full classification pipeline");
  add_input_flags(cmd_classify, classify);
  auto& cc = classify.classifier;
  cmd_classify->add_option("--initial-clusters", cc.initial_clusters_per_category, "Initial clusters per category")
      ->default_val(30);
  cmd_classify->add_option("--classes-per-category", cc.final_classes_per_category, "Final classes per category")
      ->default_val(5);
  cmd_classify->add_option("--max-iterations", cc.max_iterations, "Wishart reassignment passes")->default_val(4);
  cmd_classify->add_option("--convergence-fraction", cc.convergence_fraction,
                           "Stop once fewer than this fraction of pixels change label")
      ->default_val(0.01);
  cmd_classify->add_option("--mixed-threshold", cc.mixed_threshold, "Mixed-pixel threshold on max(w)/sum(w)")
      ->default_val(0.5);
  cmd_classify->add_option("--dump-stage", classify.dump_stages, "Write intermediate results of a stage")
      ->check(CLI::IsMember(polgd::dump_stage_names()));

  polgd::SimilarityOptions similarity;
  auto* cmd_similarity = app.add_subcommand("similarity", "Write per-target similarity maps");
  add_input_flags(cmd_similarity, similarity);

  polgd::GenerateOptions generate;
  auto* cmd_generate = app.add_subcommand("generate", "Generate a synthetic scene from a spec file");
  cmd_generate->add_option("-s,--spec", generate.spec_file, "Scene spec file")->required();
  cmd_generate->add_option("-o,--out", generate.output, "Output scene directory")->required();
  std::uint64_t seed = 0;
  auto* seed_opt = cmd_generate->add_option("--seed", seed, "Seed (overrides the spec file)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_classify->parsed()) {
      polgd::run_classify(classify, std::cerr);
    } else if (cmd_similarity->parsed()) {
      polgd::run_similarity(similarity, std::cerr);
    } else if (cmd_generate->parsed()) {
      if (seed_opt->count()) generate.seed = seed;
      polgd::run_generate(generate, std::cerr);
    }
  } catch (const polgd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
