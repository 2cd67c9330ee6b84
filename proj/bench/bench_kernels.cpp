// Times the serial reference kernels against the OpenMP kernels on a
// synthetic scene.
//
//   bench_kernels [size=512] [looks=9] [repeats=3]

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <omp.h>

#include "polgd/classifier.hpp"
#include "polgd/kernels.hpp"
#include "polgd/preprocess.hpp"
#include "polgd/synthetic.hpp"

using h_clock = std::chrono::high_resolution_clock;

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t1 = h_clock::now();
    f();
    auto t2 = h_clock::now();
    best = std::min(best, std::chrono::duration<double>(t2 - t1).count());
  }
  return best;
}

int main(int argc, char** argv) {
  const std::size_t size = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 512;
  const int looks = argc > 2 ? std::atoi(argv[2]) : 9;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

  const auto scene = polgd::generate_scene(polgd::three_region_spec(size, size, looks, 1));
  const auto targets = polgd::TargetRegistry::builtin();
  std::cout << "scene " << size << "x" << size << ", threads " << omp_get_max_threads() << "\n";
  std::cout << std::left << std::setw(14) << "kernel" << std::setw(12) << "serial[s]" << std::setw(12) << "omp[s]"
            << "speedup\n";

  auto report = [](const char* name, double s, double p) {
    std::cout << std::left << std::setw(14) << name << std::setw(12) << s << std::setw(12) << p << s / p << "\n";
  };

  namespace ks = polgd::kernels::serial;
  namespace ko = polgd::kernels::omp;

  {
    auto r1 = scene, r2 = scene;
    report("deorient", best_of(repeats, [&] { ks::deorient(r1); }), best_of(repeats, [&] { ko::deorient(r2); }));
  }
  report("boxcar5", best_of(repeats, [&] { ks::boxcar(scene, 5); }), best_of(repeats, [&] { ko::boxcar(scene, 5); }));
  const auto k = ko::kennaugh(scene);
  report("kennaugh", best_of(repeats, [&] { ks::kennaugh(scene); }), best_of(repeats, [&] { ko::kennaugh(scene); }));
  report("similarity", best_of(repeats, [&] { ks::similarity(k, targets); }),
         best_of(repeats, [&] { ko::similarity(k, targets); }));

  const auto sim = ko::similarity(k, targets);
  polgd::ClassifierConfig cfg;
  cfg.max_iterations = 2;
  cfg.convergence_fraction = 0.0;
  report("classify", best_of(repeats, [&] { polgd::classify(scene, sim, cfg, polgd::Backend::serial); }),
         best_of(repeats, [&] { polgd::classify(scene, sim, cfg, polgd::Backend::openmp); }));
  return 0;
}
