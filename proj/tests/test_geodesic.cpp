#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "polgd/error.hpp"
#include "polgd/geodesic.hpp"

using namespace polgd;

namespace {

// Closed forms by hand substitution of the canonical matrices.
const double kGdTrihedralVolume = 0.3918265520306072;  // (2/pi) acos(2 / (2 sqrt 1.5))
const double kGdDihedralVolume = 0.73227952719877;     // (2/pi) acos(1 / (2 sqrt 1.5))

KennaughMatrix random_kennaugh(std::mt19937_64& rng) { return kennaugh_from_coherency(oracle::random_psd(rng)); }

}  // namespace

TEST_CASE("geodesic distance anchors between canonical targets") {
  CHECK(std::abs(geodesic_distance(trihedral_kennaugh(), dihedral_kennaugh()) - 1.0) <= 1e-12);
  CHECK(std::abs(geodesic_distance(trihedral_kennaugh(), random_volume_kennaugh()) - kGdTrihedralVolume) <= 1e-12);
  CHECK(std::abs(geodesic_distance(dihedral_kennaugh(), random_volume_kennaugh()) - kGdDihedralVolume) <= 1e-12);
  CHECK(geodesic_distance(random_volume_kennaugh(), random_volume_kennaugh()) == 0.0);
}

TEST_CASE("geodesic distance matches the unit-sphere projection oracle") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_kennaugh(rng);
    const auto b = random_kennaugh(rng);
    CHECK(geodesic_distance(a, b) ==
          doctest::Approx(oracle::geodesic_distance(oracle::to_eigen(a), oracle::to_eigen(b))).epsilon(1e-10));
  }
}

TEST_CASE("self distance is zero and distance is symmetric") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_kennaugh(rng);
    const auto b = random_kennaugh(rng);
    CHECK(geodesic_distance(a, a) == 0.0);
    CHECK(geodesic_distance(a.scaled(3.5), a) < 1e-14);
    CHECK(geodesic_distance(a, b) == geodesic_distance(b, a));
  }
}

TEST_CASE("geodesic distance is invariant under positive scaling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_scale(-6.0, 6.0);
  double worst = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const auto a = random_kennaugh(rng);
    const auto b = random_kennaugh(rng);
    const double l1 = std::exp(log_scale(rng));
    const double l2 = std::exp(log_scale(rng));
    worst = std::max(worst, std::abs(geodesic_distance(a.scaled(l1), b.scaled(l2)) - geodesic_distance(a, b)));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("negative scaling changes the distance") {
  // Only positive scalings are invariant; a sign flip maps GD to 2 - GD.
  const double gd = geodesic_distance(trihedral_kennaugh(), random_volume_kennaugh());
  CHECK(geodesic_distance(trihedral_kennaugh().scaled(-1.0), random_volume_kennaugh()) ==
        doctest::Approx(2.0 - gd).epsilon(1e-12));
}

TEST_CASE("physically realizable matrices stay within [0, 1] of the built-in targets") {
  std::mt19937_64 rng(4);
  const auto targets = TargetRegistry::builtin();
  for (int i = 0; i < 20000; ++i) {
    const auto k = kennaugh_from_coherency(oracle::random_psd(rng, 1 + i % 5));
    for (const auto& t : targets) {
      const double gd = geodesic_distance(k, t.kennaugh);
      CHECK(gd >= 0.0);
      CHECK(gd <= 1.0);
    }
  }
}

TEST_CASE("degenerate kennaugh matrices are rejected") {
  CHECK_THROWS_WITH_AS(geodesic_distance(KennaughMatrix{}, trihedral_kennaugh()), "degenerate Kennaugh matrix", Error);
  CHECK_THROWS_AS(similarity(KennaughMatrix{}, TargetRegistry::builtin()[0]), Error);
  TargetRegistry r;
  CHECK_THROWS_AS(r.add({"zero", KennaughMatrix{}}), Error);
}

TEST_CASE("similarity to canonical targets") {
  const auto targets = TargetRegistry::builtin();
  CHECK(similarity(trihedral_kennaugh(), targets[kTrihedral]) == 1.0);
  CHECK(std::abs(similarity(trihedral_kennaugh(), targets[kDihedral])) <= 1e-12);
  CHECK(similarity(trihedral_kennaugh(), targets[kRandomVolume]) == doctest::Approx(1.0 - kGdTrihedralVolume));
}

TEST_CASE("orthogonal canonical targets are complementary") {
  const auto targets = TargetRegistry::builtin();
  CHECK(similarity(dihedral_kennaugh().scaled(4.0), targets[kDihedral]) == 1.0);
  CHECK(std::abs(similarity(dihedral_kennaugh().scaled(4.0), targets[kTrihedral])) <= 1e-12);
}

TEST_CASE("similarity triple of the trihedral") {
  const auto targets = TargetRegistry::builtin();
  const auto st = similarity_triple(trihedral_kennaugh(), targets);
  const double f_rv = 1.0 - kGdTrihedralVolume;
  const double total = 1.0 + f_rv;
  CHECK(st.gamma[0] == doctest::Approx(1.0 / total).epsilon(1e-12));
  CHECK(std::abs(st.gamma[1]) <= 1e-12);
  CHECK(st.gamma[2] == doctest::Approx(f_rv / total).epsilon(1e-12));
  CHECK(st.gamma[0] == doctest::Approx(0.621823473868866).epsilon(1e-12));
  CHECK(st.w[0] == doctest::Approx(1.243646947737732).epsilon(1e-12));
  CHECK(st.w[2] == doctest::Approx(0.7563530522622678).epsilon(1e-12));

  const auto scaled = similarity_triple(trihedral_kennaugh().scaled(7.0), targets);
  for (int i = 0; i < 3; ++i) {
    CHECK(scaled.gamma[i] == doctest::Approx(st.gamma[i]).epsilon(1e-12));
    CHECK(scaled.w[i] == doctest::Approx(7.0 * st.w[i]).epsilon(1e-12));
  }
}

TEST_CASE("similarity triple of the random volume") {
  const auto st = similarity_triple(random_volume_kennaugh(), TargetRegistry::builtin());
  CHECK(st.gamma[0] == doctest::Approx(0.32420460519406835).epsilon(1e-12));
  CHECK(st.gamma[1] == doctest::Approx(0.1427162111017715).epsilon(1e-12));
  CHECK(st.gamma[2] == doctest::Approx(0.5330791837041601).epsilon(1e-12));
}

TEST_CASE("gamma sums to one and w sums to span") {
  std::mt19937_64 rng(6);
  const auto targets = TargetRegistry::builtin();
  for (int i = 0; i < 5000; ++i) {
    const auto t = oracle::random_psd(rng);
    const auto st = similarity_triple(kennaugh_from_coherency(t), targets);
    CHECK(std::abs(std::accumulate(st.gamma.begin(), st.gamma.end(), 0.0) - 1.0) <= 1e-12);
    CHECK(std::abs(std::accumulate(st.w.begin(), st.w.end(), 0.0) - t.trace()) <= 1e-12 * t.trace());
    for (double v : st.w) CHECK(v >= 0.0);
  }
}

TEST_CASE("dominant target is the argmax with registry-order ties") {
  CHECK(dominant_target(std::vector<double>{1.24, 0.0, 0.76}) == kTrihedral);
  CHECK(dominant_target(std::vector<double>{0.5, 0.5, 0.3}) == kTrihedral);
  CHECK(dominant_target(std::vector<double>{0.1, 0.2, 0.9}) == kRandomVolume);
  CHECK(dominant_target(std::vector<double>{0.1, 0.9, 0.9}) == kDihedral);
}

TEST_CASE("dominant target is unchanged by positive scaling") {
  std::mt19937_64 rng(7);
  const auto targets = TargetRegistry::builtin();
  for (int i = 0; i < 2000; ++i) {
    const auto k = kennaugh_from_coherency(oracle::random_psd(rng));
    CHECK(dominant_target(similarity_triple(k, targets)) == dominant_target(similarity_triple(k.scaled(123.0), targets)));
  }
}

TEST_CASE("registry is ordered and extensible") {
  auto r = TargetRegistry::builtin();
  REQUIRE(r.size() == 3);
  CHECK(r[0].name == "trihedral");
  CHECK(r[1].name == "dihedral");
  CHECK(r[2].name == "random_volume");
  CHECK(r[kRandomVolume].kennaugh == KennaughMatrix::diagonal(1, 0.5, 0.5, 0));

  // Cross-polar (horizontal dipole rotated 45 degrees) target.
  r.add({"cross_pol", kennaugh_from_sinclair({0, 1, 0})});
  CHECK(r.index_of("cross_pol") == 3);
  CHECK_THROWS_AS(r.index_of("helix"), Error);
  CHECK_THROWS_AS(r.add({"trihedral", trihedral_kennaugh()}), Error);

  const auto st = similarity_triple(kennaugh_from_sinclair({0, 1, 0}), r);
  CHECK(st.f.size() == 4);
  CHECK(dominant_target(st) == 3);
}
