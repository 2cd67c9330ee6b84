#include "polgd/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polgd/error.hpp"

namespace polgd {

KennaughMatrix trihedral_kennaugh() { return KennaughMatrix::diagonal(1.0, 1.0, 1.0, -1.0); }
KennaughMatrix dihedral_kennaugh() { return KennaughMatrix::diagonal(1.0, 1.0, -1.0, 1.0); }
KennaughMatrix random_volume_kennaugh() { return KennaughMatrix::diagonal(1.0, 0.5, 0.5, 0.0); }

TargetRegistry TargetRegistry::builtin() {
  TargetRegistry r;
  r.add({"trihedral", trihedral_kennaugh()});
  r.add({"dihedral", dihedral_kennaugh()});
  r.add({"random_volume", random_volume_kennaugh()});
  return r;
}

void TargetRegistry::add(CanonicalTarget target) {
  if (target.kennaugh.is_degenerate()) throw Error("canonical target '" + target.name + "' has a zero Kennaugh matrix");
  for (const auto& t : targets_)
    if (t.name == target.name) throw Error("duplicate canonical target '" + target.name + "'");
  targets_.push_back(std::move(target));
}

std::size_t TargetRegistry::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < targets_.size(); ++i)
    if (targets_[i].name == name) return i;
  throw Error("unknown canonical target '" + name + "'");
}

double geodesic_distance(const KennaughMatrix& k1, const KennaughMatrix& k2) {
  const double n1 = k1.frobenius_norm();
  const double n2 = k2.frobenius_norm();
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw Error("degenerate Kennaugh matrix");
  return geodesic_distance(k1, n1, k2, n2);
}

double similarity(const KennaughMatrix& k, const CanonicalTarget& target) {
  return 1.0 - geodesic_distance(k, target.kennaugh);
}

void similarity_into(const KennaughMatrix& k, const TargetRegistry& targets, std::span<double> f,
                     std::span<double> gamma, std::span<double> w) {
  const std::size_t n = targets.size();
  if (n < 2) throw Error("at least two canonical targets are required");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = similarity(k, targets[i]);
    total += f[i];
  }
  if (!(total > 0.0)) throw Error("equidistant-degenerate pixel");
  const double power = 2.0 * k.k11();
  for (std::size_t i = 0; i < n; ++i) {
    gamma[i] = f[i] / total;
    w[i] = power * gamma[i];
  }
}

SimilarityTriple similarity_triple(const KennaughMatrix& k, const TargetRegistry& targets) {
  SimilarityTriple st;
  st.f.resize(targets.size());
  st.gamma.resize(targets.size());
  st.w.resize(targets.size());
  similarity_into(k, targets, st.f, st.gamma, st.w);
  return st;
}

std::size_t dominant_target(std::span<const double> w) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[best]) best = i;
  return best;
}

}  // namespace polgd
