#include "polgd/types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "polgd/error.hpp"

namespace polgd {

cplx CoherencyMatrix::at(std::size_t i, std::size_t j) const {
  if (i > j) return std::conj(at(j, i));
  switch (i * 3 + j) {
    case 0: return t11;
    case 1: return t12;
    case 2: return t13;
    case 4: return t22;
    case 5: return t23;
    case 8: return t33;
    default: throw Error("coherency index out of range");
  }
}

double CoherencyMatrix::frobenius_norm() const {
  return std::sqrt(t11 * t11 + t22 * t22 + t33 * t33 +
                   2.0 * (std::norm(t12) + std::norm(t13) + std::norm(t23)));
}

CoherencyMatrix& CoherencyMatrix::operator+=(const CoherencyMatrix& o) {
  t11 += o.t11;
  t22 += o.t22;
  t33 += o.t33;
  t12 += o.t12;
  t13 += o.t13;
  t23 += o.t23;
  return *this;
}

CoherencyMatrix& CoherencyMatrix::operator*=(double s) {
  t11 *= s;
  t22 *= s;
  t33 *= s;
  t12 *= s;
  t13 *= s;
  t23 *= s;
  return *this;
}

double determinant(const CoherencyMatrix& t) {
  return t.t11 * t.t22 * t.t33 + 2.0 * std::real(t.t12 * t.t23 * std::conj(t.t13)) -
         t.t11 * std::norm(t.t23) - t.t22 * std::norm(t.t13) - t.t33 * std::norm(t.t12);
}

CoherencyMatrix inverse(const CoherencyMatrix& t) {
  const double det = determinant(t);
  if (!(det > 0.0)) throw Error("singular coherency matrix (determinant " + std::to_string(det) + ")");
  const double r = 1.0 / det;
  CoherencyMatrix inv;
  inv.t11 = (t.t22 * t.t33 - std::norm(t.t23)) * r;
  inv.t22 = (t.t11 * t.t33 - std::norm(t.t13)) * r;
  inv.t33 = (t.t11 * t.t22 - std::norm(t.t12)) * r;
  inv.t12 = (t.t13 * std::conj(t.t23) - t.t12 * t.t33) * r;
  inv.t13 = (t.t12 * t.t23 - t.t13 * t.t22) * r;
  inv.t23 = (t.t13 * std::conj(t.t12) - t.t11 * t.t23) * r;
  return inv;
}

double trace_of_product(const CoherencyMatrix& a, const CoherencyMatrix& b) {
  return a.t11 * b.t11 + a.t22 * b.t22 + a.t33 * b.t33 +
         2.0 * (std::real(a.t12 * std::conj(b.t12)) + std::real(a.t13 * std::conj(b.t13)) +
                std::real(a.t23 * std::conj(b.t23)));
}

std::array<double, 3> eigenvalues(const CoherencyMatrix& t) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

bool is_positive_semidefinite(const CoherencyMatrix& t, double rel_tol) {
  const auto ev = eigenvalues(t);
  const double floor = -rel_tol * std::abs(t.trace());
  return ev[0] >= floor && ev[1] >= floor && ev[2] >= floor;
}

KennaughMatrix KennaughMatrix::diagonal(double a, double b, double c, double d) {
  KennaughMatrix k;
  k.set(0, 0, a);
  k.set(1, 1, b);
  k.set(2, 2, c);
  k.set(3, 3, d);
  return k;
}

double KennaughMatrix::dot(const KennaughMatrix& o) const {
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    diag += at(m, m) * o.at(m, m);
    for (std::size_t n = m + 1; n < 4; ++n) off += at(m, n) * o.at(m, n);
  }
  return diag + 2.0 * off;
}

double KennaughMatrix::frobenius_norm() const { return std::sqrt(dot(*this)); }

KennaughMatrix KennaughMatrix::scaled(double s) const {
  KennaughMatrix k = *this;
  for (double& v : k.upper_) v *= s;
  return k;
}

KennaughMatrix& KennaughMatrix::operator+=(const KennaughMatrix& o) {
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] += o.upper_[i];
  return *this;
}

PauliVector pauli_from_sinclair(const SinclairMatrix& s) {
  const double r = 1.0 / std::sqrt(2.0);
  return {{r * (s.hh() + s.vv()), r * (s.hh() - s.vv()), r * 2.0 * s.hv()}};
}

CoherencyMatrix outer_product(const PauliVector& k) {
  CoherencyMatrix t;
  t.t11 = std::norm(k[0]);
  t.t22 = std::norm(k[1]);
  t.t33 = std::norm(k[2]);
  t.t12 = k[0] * std::conj(k[1]);
  t.t13 = k[0] * std::conj(k[2]);
  t.t23 = k[1] * std::conj(k[2]);
  return t;
}

CoherencyMatrix coherency_from_pauli(std::span<const PauliVector> samples) {
  if (samples.empty()) throw Error("no samples");
  CoherencyMatrix t;
  for (const auto& k : samples) t += outer_product(k);
  t *= 1.0 / static_cast<double>(samples.size());
  return t;
}

KennaughMatrix kennaugh_from_sinclair(const SinclairMatrix& s) {
  const cplx a = s.hh();
  const cplx b = s.hv();
  const cplx c = s.vv();
  const double aa = std::norm(a);
  const double bb = std::norm(b);
  const double cc = std::norm(c);
  const cplx ab = a * std::conj(b);
  const cplx bc = b * std::conj(c);
  const cplx ac = a * std::conj(c);

  KennaughMatrix k;
  k.set(0, 0, 0.5 * aa + bb + 0.5 * cc);
  k.set(0, 1, 0.5 * (aa - cc));
  k.set(0, 2, ab.real() + bc.real());
  k.set(0, 3, ab.imag() + bc.imag());
  k.set(1, 1, 0.5 * aa - bb + 0.5 * cc);
  k.set(1, 2, ab.real() - bc.real());
  k.set(1, 3, ab.imag() - bc.imag());
  k.set(2, 2, ac.real() + bb);
  k.set(2, 3, ac.imag());
  k.set(3, 3, bb - ac.real());
  return k;
}

KennaughMatrix kennaugh_from_coherency(const CoherencyMatrix& t) {
  KennaughMatrix k;
  k.set(0, 0, 0.5 * (t.t11 + t.t22 + t.t33));
  k.set(0, 1, t.t12.real());
  k.set(0, 2, t.t13.real());
  k.set(0, 3, t.t23.imag());
  k.set(1, 1, 0.5 * (t.t11 + t.t22 - t.t33));
  k.set(1, 2, t.t23.real());
  k.set(1, 3, t.t13.imag());
  k.set(2, 2, 0.5 * (t.t11 - t.t22 + t.t33));
  k.set(2, 3, -t.t12.imag());
  k.set(3, 3, 0.5 * (-t.t11 + t.t22 + t.t33));
  return k;
}

double span(const SinclairMatrix& s) { return std::norm(s.hh()) + 2.0 * std::norm(s.hv()) + std::norm(s.vv()); }
double span(const CoherencyMatrix& t) { return t.trace(); }
double span(const KennaughMatrix& k) { return 2.0 * k.k11(); }

}  // namespace polgd
