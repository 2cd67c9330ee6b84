#pragma once

// Polarimetric matrix types and the conversions among them.
//
//   SinclairMatrix  --pauli_from_sinclair-->  PauliVector
//   PauliVector[]   --coherency_from_pauli--> CoherencyMatrix
//   SinclairMatrix  --kennaugh_from_sinclair--> KennaughMatrix  (coherent)
//   CoherencyMatrix --kennaugh_from_coherency--> KennaughMatrix (incoherent)
//
// All types are small immutable-by-convention values; every function here is
// pure and safe to call concurrently.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace polgd {

using cplx = std::complex<double>;

// Monostatic 2x2 scattering matrix. Only one cross-polar term is stored, so
// hv() and vh() always agree.
class SinclairMatrix {
 public:
  SinclairMatrix() = default;
  SinclairMatrix(cplx hh, cplx hv, cplx vv) : hh_(hh), hv_(hv), vv_(vv) {}

  // Symmetrizes a measured matrix whose cross-polar channels differ slightly
  // (calibration residue) by averaging them.
  static SinclairMatrix from_measurement(cplx hh, cplx hv, cplx vh, cplx vv) {
    return {hh, 0.5 * (hv + vh), vv};
  }

  cplx hh() const { return hh_; }
  cplx hv() const { return hv_; }
  cplx vh() const { return hv_; }
  cplx vv() const { return vv_; }

 private:
  cplx hh_{};
  cplx hv_{};
  cplx vv_{};
};

// k = (1/sqrt2) [HH+VV, HH-VV, 2HV]
struct PauliVector {
  std::array<cplx, 3> k{};

  cplx operator[](std::size_t i) const { return k[i]; }
  double norm2() const { return std::norm(k[0]) + std::norm(k[1]) + std::norm(k[2]); }
};

// 3x3 Hermitian coherency matrix; only the diagonal and upper triangle are
// stored. Indices in at() are zero-based.
struct CoherencyMatrix {
  double t11 = 0.0;
  double t22 = 0.0;
  double t33 = 0.0;
  cplx t12{};
  cplx t13{};
  cplx t23{};

  static CoherencyMatrix diagonal(double a, double b, double c) { return {a, b, c, {}, {}, {}}; }
  static CoherencyMatrix identity() { return diagonal(1.0, 1.0, 1.0); }

  cplx at(std::size_t i, std::size_t j) const;
  double trace() const { return t11 + t22 + t33; }
  double frobenius_norm() const;

  CoherencyMatrix& operator+=(const CoherencyMatrix& o);
  CoherencyMatrix& operator*=(double s);
  friend CoherencyMatrix operator+(CoherencyMatrix a, const CoherencyMatrix& b) { return a += b; }
  friend CoherencyMatrix operator*(double s, CoherencyMatrix a) { return a *= s; }
  friend bool operator==(const CoherencyMatrix&, const CoherencyMatrix&) = default;
};

// Determinant of a Hermitian matrix (always real).
double determinant(const CoherencyMatrix& t);
// Inverse of a Hermitian matrix via the adjugate; throws polgd::Error when the
// determinant is not strictly positive.
CoherencyMatrix inverse(const CoherencyMatrix& t);
// Tr(A B) for Hermitian A and B (always real).
double trace_of_product(const CoherencyMatrix& a, const CoherencyMatrix& b);

// Eigenvalues of T are all >= -rel_tol * trace(T).
bool is_positive_semidefinite(const CoherencyMatrix& t, double rel_tol = 1e-9);
std::array<double, 3> eigenvalues(const CoherencyMatrix& t);

// 4x4 real symmetric Kennaugh matrix, upper triangle stored row-major.
class KennaughMatrix {
 public:
  KennaughMatrix() = default;
  static KennaughMatrix diagonal(double a, double b, double c, double d);

  double at(std::size_t m, std::size_t n) const { return upper_[slot(m, n)]; }
  void set(std::size_t m, std::size_t n, double v) { upper_[slot(m, n)] = v; }
  double k11() const { return upper_[0]; }

  // Tr(A^T B)
  double dot(const KennaughMatrix& o) const;
  double frobenius_norm() const;
  bool is_degenerate() const { return frobenius_norm() == 0.0; }

  KennaughMatrix scaled(double s) const;
  KennaughMatrix& operator+=(const KennaughMatrix& o);
  friend bool operator==(const KennaughMatrix&, const KennaughMatrix&) = default;

 private:
  static constexpr std::size_t slot(std::size_t m, std::size_t n) {
    if (m > n) {
      const std::size_t t = m;
      m = n;
      n = t;
    }
    // rows of length 4, 3, 2, 1
    return m * 4 - m * (m - 1) / 2 + (n - m);
  }

  std::array<double, 10> upper_{};
};

PauliVector pauli_from_sinclair(const SinclairMatrix& s);

// Multi-look average (1/L) sum k k^H. Throws on an empty sequence.
CoherencyMatrix coherency_from_pauli(std::span<const PauliVector> samples);
CoherencyMatrix outer_product(const PauliVector& k);

// Coherent form K = 1/2 A* (S (x) S*) A^H, expanded in closed form.
KennaughMatrix kennaugh_from_sinclair(const SinclairMatrix& s);
// Incoherent form, linear in T.
KennaughMatrix kennaugh_from_coherency(const CoherencyMatrix& t);

double span(const SinclairMatrix& s);
double span(const CoherencyMatrix& t);
double span(const KennaughMatrix& k);

}  // namespace polgd
