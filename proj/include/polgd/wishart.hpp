#pragma once

// Complex-Wishart dissimilarities used by the classifier.
//
//   pixel to center:   d(T, V)   = ln|V| + Tr(V^-1 T)
//   center to center:  D(Vi, Vj) = 1/2 { ln|Vi| + ln|Vj| + Tr(Vi^-1 Vj + Vj^-1 Vi) }
//
// Both are invariant under a fixed unitary change of basis, so they give the
// same answers on coherency (Pauli basis) and covariance (lexicographic basis)
// matrices.

#include "polgd/types.hpp"

namespace polgd {

// Relative diagonal loading applied to class centers before inversion.
inline constexpr double kCenterRegularization = 1e-6;

// V + eps * trace(V)/3 * I
CoherencyMatrix regularized(const CoherencyMatrix& v, double eps = kCenterRegularization);

// Precomputed inverse and log-determinant of a regularized class center.
struct WishartModel {
  CoherencyMatrix inverse;
  double log_det = 0.0;
};

// Throws polgd::Error for a zero-trace or non-invertible center.
WishartModel make_wishart_model(const CoherencyMatrix& center, double eps = kCenterRegularization);

// Formulas applied to the matrices exactly as given (no regularization).
double wishart_pixel_distance(const CoherencyMatrix& t, const CoherencyMatrix& center);
double wishart_center_distance(const CoherencyMatrix& vi, const CoherencyMatrix& vj);

inline double wishart_pixel_distance(const CoherencyMatrix& t, const WishartModel& m) {
  return m.log_det + trace_of_product(m.inverse, t);
}

}  // namespace polgd
