#include "polgd/wishart.hpp"

#include <cmath>

#include "polgd/error.hpp"

namespace polgd {

CoherencyMatrix regularized(const CoherencyMatrix& v, double eps) {
  CoherencyMatrix r = v;
  const double load = eps * v.trace() / 3.0;
  r.t11 += load;
  r.t22 += load;
  r.t33 += load;
  return r;
}

WishartModel make_wishart_model(const CoherencyMatrix& center, double eps) {
  if (!(center.trace() > 0.0)) throw Error("class center has zero trace");
  const CoherencyMatrix v = regularized(center, eps);
  const double det = determinant(v);
  if (!(det > 0.0) || !std::isfinite(det)) throw Error("class center is singular after regularization");
  return {inverse(v), std::log(det)};
}

double wishart_pixel_distance(const CoherencyMatrix& t, const CoherencyMatrix& center) {
  const double det = determinant(center);
  if (!(det > 0.0)) throw Error("singular class center");
  return std::log(det) + trace_of_product(inverse(center), t);
}

double wishart_center_distance(const CoherencyMatrix& vi, const CoherencyMatrix& vj) {
  const double di = determinant(vi);
  const double dj = determinant(vj);
  if (!(di > 0.0) || !(dj > 0.0)) throw Error("singular class center");
  return 0.5 * (std::log(di) + std::log(dj) + trace_of_product(inverse(vi), vj) + trace_of_product(inverse(vj), vi));
}

}  // namespace polgd
