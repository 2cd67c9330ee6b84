#include "polgd/preprocess.hpp"

#include <cmath>

#include "polgd/error.hpp"
#include "polgd/kernels.hpp"

namespace polgd {

void PreprocessConfig::validate() const {
  if (filter_window < 1 || filter_window % 2 == 0)
    throw Error("--filter-window must be an odd integer >= 1 (got " + std::to_string(filter_window) + ")");
}

double orientation_angle(const CoherencyMatrix& t) {
  // T33(phi) = (T22+T33)/2 - cos(2phi)(T22-T33)/2 - sin(2phi) Re T23 with
  // phi = 2 theta; its minimum sits where 2phi points along (T22-T33, 2 Re T23).
  return 0.25 * std::atan2(2.0 * t.t23.real(), t.t22 - t.t33);
}

CoherencyMatrix rotate_orientation(const CoherencyMatrix& t, double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  CoherencyMatrix r;
  r.t11 = t.t11;
  r.t12 = c * t.t12 + s * t.t13;
  r.t13 = c * t.t13 - s * t.t12;
  r.t22 = c * c * t.t22 + 2.0 * c * s * t.t23.real() + s * s * t.t33;
  r.t33 = s * s * t.t22 - 2.0 * c * s * t.t23.real() + c * c * t.t33;
  r.t23 = c * s * (t.t33 - t.t22) + c * c * t.t23 - s * s * std::conj(t.t23);
  return r;
}

CoherencyMatrix deorient(const CoherencyMatrix& t) { return rotate_orientation(t, orientation_angle(t)); }

CoherencyRaster deorient(const CoherencyRaster& in, Backend backend) {
  CoherencyRaster out = in;
  if (backend == Backend::serial)
    kernels::serial::deorient(out);
  else
    kernels::omp::deorient(out);
  return out;
}

CoherencyRaster speckle_filter(const CoherencyRaster& in, const PreprocessConfig& cfg, Backend backend) {
  cfg.validate();
  in.check_shape();
  if (cfg.filter_window == 1) return in;
  CoherencyRaster out = backend == Backend::serial ? kernels::serial::boxcar(in, cfg.filter_window)
                                                   : kernels::omp::boxcar(in, cfg.filter_window);
  out.looks = in.looks * cfg.filter_window * cfg.filter_window;
  return out;
}

CoherencyRaster multilook(const SinclairRaster& in, int range_factor, int azimuth_factor) {
  if (range_factor < 1 || azimuth_factor < 1) throw Error("multilook factors must be >= 1");
  in.check_shape();
  const std::size_t rf = range_factor;
  const std::size_t af = azimuth_factor;
  if (in.cols < rf || in.rows < af)
    throw Error("raster " + std::to_string(in.rows) + "x" + std::to_string(in.cols) + " is smaller than one " +
                std::to_string(af) + "x" + std::to_string(rf) + " multilook block");
  CoherencyRaster out(in.rows / af, in.cols / rf, in.looks * static_cast<double>(rf * af));
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t c = 0; c < out.cols; ++c) {
      CoherencyMatrix sum;
      std::size_t n = 0;
      for (std::size_t rr = r * af; rr < (r + 1) * af; ++rr)
        for (std::size_t cc = c * rf; cc < (c + 1) * rf; ++cc) {
          const std::size_t j = in.index(rr, cc);
          if (!in.is_valid(j)) continue;
          sum += outer_product(pauli_from_sinclair(in.pixels[j]));
          ++n;
        }
      const std::size_t i = out.index(r, c);
      if (n == 0) {
        out.valid[i] = 0;
        continue;
      }
      sum *= 1.0 / static_cast<double>(n);
      out.pixels[i] = sum;
    }
  return out;
}

}  // namespace polgd
