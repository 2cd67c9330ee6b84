#pragma once

// Orientation-angle compensation, boxcar speckle filtering and multilooking.
// Pipeline order is deorient, then filter.

#include "polgd/raster.hpp"
#include "polgd/types.hpp"

namespace polgd {

enum class Backend { serial, openmp };

enum class FilterKind { boxcar };

struct PreprocessConfig {
  bool deorient = true;
  int filter_window = 5;  // odd, >= 1; 1 disables filtering
  FilterKind filter_kind = FilterKind::boxcar;

  void validate() const;
};

// Polarization orientation angle theta: rotating T by 2*theta about the line
// of sight nulls Re(T23) and minimizes T33.
double orientation_angle(const CoherencyMatrix& t);

// R T R^T with R the real rotation by 2*theta in the (2,3) Pauli subspace.
CoherencyMatrix rotate_orientation(const CoherencyMatrix& t, double theta);

CoherencyMatrix deorient(const CoherencyMatrix& t);

CoherencyRaster deorient(const CoherencyRaster& in, Backend backend = Backend::openmp);

// Entrywise mean over the valid pixels of a window x window neighbourhood,
// truncated at the borders. Invalid pixels stay invalid. Output looks are
// scaled by the nominal window population.
CoherencyRaster speckle_filter(const CoherencyRaster& in, const PreprocessConfig& cfg,
                               Backend backend = Backend::openmp);

// Non-overlapping range_factor x azimuth_factor block averages of Pauli outer
// products. Output is (rows / azimuth_factor) x (cols / range_factor); a block
// is valid when at least one member is.
CoherencyRaster multilook(const SinclairRaster& in, int range_factor, int azimuth_factor);

}  // namespace polgd
