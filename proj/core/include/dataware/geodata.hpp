#pragma once

#include <vector>

#include "dataware/geometry.hpp"
#include "dataware/raster.hpp"

namespace dataware {

struct ZonalResult {
    double fraction = 0.0;  ///< mean of value/100 over contributing cells
    long long cells = 0;    ///< number of contributing cells
};

/// Mean built-up fraction (values are 0..100 scores) over all non-nodata
/// cells whose centers lie inside or on the boundary of `zone` (even-odd
/// rule).  Accumulates cells in row-major order (bottom row first), which
/// keeps the result bit-identical to a brute-force loop with the same
/// order.  Throws GeometryError("empty zone: ...") when no cell
/// contributes, and when a contributing score leaves [0, 100].
ZonalResult builtup_fraction(const RasterGrid& grid, const Polygon2D& zone);

struct ProfileSample {
    double distance = 0.0;   ///< meters along the sampled segment
    double elevation = 0.0;  ///< meters
};

/// Elevation samples along a segment; invariants: at least 2 samples,
/// distances strictly increasing from 0.
struct ElevationProfile {
    std::vector<ProfileSample> samples;

    explicit ElevationProfile(std::vector<ProfileSample> s);
};

/// Samples `n_samples` evenly spaced points on segment ab (endpoints
/// included) with bilinear interpolation over the four surrounding cell
/// centers; nodata neighbors are dropped and the weights renormalized.
/// Throws GeometryError when a == b, when an endpoint leaves the grid
/// extent, or when all four neighbors at a sample are nodata.
ElevationProfile extract_profile(const RasterGrid& grid, Vec2 a, Vec2 b, int n_samples);

/// 100 × |least-squares slope| of elevation vs distance.
double slope_percent(const ElevationProfile& profile);

struct ScaledOutline {
    Polyline2D outline;  ///< millimeters, bounding-box center at frame center
    bool fits_frame = false;
    double width_mm = 0.0;
    double height_mm = 0.0;
};

/// Scales a polyline of world meters down by `map_scale` (e.g. 22400 for a
/// 1:22,400 map), converts to millimeters and centers its bounding box in a
/// frame of `frame_mm` millimeters.  Throws GeometryError for nonpositive
/// scales/frames and for degenerate lines (all points equal).
ScaledOutline scale_polyline(const Polyline2D& line, double map_scale, Vec2 frame_mm);

}  // namespace dataware
