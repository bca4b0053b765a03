#pragma once

#include <vector>

#include "dataware/geometry.hpp"
#include "dataware/raster.hpp"

namespace dataware {

/// Extracts closed iso-contour rings for `level` from a raster.
///
/// Marching squares runs on the lattice of cell centers with linear
/// interpolation along lattice edges; ambiguous saddle cells are resolved
/// with the cell-center average.  Contours that leave the grid are closed
/// along the lattice boundary so that each returned ring encloses the
/// below-level region.  All rings are counter-clockwise, in world
/// coordinates.
///
/// Cells touching a nodata corner are skipped.  Throws GeometryError when
/// every cell is nodata; returns an empty list when `level` lies outside
/// the grid's value range.
std::vector<Polygon2D> extract_contour(const RasterGrid& grid, double level);

}  // namespace dataware
