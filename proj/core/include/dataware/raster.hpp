#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dataware {

/// Regular single-band raster on a square-cell grid.
///
/// `values` is stored row-major with the *bottom* row first, so
/// `value(col, row)` uses row 0 for the southernmost row.  ESRI ASCII input
/// files list the top row first; the parser flips them on read and the
/// serializer flips them back on write.
struct RasterGrid {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;  ///< world x of the grid's lower-left corner
    double yllcorner = 0.0;  ///< world y of the grid's lower-left corner
    double cellsize = 0.0;
    std::optional<double> nodata;  ///< sentinel; cells equal to it are missing
    std::vector<double> values;    ///< nrows * ncols, bottom row first

    bool operator==(const RasterGrid&) const = default;

    double value(int col, int row) const { return values[static_cast<std::size_t>(row) * ncols + col]; }
    double& value(int col, int row) { return values[static_cast<std::size_t>(row) * ncols + col]; }
    bool is_nodata(int col, int row) const {
        return nodata.has_value() && value(col, row) == *nodata;
    }

    /// World coordinates of a cell center.
    double center_x(int col) const { return xllcorner + (col + 0.5) * cellsize; }
    double center_y(int row) const { return yllcorner + (row + 0.5) * cellsize; }

    double extent_width() const { return ncols * cellsize; }
    double extent_height() const { return nrows * cellsize; }

    /// Min/max over non-nodata cells; nullopt when every cell is nodata.
    std::optional<std::pair<double, double>> value_range() const;
};

/// Parses an ESRI ASCII grid.  Header keys are case-insensitive; ncols,
/// nrows, xllcorner, yllcorner and cellsize are required, nodata_value is
/// optional.  Every failure throws ParseError naming the 1-based line and
/// column: missing header keys, non-numeric tokens, nonpositive cellsize,
/// and data value counts that do not match ncols * nrows.
RasterGrid parse_ascii_grid(std::string_view text);

/// Writes the grid back to ESRI ASCII text.  Values are printed with
/// shortest round-trip precision, so parse(serialize(g)) == g exactly.
std::string serialize_ascii_grid(const RasterGrid& grid);

}  // namespace dataware
