#include "dataware/geodata.hpp"

#include <algorithm>
#include <cmath>

#include "dataware/errors.hpp"

namespace dataware {

ZonalResult builtup_fraction(const RasterGrid& grid, const Polygon2D& zone) {
    const BBox2 box = zone.bounds();
    // Restrict the scan to cells whose centers can fall inside the zone.
    int col_lo = static_cast<int>(std::floor((box.lo.x - grid.xllcorner) / grid.cellsize - 0.5));
    int col_hi = static_cast<int>(std::ceil((box.hi.x - grid.xllcorner) / grid.cellsize - 0.5));
    int row_lo = static_cast<int>(std::floor((box.lo.y - grid.yllcorner) / grid.cellsize - 0.5));
    int row_hi = static_cast<int>(std::ceil((box.hi.y - grid.yllcorner) / grid.cellsize - 0.5));
    col_lo = std::max(col_lo, 0);
    row_lo = std::max(row_lo, 0);
    col_hi = std::min(col_hi, grid.ncols - 1);
    row_hi = std::min(row_hi, grid.nrows - 1);

    double sum = 0.0;
    long long cells = 0;
    for (int row = row_lo; row <= row_hi; ++row) {
        for (int col = col_lo; col <= col_hi; ++col) {
            if (grid.is_nodata(col, row)) continue;
            const Vec2 center{grid.center_x(col), grid.center_y(row)};
            if (!zone.contains(center)) continue;
            const double v = grid.value(col, row);
            if (v < 0.0 || v > 100.0) {
                throw GeometryError("built-up score out of range [0, 100]: " +
                                    std::to_string(v));
            }
            sum += v / 100.0;
            ++cells;
        }
    }
    if (cells == 0) {
        throw GeometryError("empty zone: no non-nodata cell centers inside polygon");
    }
    return {sum / static_cast<double>(cells), cells};
}

ElevationProfile::ElevationProfile(std::vector<ProfileSample> s) : samples(std::move(s)) {
    if (samples.size() < 2) {
        throw GeometryError("elevation profile needs at least 2 samples");
    }
    if (samples.front().distance != 0.0) {
        throw GeometryError("elevation profile must start at distance 0");
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (!(samples[i].distance < samples[i + 1].distance)) {
            throw GeometryError("elevation profile distances must be strictly increasing");
        }
    }
}

namespace {

double bilinear_sample(const RasterGrid& grid, Vec2 p) {
    // Fractional index into the lattice of cell centers, clamped to the
    // edge cells so border samples stay well-defined.
    double fx = (p.x - grid.xllcorner) / grid.cellsize - 0.5;
    double fy = (p.y - grid.yllcorner) / grid.cellsize - 0.5;
    const int max_i = std::max(grid.ncols - 2, 0);
    const int max_j = std::max(grid.nrows - 2, 0);
    int i0 = std::clamp(static_cast<int>(std::floor(fx)), 0, max_i);
    int j0 = std::clamp(static_cast<int>(std::floor(fy)), 0, max_j);
    const int i1 = std::min(i0 + 1, grid.ncols - 1);
    const int j1 = std::min(j0 + 1, grid.nrows - 1);
    const double tx = std::clamp(fx - i0, 0.0, 1.0);
    const double ty = std::clamp(fy - j0, 0.0, 1.0);

    const int cols[4] = {i0, i1, i0, i1};
    const int rows[4] = {j0, j0, j1, j1};
    const double weights[4] = {(1.0 - tx) * (1.0 - ty), tx * (1.0 - ty), (1.0 - tx) * ty,
                               tx * ty};
    double acc = 0.0;
    double wsum = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (grid.is_nodata(cols[k], rows[k])) continue;
        acc += weights[k] * grid.value(cols[k], rows[k]);
        wsum += weights[k];
    }
    if (wsum <= 0.0) {
        throw GeometryError("all four bilinear neighbors are nodata at (" +
                            std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }
    return acc / wsum;
}

}  // namespace

ElevationProfile extract_profile(const RasterGrid& grid, Vec2 a, Vec2 b, int n_samples) {
    if (n_samples < 2) {
        throw GeometryError("profile needs at least 2 samples");
    }
    if (a == b) {
        throw GeometryError("degenerate profile segment: endpoints coincide");
    }
    const double x_min = grid.xllcorner;
    const double y_min = grid.yllcorner;
    const double x_max = grid.xllcorner + grid.extent_width();
    const double y_max = grid.yllcorner + grid.extent_height();
    for (Vec2 p : {a, b}) {
        if (p.x < x_min || p.x > x_max || p.y < y_min || p.y > y_max) {
            throw GeometryError("profile segment leaves grid extent");
        }
    }
    const double total = distance(a, b);
    std::vector<ProfileSample> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n_samples - 1);
        const Vec2 p = a + (b - a) * t;
        samples.push_back({t * total, bilinear_sample(grid, p)});
    }
    return ElevationProfile{std::move(samples)};
}

double slope_percent(const ElevationProfile& profile) {
    // Least-squares slope via the centered formula: b = Σ(d-d̄)(z-z̄) / Σ(d-d̄)².
    const std::size_t n = profile.samples.size();
    double mean_d = 0.0;
    double mean_z = 0.0;
    for (const ProfileSample& s : profile.samples) {
        mean_d += s.distance;
        mean_z += s.elevation;
    }
    mean_d /= static_cast<double>(n);
    mean_z /= static_cast<double>(n);
    double num = 0.0;
    double den = 0.0;
    for (const ProfileSample& s : profile.samples) {
        const double dd = s.distance - mean_d;
        num += dd * (s.elevation - mean_z);
        den += dd * dd;
    }
    if (den == 0.0) {
        throw GeometryError("profile has zero distance span");
    }
    return 100.0 * std::abs(num / den);
}

ScaledOutline scale_polyline(const Polyline2D& line, double map_scale, Vec2 frame_mm) {
    if (map_scale <= 0.0) {
        throw GeometryError("map scale must be positive");
    }
    if (frame_mm.x <= 0.0 || frame_mm.y <= 0.0) {
        throw GeometryError("frame dimensions must be positive");
    }
    const BBox2 box = line.bounds();
    if (box.width() == 0.0 && box.height() == 0.0) {
        throw GeometryError("degenerate polyline: all points equal");
    }
    // meters on the ground -> meters on the map -> millimeters
    const double factor = 1000.0 / map_scale;
    const Vec2 src_center = box.center();
    const Vec2 dst_center{frame_mm.x / 2.0, frame_mm.y / 2.0};
    std::vector<Vec2> points;
    points.reserve(line.points.size());
    for (Vec2 p : line.points) {
        points.push_back(dst_center + (p - src_center) * factor);
    }
    ScaledOutline out{Polyline2D{std::move(points)}, false, box.width() * factor,
                      box.height() * factor};
    out.fits_frame = out.width_mm <= frame_mm.x && out.height_mm <= frame_mm.y;
    return out;
}

}  // namespace dataware
