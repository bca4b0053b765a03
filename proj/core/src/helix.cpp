#include <cmath>
#include <numbers>

#include "dataware/errors.hpp"
#include "dataware/mesher.hpp"

namespace dataware {

std::vector<Vec3> spiral_points(const MugSpec& spec, double base_z) {
    if (spec.perforation_count == 0) return {};
    if (!(spec.perforation_spacing_mm > 0.0)) {
        throw MeshError("perforation spacing must be positive when perforations exist");
    }
    const double last_arc = spec.perforation_count * spec.perforation_spacing_mm;
    if (last_arc > spec.spiral_length_mm * (1.0 + 1e-9)) {
        throw MeshError("perforations exceed spiral length (spacing not clamped?)");
    }

    // Arc-length parameterization of the helix: one full turn advances
    // sqrt((pi*D)^2 + p^2) of arc and p of height.
    const double radius = spec.diameter_mm / 2.0;
    const double circumference = std::numbers::pi * spec.diameter_mm;
    const double turn_length =
        std::sqrt(circumference * circumference + spec.pitch_mm * spec.pitch_mm);
    const double z0 = base_z + spec.pitch_mm / 2.0;

    std::vector<Vec3> points;
    points.reserve(static_cast<std::size_t>(spec.perforation_count));
    for (int k = 1; k <= spec.perforation_count; ++k) {
        const double s = k * spec.perforation_spacing_mm;
        const double theta = 2.0 * std::numbers::pi * s / turn_length;
        const double z = z0 + spec.pitch_mm * s / turn_length;
        points.push_back({radius * std::cos(theta), radius * std::sin(theta), z});
    }
    return points;
}

}  // namespace dataware
