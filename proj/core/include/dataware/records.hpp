#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataware/geometry.hpp"

namespace dataware {

/// One municipality's ecological measurements, as read from the records CSV
/// (plus the shoreline polyline joined from GeoJSON by name).
struct MunicipalityRecord {
    std::string name;
    double reedbed_length_m = 0.0;
    int reedbed_cuts = 0;
    double avg_cut_distance_m = 0.0;  ///< ignored when reedbed_cuts == 0
    double coastline_length_m = 0.0;
    double artificial_shoreline_m = 0.0;
    double builtup_fraction = 0.0;  ///< in [0, 1]
    double slope_percent = 0.0;
    bool reconstructed = false;  ///< data reconstructed from imagery, not surveyed
    std::optional<Polyline2D> shoreline;

    /// Throws EncodeError naming the first violated invariant.
    void validate() const;
};

/// Required CSV header:
///   name,reedbed_length_m,reedbed_cuts,avg_cut_distance_m,coastline_length_m,
///   artificial_shoreline_m,builtup_fraction,slope_percent[,reconstructed]
/// Columns may appear in any order; `reconstructed` (true/false/1/0) is
/// optional.  UTF-8, '.' decimal separator, no quoting.  Syntax problems
/// throw ParseError with the 1-based line; invariants are checked separately
/// by validate().
std::vector<MunicipalityRecord> parse_records_csv(std::string_view text);

}  // namespace dataware
