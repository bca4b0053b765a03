#include "dataware/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "dataware/errors.hpp"

namespace dataware {

void MunicipalityRecord::validate() const {
    auto fail = [this](const std::string& what) {
        throw EncodeError("record '" + name + "': " + what);
    };
    if (name.empty()) throw EncodeError("record has an empty name");
    if (!(reedbed_length_m >= 0.0)) fail("reedbed_length_m must be >= 0");
    if (!(coastline_length_m > 0.0)) fail("coastline_length_m must be > 0");
    if (!(artificial_shoreline_m >= 0.0)) fail("artificial_shoreline_m must be >= 0");
    if (artificial_shoreline_m > coastline_length_m) {
        fail("artificial_shoreline_m exceeds coastline_length_m");
    }
    if (reedbed_cuts < 0) fail("reedbed_cuts must be >= 0");
    if (reedbed_cuts > 0 && !(avg_cut_distance_m > 0.0)) {
        fail("avg_cut_distance_m must be > 0 when reedbed_cuts > 0");
    }
    if (!(builtup_fraction >= 0.0 && builtup_fraction <= 1.0)) {
        fail("builtup_fraction must be in [0, 1]");
    }
    if (!(slope_percent >= 0.0)) fail("slope_percent must be >= 0");
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field = (comma == std::string_view::npos)
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        // trim surrounding spaces
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
            field.remove_prefix(1);
        }
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                                  field.back() == '\r')) {
            field.remove_suffix(1);
        }
        fields.emplace_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number_field(const std::string& field, const std::string& column, int line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ParseError("column '" + column + "': non-numeric value '" + field + "'",
                         line_no, 1);
    }
    return v;
}

bool parse_bool_field(const std::string& field, const std::string& column, int line_no) {
    std::string lower = field;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "true" || lower == "1" || lower == "yes") return true;
    if (lower == "false" || lower == "0" || lower == "no" || lower.empty()) return false;
    throw ParseError("column '" + column + "': expected a boolean, got '" + field + "'",
                     line_no, 1);
}

}  // namespace

std::vector<MunicipalityRecord> parse_records_csv(std::string_view text) {
    // Strip a UTF-8 BOM if present.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }

    std::vector<std::pair<int, std::string_view>> lines;  // (1-based line, content)
    {
        int line_no = 1;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t nl = text.find('\n', start);
            std::string_view line = (nl == std::string_view::npos)
                                        ? text.substr(start)
                                        : text.substr(start, nl - start);
            lines.emplace_back(line_no, line);
            if (nl == std::string_view::npos) break;
            start = nl + 1;
            ++line_no;
        }
    }

    // Locate the header, skipping blank and '#' comment lines.
    std::size_t first = 0;
    while (first < lines.size()) {
        const std::size_t content = lines[first].second.find_first_not_of(" \t\r");
        if (content != std::string_view::npos && lines[first].second[content] != '#') {
            break;
        }
        ++first;
    }
    if (first >= lines.size()) {
        throw ParseError("records CSV is empty", 1, 1);
    }
    const auto [header_line_no, header_line] = lines[first];
    const std::vector<std::string> header = split_csv_line(header_line);

    const std::vector<std::string> required = {
        "name",
        "reedbed_length_m",
        "reedbed_cuts",
        "avg_cut_distance_m",
        "coastline_length_m",
        "artificial_shoreline_m",
        "builtup_fraction",
        "slope_percent",
    };
    std::map<std::string, int> column_of;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column_of[header[i]] = static_cast<int>(i);
    }
    for (const std::string& key : required) {
        if (!column_of.count(key)) {
            throw ParseError("missing CSV column '" + key + "'", header_line_no, 1);
        }
    }
    const bool has_reconstructed = column_of.count("reconstructed") > 0;

    std::vector<MunicipalityRecord> records;
    for (std::size_t li = first + 1; li < lines.size(); ++li) {
        const auto [line_no, line] = lines[li];
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        if (!line.empty() && line.front() == '#') continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no, 1);
        }
        auto field = [&](const std::string& key) -> const std::string& {
            return fields[static_cast<std::size_t>(column_of.at(key))];
        };
        MunicipalityRecord rec;
        rec.name = field("name");
        if (rec.name.empty()) {
            throw ParseError("column 'name': empty municipality name", line_no, 1);
        }
        rec.reedbed_length_m = parse_number_field(field("reedbed_length_m"),
                                                  "reedbed_length_m", line_no);
        const double cuts = parse_number_field(field("reedbed_cuts"), "reedbed_cuts", line_no);
        if (cuts != std::nearbyint(cuts) || cuts < 0.0) {
            throw ParseError("column 'reedbed_cuts': expected a non-negative integer, got '" +
                                 field("reedbed_cuts") + "'",
                             line_no, 1);
        }
        rec.reedbed_cuts = static_cast<int>(cuts);
        rec.avg_cut_distance_m = parse_number_field(field("avg_cut_distance_m"),
                                                    "avg_cut_distance_m", line_no);
        rec.coastline_length_m = parse_number_field(field("coastline_length_m"),
                                                    "coastline_length_m", line_no);
        rec.artificial_shoreline_m = parse_number_field(field("artificial_shoreline_m"),
                                                        "artificial_shoreline_m", line_no);
        rec.builtup_fraction = parse_number_field(field("builtup_fraction"),
                                                  "builtup_fraction", line_no);
        rec.slope_percent = parse_number_field(field("slope_percent"), "slope_percent",
                                               line_no);
        if (has_reconstructed) {
            rec.reconstructed = parse_bool_field(field("reconstructed"), "reconstructed",
                                                 line_no);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace dataware
