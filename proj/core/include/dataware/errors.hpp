#pragma once

#include <stdexcept>
#include <string>

namespace dataware {

/// Error raised while reading external inputs (ASCII grids, GeoJSON, CSV,
/// config files, STL bytes).  Carries a 1-based line/column when the input
/// is textual; both are 0 for binary inputs.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0, int column = 0)
        : std::runtime_error(format(message, line, column)),
          line_(line),
          column_(column),
          message_(std::move(message)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        if (line <= 0) return message;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) +
               ": " + message;
    }

    int line_;
    int column_;
    std::string message_;
};

/// Error raised by geometric operations on invalid or degenerate inputs
/// (empty zones, degenerate segments, polygons with no area, ...).
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when a municipality record violates a data invariant or a
/// vessel parameter leaves its domain.
class EncodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised by mesh construction and editing operations (non-watertight
/// input, holes that cannot be stitched, cuts that erase the solid, ...).
class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dataware
