#include "dataware/raster.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "dataware/errors.hpp"

namespace dataware {

std::optional<std::pair<double, double>> RasterGrid::value_range() const {
    std::optional<std::pair<double, double>> range;
    for (double v : values) {
        if (nodata.has_value() && v == *nodata) continue;
        if (!range) {
            range = {v, v};
        } else {
            range->first = std::min(range->first, v);
            range->second = std::max(range->second, v);
        }
    }
    return range;
}

namespace {

struct Token {
    std::string_view text;
    int line;    // 1-based
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++column;
            ++i;
            continue;
        }
        const std::size_t start = i;
        const int start_col = column;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
               text[i] != '\n' && text[i] != '\f' && text[i] != '\v') {
            ++i;
            ++column;
        }
        tokens.push_back({text.substr(start, i - start), line, start_col});
    }
    return tokens;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

double require_number(const Token& tok) {
    double v = 0.0;
    if (!parse_double(tok.text, v)) {
        throw ParseError("non-numeric token '" + std::string(tok.text) + "'", tok.line,
                         tok.column);
    }
    return v;
}

int require_positive_int(const Token& tok, const std::string& key) {
    const double v = require_number(tok);
    const double rounded = std::nearbyint(v);
    if (v != rounded || rounded < 1.0 || rounded > 1e9) {
        throw ParseError(key + " must be a positive integer, got '" + std::string(tok.text) + "'",
                         tok.line, tok.column);
    }
    return static_cast<int>(rounded);
}

bool is_header_word(std::string_view s) {
    if (s.empty()) return false;
    const unsigned char c = static_cast<unsigned char>(s.front());
    return std::isalpha(c) != 0 || s.front() == '_';
}

}  // namespace

RasterGrid parse_ascii_grid(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);

    std::optional<double> ncols_v, nrows_v, xll, yll, cellsize, nodata;
    std::optional<Token> ncols_tok, nrows_tok, cellsize_tok;

    std::size_t pos = 0;
    while (pos < tokens.size() && is_header_word(tokens[pos].text)) {
        const Token& key_tok = tokens[pos];
        const std::string key = lowercase(key_tok.text);
        if (pos + 1 >= tokens.size()) {
            throw ParseError("header key '" + key + "' has no value", key_tok.line,
                             key_tok.column);
        }
        const Token& val_tok = tokens[pos + 1];
        if (key == "ncols") {
            ncols_tok = val_tok;
            ncols_v = require_number(val_tok);
        } else if (key == "nrows") {
            nrows_tok = val_tok;
            nrows_v = require_number(val_tok);
        } else if (key == "xllcorner") {
            xll = require_number(val_tok);
        } else if (key == "yllcorner") {
            yll = require_number(val_tok);
        } else if (key == "cellsize") {
            cellsize_tok = val_tok;
            cellsize = require_number(val_tok);
        } else if (key == "nodata_value") {
            nodata = require_number(val_tok);
        } else {
            throw ParseError("unknown header key '" + std::string(key_tok.text) + "'",
                             key_tok.line, key_tok.column);
        }
        pos += 2;
    }

    const int end_line = tokens.empty() ? 1 : tokens.back().line;
    const int end_col = tokens.empty() ? 1 : tokens.back().column;
    auto missing = [&](const char* key) {
        return ParseError(std::string("missing header key '") + key + "'", end_line, end_col);
    };
    if (!ncols_v) throw missing("ncols");
    if (!nrows_v) throw missing("nrows");
    if (!xll) throw missing("xllcorner");
    if (!yll) throw missing("yllcorner");
    if (!cellsize) throw missing("cellsize");

    RasterGrid grid;
    grid.ncols = require_positive_int(*ncols_tok, "ncols");
    grid.nrows = require_positive_int(*nrows_tok, "nrows");
    if (*cellsize <= 0.0) {
        throw ParseError("nonpositive cellsize", cellsize_tok->line, cellsize_tok->column);
    }
    grid.xllcorner = *xll;
    grid.yllcorner = *yll;
    grid.cellsize = *cellsize;
    grid.nodata = nodata;

    const std::size_t expected =
        static_cast<std::size_t>(grid.ncols) * static_cast<std::size_t>(grid.nrows);
    grid.values.assign(expected, 0.0);

    std::size_t got = 0;
    for (; pos < tokens.size(); ++pos, ++got) {
        const Token& tok = tokens[pos];
        if (got >= expected) {
            throw ParseError("value count mismatch: expected " + std::to_string(expected) +
                                 " values, found extra data",
                             tok.line, tok.column);
        }
        const double v = require_number(tok);
        // File order is top row first; flip to bottom-row-first storage.
        const int file_row = static_cast<int>(got) / grid.ncols;
        const int col = static_cast<int>(got) % grid.ncols;
        const int row = grid.nrows - 1 - file_row;
        grid.value(col, row) = v;
    }
    if (got < expected) {
        throw ParseError("value count mismatch: expected " + std::to_string(expected) +
                             " values, got " + std::to_string(got),
                         end_line, end_col);
    }
    return grid;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

std::string serialize_ascii_grid(const RasterGrid& grid) {
    std::string out;
    out.reserve(64 + grid.values.size() * 8);
    out += "ncols " + std::to_string(grid.ncols) + "\n";
    out += "nrows " + std::to_string(grid.nrows) + "\n";
    out += "xllcorner " + format_double(grid.xllcorner) + "\n";
    out += "yllcorner " + format_double(grid.yllcorner) + "\n";
    out += "cellsize " + format_double(grid.cellsize) + "\n";
    if (grid.nodata.has_value()) {
        out += "nodata_value " + format_double(*grid.nodata) + "\n";
    }
    for (int file_row = 0; file_row < grid.nrows; ++file_row) {
        const int row = grid.nrows - 1 - file_row;  // emit top row first
        for (int col = 0; col < grid.ncols; ++col) {
            if (col > 0) out += ' ';
            out += format_double(grid.value(col, row));
        }
        out += '\n';
    }
    return out;
}

}  // namespace dataware
