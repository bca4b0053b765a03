#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dataware/errors.hpp"
#include "dataware/exporters.hpp"

namespace dataware {

namespace {

constexpr char k_header_text[] = "dataware binary STL (units: millimeters)";

void append_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void append_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void append_f32(std::string& out, float v) {
    append_u32(out, std::bit_cast<std::uint32_t>(v));
}

std::uint32_t read_u32(const std::string& bytes, std::size_t offset) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i]))
             << (8 * i);
    }
    return v;
}

float read_f32(const std::string& bytes, std::size_t offset) {
    return std::bit_cast<float>(read_u32(bytes, offset));
}

struct VertexBits {
    std::uint32_t x, y, z;
    bool operator==(const VertexBits&) const = default;
};

struct VertexBitsHash {
    std::size_t operator()(const VertexBits& v) const {
        std::uint64_t h = v.x;
        h = h * 0x9e3779b97f4a7c15ull + v.y;
        h = h * 0x9e3779b97f4a7c15ull + v.z;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

}  // namespace

std::string stl_bytes(const TriangleMesh& mesh) {
    std::string out;
    out.reserve(84 + 50 * mesh.triangles.size());
    out.append(k_header_text);
    out.resize(80, '\0');
    append_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));

    for (const auto& tri : mesh.triangles) {
        std::array<float, 9> v{};
        for (int k = 0; k < 3; ++k) {
            const Vec3& p = mesh.vertices[tri[k]];
            v[3 * k + 0] = static_cast<float>(p.x);
            v[3 * k + 1] = static_cast<float>(p.y);
            v[3 * k + 2] = static_cast<float>(p.z);
        }
        // Normal from the rounded vertices, so a re-export after parsing
        // this very file computes bit-identical values.
        const Vec3 a{v[0], v[1], v[2]};
        const Vec3 b{v[3], v[4], v[5]};
        const Vec3 c{v[6], v[7], v[8]};
        Vec3 n = cross(b - a, c - a);
        const double len = n.norm();
        if (len > 0.0) {
            n = n * (1.0 / len);
        } else {
            n = {0.0, 0.0, 0.0};
        }
        append_f32(out, static_cast<float>(n.x));
        append_f32(out, static_cast<float>(n.y));
        append_f32(out, static_cast<float>(n.z));
        for (float f : v) append_f32(out, f);
        append_u16(out, 0);
    }
    return out;
}

TriangleMesh parse_stl(const std::string& bytes, const std::string& source_name) {
    if (bytes.size() < 84) {
        throw ParseError(source_name + ": binary STL truncated: " +
                         std::to_string(bytes.size()) +
                         " bytes, need at least 84 for the header");
    }
    const std::uint32_t count = read_u32(bytes, 80);
    const std::size_t expected = 84 + 50ull * count;
    if (bytes.size() != expected) {
        throw ParseError(source_name + ": binary STL size mismatch: header claims " +
                         std::to_string(count) + " triangles (" +
                         std::to_string(expected) + " bytes), file has " +
                         std::to_string(bytes.size()) + " bytes");
    }

    TriangleMesh mesh;
    std::unordered_map<VertexBits, std::uint32_t, VertexBitsHash> seen;
    mesh.triangles.reserve(count);
    for (std::uint32_t t = 0; t < count; ++t) {
        const std::size_t base = 84 + 50ull * t + 12;  // skip stored normal
        std::array<std::uint32_t, 3> ids{};
        for (int k = 0; k < 3; ++k) {
            const std::size_t off = base + 12ull * k;
            const VertexBits bits{read_u32(bytes, off), read_u32(bytes, off + 4),
                                  read_u32(bytes, off + 8)};
            if (const auto it = seen.find(bits); it != seen.end()) {
                ids[k] = it->second;
            } else {
                const Vec3 p{static_cast<double>(read_f32(bytes, off)),
                             static_cast<double>(read_f32(bytes, off + 4)),
                             static_cast<double>(read_f32(bytes, off + 8))};
                ids[k] = mesh.add_vertex(p);
                seen.emplace(bits, ids[k]);
            }
        }
        mesh.triangles.push_back(ids);
    }
    return mesh;
}

void export_stl(const TriangleMesh& mesh, const std::filesystem::path& path) {
    write_file_atomic(path, stl_bytes(mesh));
}

TriangleMesh import_stl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open STL file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_stl(buffer.str(), path.filename().string());
}

std::string svg_outline(const std::vector<Vec2>& outline_mm, double frame_w_mm,
                        double frame_h_mm) {
    auto fmt = [](double v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        std::string s{buf};
        while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
            const bool dot = s.back() == '.';
            s.pop_back();
            if (dot) break;
        }
        return s;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(frame_w_mm) +
           "mm\" height=\"" + fmt(frame_h_mm) + "mm\" viewBox=\"0 0 " + fmt(frame_w_mm) +
           " " + fmt(frame_h_mm) + "\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"" + fmt(frame_w_mm) + "\" height=\"" +
           fmt(frame_h_mm) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.2\"/>\n";
    svg += "  <polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"0.5\" points=\"";
    for (std::size_t i = 0; i < outline_mm.size(); ++i) {
        if (i) svg += ' ';
        // SVG y grows downward; the outline is in y-up millimeters.
        svg += fmt(outline_mm[i].x) + "," + fmt(frame_h_mm - outline_mm[i].y);
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ParseError("cannot write file '" + tmp.string() + "'");
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            throw ParseError("write failed for '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace dataware
