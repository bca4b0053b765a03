#pragma once

#include <cmath>
#include <vector>

namespace dataware {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend Vec2 operator*(double s, Vec2 a) { return a * s; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

    double norm() const { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, Vec3 a) { return a * s; }
    friend bool operator==(Vec3 a, Vec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct BBox2 {
    Vec2 lo{0, 0};
    Vec2 hi{0, 0};
    bool empty = true;

    void expand(Vec2 p) {
        if (empty) {
            lo = hi = p;
            empty = false;
            return;
        }
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    double width() const { return empty ? 0.0 : hi.x - lo.x; }
    double height() const { return empty ? 0.0 : hi.y - lo.y; }
    Vec2 center() const { return {(lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0}; }
};

struct BBox3 {
    Vec3 lo{0, 0, 0};
    Vec3 hi{0, 0, 0};
    bool empty = true;

    void expand(Vec3 p) {
        if (empty) {
            lo = hi = p;
            empty = false;
            return;
        }
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
};

/// Simple closed polygon, stored without a repeated closing vertex.
/// Construction enforces at least 3 vertices and a nonzero signed area.
class Polygon2D {
public:
    explicit Polygon2D(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    /// Positive for counter-clockwise vertex order.
    double signed_area() const;
    double area() const { return std::abs(signed_area()); }
    BBox2 bounds() const;

    /// Even-odd containment; points exactly on the boundary count as inside.
    bool contains(Vec2 p) const;

    /// True if any two non-adjacent edges intersect.
    bool self_intersects() const;

    /// Reverses vertex order in place if the polygon is clockwise.
    void normalize_ccw();

private:
    std::vector<Vec2> vertices_;
};

/// Open polyline with at least 2 points.
struct Polyline2D {
    std::vector<Vec2> points;

    explicit Polyline2D(std::vector<Vec2> pts);

    double length() const;
    BBox2 bounds() const;
};

/// True if p lies exactly on segment [a, b] (collinear and within bounds).
bool point_on_segment(Vec2 p, Vec2 a, Vec2 b);

/// True if segments [a,b] and [c,d] share at least one point.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace dataware
