#include "dataware/geometry.hpp"

#include <algorithm>

#include "dataware/errors.hpp"

namespace dataware {

Polygon2D::Polygon2D(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() >= 2 && vertices_.front() == vertices_.back()) {
        vertices_.pop_back();  // tolerate an explicitly closed ring
    }
    if (vertices_.size() < 3) {
        throw GeometryError("polygon needs at least 3 distinct vertices");
    }
    if (signed_area() == 0.0) {
        throw GeometryError("polygon has zero area");
    }
}

double Polygon2D::signed_area() const {
    double acc = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices_[i];
        const Vec2& b = vertices_[(i + 1) % n];
        acc += cross(a, b);
    }
    return acc / 2.0;
}

BBox2 Polygon2D::bounds() const {
    BBox2 box;
    for (const Vec2& v : vertices_) box.expand(v);
    return box;
}

bool Polygon2D::contains(Vec2 p) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_on_segment(p, vertices_[i], vertices_[(i + 1) % n])) return true;
    }
    // Even-odd rule with the half-open edge convention (a.y > p.y) != (b.y > p.y),
    // counting crossings strictly to the right of p.
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices_[i];
        const Vec2& b = vertices_[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x_at > p.x) inside = !inside;
        }
    }
    return inside;
}

bool Polygon2D::self_intersects() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (shared endpoint)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Vec2 c = vertices_[j];
            const Vec2 d = vertices_[(j + 1) % n];
            if (segments_intersect(a, b, c, d)) return true;
        }
    }
    return false;
}

void Polygon2D::normalize_ccw() {
    if (signed_area() < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

Polyline2D::Polyline2D(std::vector<Vec2> pts) : points(std::move(pts)) {
    if (points.size() < 2) {
        throw GeometryError("polyline needs at least 2 points");
    }
}

double Polyline2D::length() const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        acc += distance(points[i], points[i + 1]);
    }
    return acc;
}

BBox2 Polyline2D::bounds() const {
    BBox2 box;
    for (const Vec2& p : points) box.expand(p);
    return box;
}

bool point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    if (cross(b - a, p - a) != 0.0) return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

static int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
    const double d = cross(b - a, c - a);
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && point_on_segment(c, a, b)) return true;
    if (o2 == 0 && point_on_segment(d, a, b)) return true;
    if (o3 == 0 && point_on_segment(a, c, d)) return true;
    if (o4 == 0 && point_on_segment(b, c, d)) return true;
    return false;
}

}  // namespace dataware
