#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "dataware/errors.hpp"
#include "dataware/mesher.hpp"

namespace dataware {

namespace {

// --- 2D polygon triangulation (ear clipping, holes via bridges) -----------

struct CapLoop {
    std::vector<std::uint32_t> ids;  // mesh vertex ids
    std::vector<Vec2> pts;           // projected plane coordinates
    double area2 = 0.0;              // twice the signed area
    int depth = 0;                   // nesting depth (even = outer boundary)
};

double loop_area2(const std::vector<Vec2>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        a += cross(pts[i], pts[(i + 1) % pts.size()]);
    }
    return a;
}

bool point_in_loop(Vec2 p, const std::vector<Vec2>& pts) {
    bool inside = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2 a = pts[i];
        const Vec2 b = pts[(i + 1) % pts.size()];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x_at > p.x) inside = !inside;
        }
    }
    return inside;
}

struct IndexedPoint {
    Vec2 p;
    std::uint32_t id;
};

bool point_in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c, double eps) {
    const double d1 = cross(b - a, p - a);
    const double d2 = cross(c - b, p - b);
    const double d3 = cross(a - c, p - c);
    return d1 >= -eps && d2 >= -eps && d3 >= -eps;
}

// Ear-clips a simple CCW polygon (duplicate bridge vertices allowed) and
// appends index triples.
// Every clip step must emit its triangle or the cap boundary develops a
// crack: slivers (even exactly collinear ones, common where the plane
// crosses a planar quad of the source mesh) still pair their edges with the
// surrounding surface.  The only safe omissions are triangles with a
// repeated vertex id, whose edge uses cancel against themselves.
void emit_ear(std::uint32_t a, std::uint32_t b, std::uint32_t c,
              std::vector<std::array<std::uint32_t, 3>>& out) {
    if (a == b || b == c || a == c) return;
    out.push_back({a, b, c});
}

void ear_clip(std::vector<IndexedPoint> poly,
              std::vector<std::array<std::uint32_t, 3>>& out) {
    if (poly.size() < 3) return;
    double scale = 0.0;
    for (const IndexedPoint& ip : poly) {
        scale = std::max({scale, std::abs(ip.p.x), std::abs(ip.p.y)});
    }
    const double eps_area = 1e-12 * scale * scale;

    while (poly.size() > 3) {
        const std::size_t n = poly.size();
        std::size_t ear = n;  // sentinel: none found
        std::size_t fallback = n;
        double best_cross = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = poly[(i + n - 1) % n].p;
            const Vec2 b = poly[i].p;
            const Vec2 c = poly[(i + 1) % n].p;
            const double turn = cross(b - a, c - b);
            if (turn > best_cross) {
                best_cross = turn;
                fallback = i;
            }
            if (turn <= eps_area) continue;  // reflex or degenerate corner
            bool blocked = false;
            for (std::size_t j = 0; j < n && !blocked; ++j) {
                if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
                const Vec2 q = poly[j].p;
                if ((q == a) || (q == b) || (q == c)) continue;  // bridge dups
                if (point_in_triangle(q, a, b, c, -eps_area)) blocked = true;
            }
            if (!blocked) {
                ear = i;
                break;
            }
        }
        if (ear == n) ear = fallback;  // numerical lock: clip anyway
        const std::size_t prev = (ear + poly.size() - 1) % poly.size();
        const std::size_t next = (ear + 1) % poly.size();
        emit_ear(poly[prev].id, poly[ear].id, poly[next].id, out);
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(ear));
    }
    emit_ear(poly[0].id, poly[1].id, poly[2].id, out);
}

// Merges a CW hole into a CCW outer polygon through a visibility bridge.
std::vector<IndexedPoint> splice_hole(std::vector<IndexedPoint> polygon,
                                      const std::vector<IndexedPoint>& hole) {
    // Hole vertex with maximum x is guaranteed to see the outer boundary.
    std::size_t hm = 0;
    for (std::size_t i = 1; i < hole.size(); ++i) {
        if (hole[i].p.x > hole[hm].p.x) hm = i;
    }
    const Vec2 m = hole[hm].p;

    const std::vector<IndexedPoint>* rings[2] = {&polygon, &hole};
    auto visible = [&](Vec2 target) {
        for (const auto* ring : rings) {
            const auto& pts = *ring;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const Vec2 a = pts[i].p;
                const Vec2 b = pts[(i + 1) % pts.size()].p;
                if ((a == m) || (b == m) || (a == target) || (b == target)) continue;
                if (segments_intersect(m, target, a, b)) return false;
            }
        }
        return true;
    };
    std::size_t bridge = polygon.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2 q = polygon[i].p;
        if (q.x < m.x) continue;  // prefer targets on the open +x side
        const double d = distance(m, q);
        if (d < best && visible(q)) {
            best = d;
            bridge = i;
        }
    }
    if (bridge == polygon.size()) {  // fall back to any visible vertex
        for (std::size_t i = 0; i < polygon.size(); ++i) {
            const double d = distance(m, polygon[i].p);
            if (d < best && visible(polygon[i].p)) {
                best = d;
                bridge = i;
            }
        }
    }
    if (bridge == polygon.size()) {
        throw MeshError("cut face triangulation failed: no visible bridge for a hole");
    }

    std::vector<IndexedPoint> merged;
    merged.reserve(polygon.size() + hole.size() + 2);
    for (std::size_t i = 0; i <= bridge; ++i) merged.push_back(polygon[i]);
    for (std::size_t i = 0; i <= hole.size(); ++i) {
        merged.push_back(hole[(hm + i) % hole.size()]);
    }
    merged.push_back(polygon[bridge]);
    for (std::size_t i = bridge + 1; i < polygon.size(); ++i) merged.push_back(polygon[i]);
    return merged;
}

}  // namespace

TriangleMesh tilt_cut(const TriangleMesh& mesh, double tilt_deg, double pivot_z) {
    if (mesh.triangles.empty()) {
        throw MeshError("cannot cut an empty mesh");
    }
    const double slope = std::tan(tilt_deg * std::numbers::pi / 180.0);

    // Signed distance to the cutting plane (positive side is removed):
    // f(p) = p.z - pivot_z - slope * p.y, snapped to 0 within epsilon.
    const BBox3 box = mesh.bounds();
    const double diag =
        (box.hi - box.lo).norm() + std::abs(pivot_z) + 1.0;
    const double eps = 1e-9 * diag;

    const std::size_t nv = mesh.vertices.size();
    std::vector<double> d(nv);
    bool any_below = false;
    bool any_above = false;
    for (std::size_t i = 0; i < nv; ++i) {
        double f = mesh.vertices[i].z - pivot_z - slope * mesh.vertices[i].y;
        if (std::abs(f) <= eps) f = 0.0;
        d[i] = f;
        any_below |= f < 0.0;
        any_above |= f > 0.0;
    }
    if (!any_above) return mesh;  // plane clears the top: unchanged
    if (!any_below) {
        throw MeshError("cutting plane removes the entire mesh");
    }

    TriangleMesh out;
    out.vertices = mesh.vertices;
    auto on_plane = [&](std::uint32_t id) { return id >= nv || d[id] == 0.0; };

    // Shared intersection points: one vertex per cut mesh edge, computed in
    // a canonical orientation so adjacent triangles reuse it bit-exactly.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_cut;
    auto cut_vertex = [&](std::uint32_t p, std::uint32_t q) {
        const auto key = std::minmax(p, q);
        if (const auto it = edge_cut.find(key); it != edge_cut.end()) return it->second;
        const std::uint32_t lo = key.first, hi = key.second;
        const double t = d[lo] / (d[lo] - d[hi]);
        const Vec3 pos = out.vertices[lo] + (out.vertices[hi] - out.vertices[lo]) * t;
        const std::uint32_t id = out.add_vertex(pos);
        edge_cut.emplace(key, id);
        return id;
    };

    std::vector<std::pair<std::uint32_t, std::uint32_t>> cut_segments;

    for (const auto& tri : mesh.triangles) {
        int below = 0, above = 0;
        for (int k = 0; k < 3; ++k) {
            below += d[tri[k]] < 0.0;
            above += d[tri[k]] > 0.0;
        }
        if (above == 0) {
            if (below > 0) out.triangles.push_back(tri);  // all-zero faces drop
            continue;
        }
        if (below == 0) {
            // Entirely at or above the plane.  An in-plane edge here borders
            // the kept solid, so it contributes a cap boundary segment.
            for (int k = 0; k < 3 && above == 1; ++k) {
                const std::uint32_t a = tri[k];
                const std::uint32_t b = tri[(k + 1) % 3];
                if (d[a] == 0.0 && d[b] == 0.0) cut_segments.emplace_back(a, b);
            }
            continue;
        }

        // Mixed: Sutherland–Hodgman clip against f <= 0 (zeros count inside).
        std::uint32_t poly[5];
        int count = 0;
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t p = tri[k];
            const std::uint32_t q = tri[(k + 1) % 3];
            const bool p_in = d[p] <= 0.0;
            const bool q_in = d[q] <= 0.0;
            if (p_in != q_in && d[p] != 0.0 && d[q] != 0.0) {
                poly[count++] = cut_vertex(p, q);
            }
            if (q_in) poly[count++] = q;
        }
        // Deduplicate consecutive ids (zero-length edges from on-plane verts).
        std::uint32_t cleaned[5];
        int m = 0;
        for (int k = 0; k < count; ++k) {
            if (m == 0 || cleaned[m - 1] != poly[k]) cleaned[m++] = poly[k];
        }
        while (m >= 2 && cleaned[0] == cleaned[m - 1]) --m;
        if (m >= 3) {
            for (int k = 1; k + 1 < m; ++k) {
                out.add_triangle(cleaned[0], cleaned[k], cleaned[k + 1]);
            }
        }
        // The clipped polygon's in-plane edge bounds the cap.
        for (int k = 0; k < m; ++k) {
            const std::uint32_t a = cleaned[k];
            const std::uint32_t b = cleaned[(k + 1) % m];
            if (a != b && on_plane(a) && on_plane(b)) cut_segments.emplace_back(a, b);
        }
    }

    // --- cap the cut ---------------------------------------------------------
    if (!cut_segments.empty()) {
        // Chain segments into loops by vertex id.
        std::map<std::uint32_t, std::vector<std::uint32_t>> adjacency;
        for (const auto& [a, b] : cut_segments) {
            adjacency[a].push_back(b);
            adjacency[b].push_back(a);
        }
        for (const auto& [id, nbrs] : adjacency) {
            if (nbrs.size() != 2) {
                throw MeshError("cut boundary is not a collection of simple loops");
            }
        }
        // Plane basis: e1 along x, e2 in-plane uphill; CCW in (e1, e2)
        // coordinates means the cap normal points to the removed side.
        const double s = std::sqrt(1.0 + slope * slope);
        const Vec3 e1{1.0, 0.0, 0.0};
        const Vec3 e2{0.0, 1.0 / s, slope / s};

        std::vector<CapLoop> loops;
        std::map<std::uint32_t, bool> visited;
        for (const auto& [start, nbrs] : adjacency) {
            if (visited.count(start)) continue;
            CapLoop loop;
            std::uint32_t prev = std::numeric_limits<std::uint32_t>::max();
            std::uint32_t cur = start;
            do {
                visited[cur] = true;
                loop.ids.push_back(cur);
                const Vec3 p = out.vertices[cur];
                loop.pts.push_back({dot(p, e1), dot(p, e2)});
                const auto& nb = adjacency[cur];
                const std::uint32_t next = (nb[0] == prev) ? nb[1] : nb[0];
                prev = cur;
                cur = next;
            } while (cur != start && loop.ids.size() <= adjacency.size());
            loop.area2 = loop_area2(loop.pts);
            loops.push_back(std::move(loop));
        }

        // Nesting depth via even-odd containment of a representative vertex.
        for (std::size_t i = 0; i < loops.size(); ++i) {
            for (std::size_t j = 0; j < loops.size(); ++j) {
                if (i == j) continue;
                if (point_in_loop(loops[i].pts.front(), loops[j].pts)) ++loops[i].depth;
            }
        }

        std::vector<std::array<std::uint32_t, 3>> cap;
        for (std::size_t i = 0; i < loops.size(); ++i) {
            if (loops[i].depth % 2 != 0) continue;  // holes handled with parents
            CapLoop outer = loops[i];
            if (outer.area2 < 0.0) {
                std::reverse(outer.ids.begin(), outer.ids.end());
                std::reverse(outer.pts.begin(), outer.pts.end());
            }
            std::vector<IndexedPoint> polygon;
            for (std::size_t k = 0; k < outer.ids.size(); ++k) {
                polygon.push_back({outer.pts[k], outer.ids[k]});
            }
            // Direct children: depth exactly one greater, contained in this loop.
            for (std::size_t j = 0; j < loops.size(); ++j) {
                if (loops[j].depth != loops[i].depth + 1) continue;
                if (!point_in_loop(loops[j].pts.front(), loops[i].pts)) continue;
                CapLoop hole = loops[j];
                if (hole.area2 > 0.0) {
                    std::reverse(hole.ids.begin(), hole.ids.end());
                    std::reverse(hole.pts.begin(), hole.pts.end());
                }
                std::vector<IndexedPoint> hole_poly;
                for (std::size_t k = 0; k < hole.ids.size(); ++k) {
                    hole_poly.push_back({hole.pts[k], hole.ids[k]});
                }
                polygon = splice_hole(std::move(polygon), hole_poly);
            }
            ear_clip(std::move(polygon), cap);
        }
        for (const auto& t : cap) out.triangles.push_back(t);
    }

    // Compact: drop vertices that ended up unreferenced (above the plane).
    std::vector<std::uint32_t> remap(out.vertices.size(),
                                     std::numeric_limits<std::uint32_t>::max());
    TriangleMesh compact;
    compact.triangles.reserve(out.triangles.size());
    for (const auto& t : out.triangles) {
        std::array<std::uint32_t, 3> nt{};
        for (int k = 0; k < 3; ++k) {
            if (remap[t[k]] == std::numeric_limits<std::uint32_t>::max()) {
                remap[t[k]] = compact.add_vertex(out.vertices[t[k]]);
            }
            nt[k] = remap[t[k]];
        }
        compact.triangles.push_back(nt);
    }
    return compact;
}

}  // namespace dataware
