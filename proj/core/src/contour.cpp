#include "dataware/contour.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "dataware/errors.hpp"

namespace dataware {

namespace {

// A crossing lives on a lattice edge: horizontal (between node (i,j) and
// (i+1,j)) or vertical (between (i,j) and (i,j+1)).  The key orders edges
// deterministically, which fixes the output ring order.
struct EdgeKey {
    std::uint8_t horizontal;
    int i;
    int j;
    auto operator<=>(const EdgeKey&) const = default;
};

struct Crossing {
    Vec2 pos;
    EdgeKey neighbors[2];
    int degree = 0;
    bool visited = false;
};

struct Lattice {
    const RasterGrid& grid;
    double level;
    int nx, ny;  // node counts (== ncols, nrows)

    bool valid(int i, int j) const { return !grid.is_nodata(i, j); }
    double value(int i, int j) const { return grid.value(i, j); }
    bool inside(int i, int j) const { return value(i, j) >= level; }
    Vec2 node_pos(int i, int j) const { return {grid.center_x(i), grid.center_y(j)}; }

    Vec2 interpolate(EdgeKey e) const {
        const int i2 = e.horizontal ? e.i + 1 : e.i;
        const int j2 = e.horizontal ? e.j : e.j + 1;
        const double va = value(e.i, e.j);
        const double vb = value(i2, j2);
        double t = (level - va) / (vb - va);
        t = std::clamp(t, 0.0, 1.0);
        const Vec2 a = node_pos(e.i, e.j);
        const Vec2 b = node_pos(i2, j2);
        return a + (b - a) * t;
    }
};

void link(std::map<EdgeKey, Crossing>& crossings, const Lattice& lat, EdgeKey a, EdgeKey b) {
    for (EdgeKey k : {a, b}) {
        if (!crossings.count(k)) {
            crossings[k] = Crossing{lat.interpolate(k), {}, 0, false};
        }
    }
    crossings[a].neighbors[crossings[a].degree++] = b;
    crossings[b].neighbors[crossings[b].degree++] = a;
}

}  // namespace

std::vector<Polygon2D> extract_contour(const RasterGrid& grid, double level) {
    const auto range = grid.value_range();
    if (!range) {
        throw GeometryError("cannot contour a grid whose cells are all nodata");
    }
    if (level < range->first || level > range->second) {
        return {};
    }

    Lattice lat{grid, level, grid.ncols, grid.nrows};
    std::map<EdgeKey, Crossing> crossings;

    // March over cells of the node lattice.  Corner bits: 1 = (i,j),
    // 2 = (i+1,j), 4 = (i+1,j+1), 8 = (i,j+1); a bit is set when that
    // node is at or above the level.
    for (int j = 0; j + 1 < lat.ny; ++j) {
        for (int i = 0; i + 1 < lat.nx; ++i) {
            if (!lat.valid(i, j) || !lat.valid(i + 1, j) || !lat.valid(i + 1, j + 1) ||
                !lat.valid(i, j + 1)) {
                continue;
            }
            int mask = 0;
            if (lat.inside(i, j)) mask |= 1;
            if (lat.inside(i + 1, j)) mask |= 2;
            if (lat.inside(i + 1, j + 1)) mask |= 4;
            if (lat.inside(i, j + 1)) mask |= 8;
            if (mask == 0 || mask == 15) continue;

            const EdgeKey B{1, i, j};
            const EdgeKey T{1, i, j + 1};
            const EdgeKey L{0, i, j};
            const EdgeKey R{0, i + 1, j};

            switch (mask) {
                case 1: case 14: link(crossings, lat, L, B); break;
                case 2: case 13: link(crossings, lat, B, R); break;
                case 3: case 12: link(crossings, lat, L, R); break;
                case 4: case 11: link(crossings, lat, R, T); break;
                case 6: case 9:  link(crossings, lat, B, T); break;
                case 8: case 7:  link(crossings, lat, L, T); break;
                case 5: case 10: {
                    // Saddle: decide with the cell-center average.
                    const double avg = (lat.value(i, j) + lat.value(i + 1, j) +
                                        lat.value(i + 1, j + 1) + lat.value(i, j + 1)) /
                                       4.0;
                    const bool center_inside = avg >= level;
                    const bool diag_00_11 = (mask == 5);
                    if (center_inside == diag_00_11) {
                        // (i,j) and (i+1,j+1) joined through the cell center
                        link(crossings, lat, L, T);
                        link(crossings, lat, B, R);
                    } else {
                        link(crossings, lat, L, B);
                        link(crossings, lat, R, T);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    if (crossings.empty()) return {};

    // Chain crossings into open paths (endpoints of degree 1) and cycles.
    struct Chain {
        std::vector<EdgeKey> keys;
        bool closed = false;
    };
    std::vector<Chain> chains;

    auto walk = [&](EdgeKey start) {
        Chain chain;
        EdgeKey prev = start;
        EdgeKey cur = start;
        bool has_prev = false;
        while (true) {
            Crossing& c = crossings[cur];
            c.visited = true;
            chain.keys.push_back(cur);
            EdgeKey next{};
            bool found = false;
            for (int k = 0; k < c.degree; ++k) {
                if (has_prev && c.neighbors[k] == prev) continue;
                if (crossings[c.neighbors[k]].visited && c.neighbors[k] != start) continue;
                next = c.neighbors[k];
                found = true;
                break;
            }
            if (!found) break;
            if (next == start && chain.keys.size() >= 3) {
                chain.closed = true;
                break;
            }
            if (crossings[next].visited) break;
            prev = cur;
            has_prev = true;
            cur = next;
        }
        return chain;
    };

    for (auto& [key, crossing] : crossings) {
        if (!crossing.visited && crossing.degree == 1) chains.push_back(walk(key));
    }
    for (auto& [key, crossing] : crossings) {
        if (!crossing.visited) chains.push_back(walk(key));
    }

    const Vec2 lat_lo = lat.node_pos(0, 0);
    const Vec2 lat_hi = lat.node_pos(lat.nx - 1, lat.ny - 1);
    const double perim_w = lat_hi.x - lat_lo.x;
    const double perim_h = lat_hi.y - lat_lo.y;
    const double perim_total = 2.0 * (perim_w + perim_h);
    const double perim_eps = 1e-9 * std::max(perim_w, perim_h);

    // Perimeter coordinate walking CCW from the bottom-left lattice corner;
    // negative for points off the boundary rectangle.
    auto perimeter_coord = [&](Vec2 p) {
        if (std::abs(p.y - lat_lo.y) <= perim_eps) return p.x - lat_lo.x;
        if (std::abs(p.x - lat_hi.x) <= perim_eps) return perim_w + (p.y - lat_lo.y);
        if (std::abs(p.y - lat_hi.y) <= perim_eps) return perim_w + perim_h + (lat_hi.x - p.x);
        if (std::abs(p.x - lat_lo.x) <= perim_eps) return 2.0 * perim_w + perim_h + (lat_hi.y - p.y);
        return -1.0;
    };

    // Rectangle corners passed when walking CCW from s0 to s1.
    auto corners_between = [&](double s0, double s1) {
        const Vec2 corner_pos[4] = {
            {lat_hi.x, lat_lo.y}, {lat_hi.x, lat_hi.y}, {lat_lo.x, lat_hi.y}, {lat_lo.x, lat_lo.y}};
        const double corner_s[4] = {perim_w, perim_w + perim_h, 2.0 * perim_w + perim_h,
                                    perim_total};
        double span = s1 - s0;
        if (span <= 0.0) span += perim_total;
        std::vector<std::pair<double, Vec2>> hits;
        for (int k = 0; k < 4; ++k) {
            double ds = corner_s[k] - s0;
            if (ds <= perim_eps) ds += perim_total;
            if (ds < span - perim_eps) hits.emplace_back(ds, corner_pos[k]);
        }
        std::sort(hits.begin(), hits.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Vec2> corners;
        corners.reserve(hits.size());
        for (const auto& [ds, pos] : hits) corners.push_back(pos);
        return corners;
    };

    std::vector<std::vector<Vec2>> rings;

    for (const Chain& chain : chains) {
        if (!chain.closed) continue;
        std::vector<Vec2> ring;
        ring.reserve(chain.keys.size());
        for (EdgeKey k : chain.keys) ring.push_back(crossings[k].pos);
        rings.push_back(std::move(ring));
    }

    // Open chains end on the lattice boundary; splice them together along
    // the boundary so each ring encloses the below-level region.  The
    // perimeter alternates between below-level and at-or-above-level arcs
    // at each boundary crossing, so every chain endpoint has exactly one
    // incident below arc.
    struct Endpoint {
        double s;
        int chain;
        bool at_front;
    };
    std::vector<Endpoint> endpoints;
    std::vector<const Chain*> open_chains;
    for (const Chain& chain : chains) {
        if (chain.closed) continue;
        const Vec2 front = crossings[chain.keys.front()].pos;
        const Vec2 back = crossings[chain.keys.back()].pos;
        const double sf = perimeter_coord(front);
        const double sb = perimeter_coord(back);
        if (sf < 0.0 || sb < 0.0) {
            // Endpoint stranded in the interior next to a nodata pocket:
            // close the chain on itself.  Degenerate rings are filtered below.
            std::vector<Vec2> ring;
            for (EdgeKey k : chain.keys) ring.push_back(crossings[k].pos);
            rings.push_back(std::move(ring));
            continue;
        }
        const int idx = static_cast<int>(open_chains.size());
        open_chains.push_back(&chain);
        endpoints.push_back({sf, idx, true});
        endpoints.push_back({sb, idx, false});
    }

    if (!endpoints.empty()) {
        std::sort(endpoints.begin(), endpoints.end(),
                  [](const Endpoint& a, const Endpoint& b) { return a.s < b.s; });
        const int m = static_cast<int>(endpoints.size());

        // True when the CCW perimeter arc leaving this endpoint is below
        // level: the lattice node immediately ahead of the crossing decides.
        auto outgoing_below = [&](const Endpoint& e) {
            const Chain& chain = *open_chains[e.chain];
            const EdgeKey key = e.at_front ? chain.keys.front() : chain.keys.back();
            const int i2 = key.horizontal ? key.i + 1 : key.i;
            const int j2 = key.horizontal ? key.j : key.j + 1;
            const double s1 = perimeter_coord(lat.node_pos(key.i, key.j));
            const double s2 = perimeter_coord(lat.node_pos(i2, j2));
            double d1 = s1 - e.s;
            if (d1 <= 0.0) d1 += perim_total;
            double d2 = s2 - e.s;
            if (d2 <= 0.0) d2 += perim_total;
            const bool ahead_is_first = d1 < d2;
            const int ni = ahead_is_first ? key.i : i2;
            const int nj = ahead_is_first ? key.j : j2;
            return !lat.inside(ni, nj);
        };

        auto other_end = [&](int endpoint_idx) {
            for (int k = 0; k < m; ++k) {
                if (endpoints[k].chain == endpoints[endpoint_idx].chain &&
                    endpoints[k].at_front != endpoints[endpoint_idx].at_front) {
                    return k;
                }
            }
            return -1;
        };

        // Start each ring by leaving an endpoint along its below arc; the
        // below region then stays on the left for the whole traversal, so
        // every chain exit continues CCW along the perimeter.
        std::vector<bool> consumed(open_chains.size(), false);
        for (int start = 0; start < m; ++start) {
            if (consumed[endpoints[start].chain]) continue;
            if (!outgoing_below(endpoints[start])) continue;
            std::vector<Vec2> ring;
            int cur = start;
            while (true) {
                const int next = (cur + 1) % m;
                for (Vec2 c : corners_between(endpoints[cur].s, endpoints[next].s)) {
                    ring.push_back(c);
                }
                const Endpoint& arrive = endpoints[next];
                if (consumed[arrive.chain]) break;  // defensive; valid inputs close first
                consumed[arrive.chain] = true;
                const Chain& chain = *open_chains[arrive.chain];
                if (arrive.at_front) {
                    for (EdgeKey k : chain.keys) ring.push_back(crossings[k].pos);
                } else {
                    for (auto it = chain.keys.rbegin(); it != chain.keys.rend(); ++it) {
                        ring.push_back(crossings[*it].pos);
                    }
                }
                cur = other_end(next);
                if (cur == start) break;  // ring closed at the starting endpoint
            }
            rings.push_back(std::move(ring));
        }
    }

    // Deduplicate consecutive points, drop degenerate rings, normalize CCW.
    std::vector<Polygon2D> polygons;
    for (std::vector<Vec2>& ring : rings) {
        std::vector<Vec2> cleaned;
        cleaned.reserve(ring.size());
        for (const Vec2& p : ring) {
            if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
        }
        while (cleaned.size() >= 2 && cleaned.front() == cleaned.back()) cleaned.pop_back();
        if (cleaned.size() < 3) continue;
        double area2 = 0.0;
        for (std::size_t i = 0; i < cleaned.size(); ++i) {
            area2 += cross(cleaned[i], cleaned[(i + 1) % cleaned.size()]);
        }
        if (area2 == 0.0) continue;
        Polygon2D poly{std::move(cleaned)};
        poly.normalize_ccw();
        polygons.push_back(std::move(poly));
    }
    return polygons;
}

}  // namespace dataware
