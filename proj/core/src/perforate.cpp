#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "dataware/errors.hpp"
#include "dataware/mesher.hpp"

namespace dataware {

namespace {

constexpr double k_two_pi = 2.0 * std::numbers::pi;

double normalize_angle(double theta) {  // into [0, 2*pi)
    theta = std::fmod(theta, k_two_pi);
    if (theta < 0.0) theta += k_two_pi;
    return theta;
}

// Signed difference wrapped into [-period/2, period/2).
double wrap_signed(double d, double period) {
    d = std::fmod(d + period / 2.0, period);
    if (d < 0.0) d += period;
    return d - period / 2.0;
}

// A cylindrical wall band: all triangles whose vertices sit at one radius.
// Revolved solids produce exactly two vertex rings per band (bottom/top).
struct Band {
    double radius = 0.0;
    double zmin = 0.0, zmax = 0.0;
    std::vector<std::uint32_t> tris;
    std::vector<std::uint32_t> verts;

    // Filled by prepare():
    std::vector<std::uint32_t> bottom_ring, top_ring;  // sorted by angle
    std::vector<double> col_theta;
    int cols = 0;
    int rows = 0;
    double cell_w = 0.0, row_h = 0.0;
    bool flip = false;  // true when the material lies radially outside
};

struct DevHole {
    int index = 0;      // position in the input centers list
    double u = 0.0;     // developed coordinates on the band: u = radius * theta
    double z = 0.0;
    double radius = 0.0;
    int ring_points = 0;
};

struct Stitcher {
    const Band& band;
    TriangleMesh& out;

    void emit(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        if (band.flip) {
            out.add_triangle(a, c, b);
        } else {
            out.add_triangle(a, b, c);
        }
    }
};

}  // namespace

TriangleMesh perforate(const TriangleMesh& mesh, std::span<const Vec3> centers,
                       double radius) {
    if (centers.empty()) return mesh;
    if (!(radius > 0.0)) {
        throw MeshError("perforation radius must be positive");
    }
    {
        const MeshStats stats = mesh_stats(mesh, false);
        if (!stats.watertight || stats.genus != 0) {
            throw MeshError("perforate requires a watertight genus-0 mesh");
        }
    }

    const std::size_t nv = mesh.vertices.size();
    std::vector<double> vradius(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        vradius[i] = std::hypot(mesh.vertices[i].x, mesh.vertices[i].y);
    }

    // Group triangles into constant-radius bands.
    std::map<long long, Band> bands;
    for (std::uint32_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const double r0 = vradius[t[0]];
        const double r1 = vradius[t[1]];
        const double r2 = vradius[t[2]];
        const double rmax = std::max({r0, r1, r2});
        const double rmin = std::min({r0, r1, r2});
        const double tol = 1e-6 * std::max(1.0, rmax);
        if (rmin <= tol || rmax - rmin > tol) continue;
        const long long key = std::llround(rmax * 1e6);
        Band& band = bands[key];
        if (band.tris.empty()) {
            band.radius = rmax;
            band.zmin = band.zmax = mesh.vertices[t[0]].z;
        }
        band.tris.push_back(ti);
        for (int k = 0; k < 3; ++k) {
            band.zmin = std::min(band.zmin, mesh.vertices[t[k]].z);
            band.zmax = std::max(band.zmax, mesh.vertices[t[k]].z);
        }
    }

    // Resolve each hole center to its outer band (the wall it sits on) and
    // the inner band behind it (largest smaller radius covering its z).
    struct HoleBands {
        long long outer_key = 0;
        long long inner_key = 0;
    };
    std::vector<HoleBands> hole_bands(centers.size());
    for (std::size_t h = 0; h < centers.size(); ++h) {
        const Vec3 c = centers[h];
        const double rc = std::hypot(c.x, c.y);
        const double tol = 1e-6 * std::max(1.0, rc) + 1e-9;
        long long outer_key = 0;
        bool outer_found = false;
        for (const auto& [key, band] : bands) {
            if (std::abs(band.radius - rc) <= tol && c.z >= band.zmin - 1e-9 &&
                c.z <= band.zmax + 1e-9) {
                outer_key = key;
                outer_found = true;
            }
        }
        if (!outer_found) {
            throw MeshError("hole " + std::to_string(h) +
                            " is not centered on a cylindrical wall");
        }
        long long inner_key = 0;
        bool inner_found = false;
        for (const auto& [key, band] : bands) {
            if (band.radius < rc - tol && c.z >= band.zmin - 1e-9 &&
                c.z <= band.zmax + 1e-9) {
                if (!inner_found || band.radius > bands[inner_key].radius) {
                    inner_key = key;
                    inner_found = true;
                }
            }
        }
        if (!inner_found) {
            throw MeshError("hole " + std::to_string(h) +
                            " has no opposite wall behind it");
        }
        hole_bands[h] = {outer_key, inner_key};
    }

    std::set<long long> rebuilt_keys;
    for (const HoleBands& hb : hole_bands) {
        rebuilt_keys.insert(hb.outer_key);
        rebuilt_keys.insert(hb.inner_key);
    }

    // Prepare the bands that get rebuilt: find their two vertex rings and
    // derive the rebuild grid resolution.
    for (long long key : rebuilt_keys) {
        Band& band = bands[key];
        std::set<std::uint32_t> vset;
        for (std::uint32_t ti : band.tris) {
            for (int k = 0; k < 3; ++k) vset.insert(mesh.triangles[ti][k]);
        }
        band.verts.assign(vset.begin(), vset.end());
        const double ztol = 1e-9 * std::max(1.0, band.zmax - band.zmin);
        for (std::uint32_t v : band.verts) {
            const double z = mesh.vertices[v].z;
            if (std::abs(z - band.zmin) <= ztol) {
                band.bottom_ring.push_back(v);
            } else if (std::abs(z - band.zmax) <= ztol) {
                band.top_ring.push_back(v);
            } else {
                throw MeshError("wall band at radius " + std::to_string(band.radius) +
                                " is not a simple two-ring cylinder");
            }
        }
        if (band.bottom_ring.size() != band.top_ring.size() ||
            band.bottom_ring.size() < 3) {
            throw MeshError("wall band at radius " + std::to_string(band.radius) +
                            " is not a simple two-ring cylinder");
        }
        auto angle_of = [&](std::uint32_t v) {
            return normalize_angle(std::atan2(mesh.vertices[v].y, mesh.vertices[v].x));
        };
        auto by_angle = [&](std::uint32_t a, std::uint32_t b) {
            return angle_of(a) < angle_of(b);
        };
        std::sort(band.bottom_ring.begin(), band.bottom_ring.end(), by_angle);
        std::sort(band.top_ring.begin(), band.top_ring.end(), by_angle);
        band.cols = static_cast<int>(band.bottom_ring.size());
        band.col_theta.reserve(band.bottom_ring.size());
        for (std::size_t k = 0; k < band.bottom_ring.size(); ++k) {
            const double bt = angle_of(band.bottom_ring[k]);
            const double tt = angle_of(band.top_ring[k]);
            if (std::abs(wrap_signed(bt - tt, k_two_pi)) > 1e-9) {
                throw MeshError("wall band at radius " + std::to_string(band.radius) +
                                " has misaligned vertex rings");
            }
            band.col_theta.push_back(bt);
        }
        band.cell_w = k_two_pi * band.radius / band.cols;
        const double row_target = std::clamp(band.cell_w, 0.25, 2.0);
        band.rows = std::max(
            4, static_cast<int>(std::lround((band.zmax - band.zmin) / row_target)));
        band.row_h = (band.zmax - band.zmin) / band.rows;

        // Material side: compare an original face normal to the radial
        // direction at its centroid.
        const auto& t0 = mesh.triangles[band.tris.front()];
        const Vec3 a = mesh.vertices[t0[0]];
        const Vec3 b = mesh.vertices[t0[1]];
        const Vec3 c = mesh.vertices[t0[2]];
        const Vec3 n = cross(b - a, c - a);
        const Vec3 centroid = (a + b + c) * (1.0 / 3.0);
        band.flip = n.x * centroid.x + n.y * centroid.y < 0.0;
    }

    // Developed-space hole layout per band, ring resolution per hole.
    std::map<long long, std::vector<DevHole>> band_holes;
    std::vector<int> hole_ring_points(centers.size());
    for (std::size_t h = 0; h < centers.size(); ++h) {
        const Band& outer = bands[hole_bands[h].outer_key];
        const Band& inner = bands[hole_bands[h].inner_key];
        const double min_cell = std::min(outer.cell_w, inner.cell_w);
        hole_ring_points[h] =
            std::max(12, static_cast<int>(std::ceil(k_two_pi * radius / min_cell)));
        for (long long key : {hole_bands[h].outer_key, hole_bands[h].inner_key}) {
            const Band& band = bands[key];
            const double theta = normalize_angle(std::atan2(centers[h].y, centers[h].x));
            band_holes[key].push_back({static_cast<int>(h), band.radius * theta,
                                       centers[h].z, radius, hole_ring_points[h]});
        }
    }

    // Pairwise safety checks in developed space (per band).
    for (const auto& [key, holes] : band_holes) {
        const Band& band = bands[key];
        const double period = k_two_pi * band.radius;
        const double cell_diag = std::hypot(band.cell_w, band.row_h);
        const double delta = 0.25 * band.cell_w;
        for (std::size_t i = 0; i < holes.size(); ++i) {
            for (std::size_t j = i + 1; j < holes.size(); ++j) {
                const double du = wrap_signed(holes[i].u - holes[j].u, period);
                const double dz = holes[i].z - holes[j].z;
                const double d = std::hypot(du, dz);
                if (d < holes[i].radius + holes[j].radius) {
                    throw MeshError("holes " + std::to_string(holes[i].index) + " and " +
                                    std::to_string(holes[j].index) +
                                    " overlap on the wall surface");
                }
                if (d < 2.0 * (radius + delta) + 2.0 * cell_diag) {
                    throw MeshError("holes " + std::to_string(holes[i].index) + " and " +
                                    std::to_string(holes[j].index) +
                                    " are too close to stitch separately");
                }
            }
        }
    }

    TriangleMesh out;
    out.vertices = mesh.vertices;
    std::vector<bool> drop(mesh.triangles.size(), false);
    for (long long key : rebuilt_keys) {
        for (std::uint32_t ti : bands[key].tris) drop[ti] = true;
    }
    for (std::uint32_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        if (!drop[ti]) out.triangles.push_back(mesh.triangles[ti]);
    }

    // Hole rings, keyed by (hole, band) for the tunnel pass.
    std::map<std::pair<int, long long>, std::vector<std::uint32_t>> hole_rings;

    for (long long key : rebuilt_keys) {
        Band& band = bands[key];
        const std::vector<DevHole>& holes = band_holes[key];
        const int n = band.cols;
        const int m = band.rows;
        const double period = k_two_pi * band.radius;
        const double delta = 0.25 * band.cell_w;

        // Column u coordinates (increasing); cell k spans [u_k, u_{k+1}].
        std::vector<double> col_u(n + 1);
        for (int k = 0; k < n; ++k) col_u[k] = band.radius * band.col_theta[k];
        col_u[n] = col_u[0] + period;
        auto row_z = [&](int j) {
            return j == m ? band.zmax : band.zmin + j * band.row_h;
        };

        // Carve: a cell is removed when its rectangle comes within
        // radius + delta of a hole center (wrap-aware in u).
        std::vector<int> removed(static_cast<std::size_t>(n) * m, -1);
        auto cell_removed = [&](int k, int j) {
            return removed[static_cast<std::size_t>(j) * n + k] >= 0;
        };
        for (const DevHole& hole : holes) {
            bool any = false;
            for (int j = 0; j < m; ++j) {
                const double z0 = row_z(j);
                const double z1 = row_z(j + 1);
                const double dz = hole.z - std::clamp(hole.z, z0, z1);
                for (int k = 0; k < n; ++k) {
                    double best = std::numeric_limits<double>::infinity();
                    for (double shift : {-period, 0.0, period}) {
                        const double uc = hole.u + shift;
                        const double du = uc - std::clamp(uc, col_u[k], col_u[k + 1]);
                        best = std::min(best, std::hypot(du, dz));
                    }
                    if (best < hole.radius + delta) {
                        if (j == 0 || j == m - 1) {
                            throw MeshError("hole " + std::to_string(hole.index) +
                                            " is too close to the wall boundary");
                        }
                        removed[static_cast<std::size_t>(j) * n + k] = hole.index;
                        any = true;
                    }
                }
            }
            if (!any) {
                throw MeshError("hole " + std::to_string(hole.index) +
                                " removed no wall cells (degenerate grid)");
            }
        }

        // Grid vertices: row 0 and row m reuse the original rings; interior
        // rows reuse each column's exact (x, y) with interpolated z.
        std::vector<std::uint32_t> grid(static_cast<std::size_t>(n) * (m + 1));
        for (int k = 0; k < n; ++k) {
            grid[k] = band.bottom_ring[k];
            grid[static_cast<std::size_t>(m) * n + k] = band.top_ring[k];
        }
        for (int j = 1; j < m; ++j) {
            const double z = row_z(j);
            for (int k = 0; k < n; ++k) {
                const Vec3 base = mesh.vertices[band.bottom_ring[k]];
                grid[static_cast<std::size_t>(j) * n + k] =
                    out.add_vertex({base.x, base.y, z});
            }
        }
        auto node = [&](int k, int j) {
            return grid[static_cast<std::size_t>(j) * n + (k % n)];
        };

        const Stitcher stitch{band, out};
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < n; ++k) {
                if (cell_removed(k, j)) continue;
                const std::uint32_t a = node(k, j);
                const std::uint32_t b = node(k + 1, j);
                const std::uint32_t c = node(k + 1, j + 1);
                const std::uint32_t d = node(k, j + 1);
                stitch.emit(a, b, c);
                stitch.emit(a, c, d);
            }
        }

        // Stitch each hole: staircase boundary loop -> circular ring.
        for (const DevHole& hole : holes) {
            // Boundary edges of this hole's removed region, as node-grid
            // index pairs ((k, j) with k in [0, n)).
            auto node_id = [&](int k, int j) { return j * n + ((k % n + n) % n); };
            std::map<int, std::vector<int>> adjacency;
            auto add_edge = [&](int a, int b) {
                adjacency[a].push_back(b);
                adjacency[b].push_back(a);
            };
            for (int j = 1; j < m - 1; ++j) {
                for (int k = 0; k < n; ++k) {
                    if (removed[static_cast<std::size_t>(j) * n + k] != hole.index) continue;
                    if (!cell_removed((k + n - 1) % n, j)) add_edge(node_id(k, j), node_id(k, j + 1));
                    if (!cell_removed((k + 1) % n, j)) add_edge(node_id(k + 1, j), node_id(k + 1, j + 1));
                    if (j == 0 || !cell_removed(k, j - 1)) add_edge(node_id(k, j), node_id(k + 1, j));
                    if (j == m - 1 || !cell_removed(k, j + 1)) add_edge(node_id(k, j + 1), node_id(k + 1, j + 1));
                }
            }
            for (const auto& [id, nbrs] : adjacency) {
                if (nbrs.size() != 2) {
                    throw MeshError("hole " + std::to_string(hole.index) +
                                    " has a non-simple staircase boundary");
                }
            }
            // Walk the loop.
            std::vector<int> loop;
            const int start = adjacency.begin()->first;
            int prev = -1;
            int cur = start;
            do {
                loop.push_back(cur);
                const auto& nbrs = adjacency[cur];
                const int next = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
                prev = cur;
                cur = next;
            } while (cur != start && loop.size() <= adjacency.size());
            if (loop.size() != adjacency.size()) {
                throw MeshError("hole " + std::to_string(hole.index) +
                                " has a fragmented staircase boundary");
            }

            // Developed coordinates of loop nodes, unwrapped around the hole.
            auto dev_of_node = [&](int id) {
                const int k = id % n;
                const int j = id / n;
                const double u_raw = band.radius * band.col_theta[k];
                const double u = hole.u + wrap_signed(u_raw - hole.u, period);
                return Vec2{u, row_z(j)};
            };
            std::vector<Vec2> dev(loop.size());
            for (std::size_t i = 0; i < loop.size(); ++i) dev[i] = dev_of_node(loop[i]);
            double area2 = 0.0;
            for (std::size_t i = 0; i < dev.size(); ++i) {
                area2 += cross(dev[i], dev[(i + 1) % dev.size()]);
            }
            if (area2 < 0.0) {
                std::reverse(loop.begin(), loop.end());
                std::reverse(dev.begin(), dev.end());
            }

            // Angles around the hole center; rotate the loop to start at the
            // minimum so the unwrapped sequence is non-decreasing.
            const std::size_t s_count = loop.size();
            std::vector<double> alpha(s_count);
            std::size_t start_idx = 0;
            for (std::size_t i = 0; i < s_count; ++i) {
                alpha[i] = std::atan2(dev[i].y - hole.z, dev[i].x - hole.u);
                if (alpha[i] < alpha[start_idx]) start_idx = i;
            }
            std::vector<std::uint32_t> stair(s_count);
            std::vector<double> stair_angle(s_count);
            double prev_angle = alpha[start_idx];
            double unwrapped = alpha[start_idx];
            int wraps = 0;
            for (std::size_t i = 0; i < s_count; ++i) {
                const std::size_t src = (start_idx + i) % s_count;
                const int id = loop[src];
                const int k = id % n;
                const int j = id / n;
                stair[i] = node(k, j);
                if (i > 0) {
                    double step = alpha[src] - prev_angle;
                    if (step < -1e-12) {
                        step += k_two_pi;
                        ++wraps;
                    }
                    unwrapped += step;
                    prev_angle = alpha[src];
                }
                stair_angle[i] = unwrapped;
            }
            if (wraps > 0) {
                throw MeshError("hole " + std::to_string(hole.index) +
                                " staircase is not star-shaped; cannot stitch");
            }

            // Ring vertices on the wall surface.
            const int ring_n = hole.ring_points;
            std::vector<std::uint32_t> ring(ring_n);
            std::vector<double> ring_angle(ring_n);
            for (int i = 0; i < ring_n; ++i) {
                const double phi = k_two_pi * i / ring_n;
                const double u = hole.u + hole.radius * std::cos(phi);
                const double z = hole.z + hole.radius * std::sin(phi);
                const double theta = u / band.radius;
                ring[i] = out.add_vertex({band.radius * std::cos(theta),
                                          band.radius * std::sin(theta), z});
                ring_angle[i] = phi;
            }
            hole_rings[{hole.index, key}] = ring;

            // Rotate the ring start next to the staircase start angle and
            // unwrap its angles relative to it.
            const double a0 = stair_angle[0];
            int j0 = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < ring_n; ++i) {
                const double d = std::abs(wrap_signed(ring_angle[i] - a0, k_two_pi));
                if (d < best) {
                    best = d;
                    j0 = i;
                }
            }
            std::vector<double> ring_unwrapped(ring_n);
            for (int i = 0; i < ring_n; ++i) {
                const double phi = ring_angle[(j0 + i) % ring_n];
                ring_unwrapped[i] =
                    (i == 0) ? a0 + wrap_signed(phi - a0, k_two_pi)
                             : ring_unwrapped[0] + k_two_pi * i / ring_n;
            }

            // Angular zipper: advance whichever loop's next vertex comes
            // first; triangles keep the annulus interior consistently wound.
            auto stair_at = [&](std::size_t i) { return stair[i % s_count]; };
            auto ring_at = [&](int i) { return ring[(j0 + i) % ring_n]; };
            auto stair_angle_at = [&](std::size_t i) {
                return i < s_count ? stair_angle[i] : stair_angle[0] + k_two_pi;
            };
            auto ring_angle_at = [&](int i) {
                return i < ring_n ? ring_unwrapped[i] : ring_unwrapped[0] + k_two_pi;
            };
            std::size_t si = 0;
            int ri = 0;
            while (si < s_count || ri < ring_n) {
                const bool advance_stair =
                    ri >= ring_n ||
                    (si < s_count && stair_angle_at(si + 1) <= ring_angle_at(ri + 1));
                if (advance_stair) {
                    stitch.emit(stair_at(si), stair_at(si + 1), ring_at(ri));
                    ++si;
                } else {
                    stitch.emit(stair_at(si), ring_at(ri + 1), ring_at(ri));
                    ++ri;
                }
            }
        }
    }

    // Tunnels: connect matching ring vertices across the two walls.
    for (std::size_t h = 0; h < centers.size(); ++h) {
        const auto& outer_ring = hole_rings[{static_cast<int>(h), hole_bands[h].outer_key}];
        const auto& inner_ring = hole_rings[{static_cast<int>(h), hole_bands[h].inner_key}];
        const int ring_n = hole_ring_points[h];
        for (int i = 0; i < ring_n; ++i) {
            const int i1 = (i + 1) % ring_n;
            out.add_triangle(outer_ring[i], outer_ring[i1], inner_ring[i1]);
            out.add_triangle(outer_ring[i], inner_ring[i1], inner_ring[i]);
        }
    }

    // The rebuilt walls abandoned their original vertices; compact the
    // vertex array so diagnostics see only referenced vertices.
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
