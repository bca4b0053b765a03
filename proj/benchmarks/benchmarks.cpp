// Microbenchmarks for the heavy geometry and geodata kernels.

#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include <dataware/config.hpp>
#include <dataware/contour.hpp>
#include <dataware/encoder.hpp>
#include <dataware/exporters.hpp>
#include <dataware/geodata.hpp>
#include <dataware/mesher.hpp>
#include <dataware/raster.hpp>
#include <dataware/vessels.hpp>

using namespace dataware;

namespace {

Profile2D hollow_cup_profile() {
    // Wall thickness 4 mm, outer radius 40 mm, height 100 mm.
    return Profile2D({{0, 0}, {40, 0}, {40, 100}, {36, 100}, {36, 4}, {0, 4}});
}

MugSpec sample_mug_spec(int perforations) {
    const double turn_len = std::hypot(std::numbers::pi * 80.0, 5.0);
    MugSpec spec;
    spec.diameter_mm = 80.0;
    spec.pitch_mm = 5.0;
    spec.spiral_length_mm = 6000.0;
    spec.spiral_turns = spec.spiral_length_mm / turn_len;
    spec.height_mm = spec.spiral_turns * spec.pitch_mm;
    spec.perforation_count = perforations;
    spec.perforation_spacing_mm = 260.0;
    return spec;
}

RasterGrid ramp_grid(int ncols, int nrows) {
    RasterGrid g;
    g.ncols = ncols;
    g.nrows = nrows;
    g.cellsize = 25.0;
    g.values.resize(static_cast<std::size_t>(ncols) * nrows);
    for (int row = 0; row < nrows; ++row) {
        for (int col = 0; col < ncols; ++col) {
            g.value(col, row) = std::sin(col * 0.21) * 40.0 + row * 0.8 + 100.0;
        }
    }
    return g;
}

void bm_revolve(benchmark::State& state) {
    const Profile2D profile = hollow_cup_profile();
    const int segments = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(revolve(profile, segments));
    }
}
BENCHMARK(bm_revolve)->Arg(64)->Arg(256)->Arg(1024);

void bm_perforate(benchmark::State& state) {
    const Config cfg;
    const int holes = static_cast<int>(state.range(0));
    const MugSpec spec = sample_mug_spec(holes);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_mug(spec, cfg));
    }
}
BENCHMARK(bm_perforate)->Arg(0)->Arg(8)->Arg(20);

void bm_tilt_cut(benchmark::State& state) {
    const int segments = static_cast<int>(state.range(0));
    const TriangleMesh solid =
        revolve(Profile2D({{0, 0}, {40, 0}, {40, 100}, {0, 100}}), segments);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tilt_cut(solid, 10.0, 50.0));
    }
}
BENCHMARK(bm_tilt_cut)->Arg(64)->Arg(256)->Arg(1024);

void bm_mesh_stats(benchmark::State& state) {
    const Config cfg;
    const TriangleMesh mug = build_mug(sample_mug_spec(12), cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mesh_stats(mug, false));
    }
}
BENCHMARK(bm_mesh_stats);

void bm_stl_roundtrip(benchmark::State& state) {
    const TriangleMesh solid = revolve(hollow_cup_profile(), 256);
    const std::string bytes = stl_bytes(solid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stl_bytes(parse_stl(bytes)));
    }
}
BENCHMARK(bm_stl_roundtrip);

void bm_zonal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RasterGrid g = ramp_grid(n, n);
    // Values are reused as 0..100-ish scores; clamp into range.
    RasterGrid scores = g;
    for (double& v : scores.values) v = std::fmin(100.0, std::fmax(0.0, v - 60.0));
    const double w = scores.extent_width();
    const double h = scores.extent_height();
    const Polygon2D zone({{0.1 * w, 0.1 * h}, {0.9 * w, 0.2 * h}, {0.7 * w, 0.9 * h}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(builtup_fraction(scores, zone));
    }
}
BENCHMARK(bm_zonal)->Arg(64)->Arg(256);

void bm_contour(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RasterGrid g = ramp_grid(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_contour(g, 113.0));
    }
}
BENCHMARK(bm_contour)->Arg(64)->Arg(256);

void bm_profile_slope(benchmark::State& state) {
    const RasterGrid g = ramp_grid(128, 128);
    const Vec2 a{2.0 * g.cellsize, 3.0 * g.cellsize};
    const Vec2 b{120.0 * g.cellsize, 110.0 * g.cellsize};
    for (auto _ : state) {
        benchmark::DoNotOptimize(slope_percent(extract_profile(g, a, b, 256)));
    }
}
BENCHMARK(bm_profile_slope);

}  // namespace

BENCHMARK_MAIN();
