#include <benchmark/benchmark.h>

#include "triopt/energy.hpp"
#include "triopt/mesh.hpp"
#include "triopt/mesh_io.hpp"
#include "triopt/optimizer.hpp"
#include "triopt/whitney.hpp"

using namespace triopt;

static void BM_PhiInterval(benchmark::State& state) {
    const Triangulation mesh = uniform_interval_mesh(0.0, 1.0, state.range(0));
    const ScalarField f = field_by_name("quad1d");
    const EnergyWeights w(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(phi(mesh, f, w));
}
BENCHMARK(BM_PhiInterval)->Arg(64)->Arg(1024);

static void BM_PhiSquare(benchmark::State& state) {
    const Triangulation mesh = structured_square_mesh(state.range(0));
    const ScalarField f = field_by_name("sinprod2d");
    const EnergyWeights w(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(phi(mesh, f, w));
}
BENCHMARK(BM_PhiSquare)->Arg(8)->Arg(32);

static void BM_PhiFormSquare(benchmark::State& state) {
    const Triangulation mesh = structured_square_mesh(state.range(0));
    const OneForm alpha = form_by_name("x_dy");
    const EnergyWeights w(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(phi_form(mesh, alpha, w));
}
BENCHMARK(BM_PhiFormSquare)->Arg(8)->Arg(32);

static void BM_Validate(benchmark::State& state) {
    const Triangulation mesh = structured_square_mesh(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(validate(mesh));
}
BENCHMARK(BM_Validate)->Arg(8)->Arg(32);

static void BM_EdgeTable(benchmark::State& state) {
    const Triangulation mesh = structured_square_mesh(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_edge_table(mesh));
}
BENCHMARK(BM_EdgeTable)->Arg(32);

static void BM_FdGradient(benchmark::State& state) {
    const Triangulation mesh = uniform_interval_mesh(0.0, 1.0, state.range(0));
    const ScalarField f = field_by_name("cubic1d");
    const EnergyWeights w(1.0, 1.0);
    const Objective obj = [&](std::span<const double> x) {
        return phi(unpack_free(mesh, x), f, w);
    };
    const auto x = pack_free(mesh);
    for (auto _ : state) benchmark::DoNotOptimize(fd_gradient(obj, x));
}
BENCHMARK(BM_FdGradient)->Arg(16)->Arg(64);

static void BM_OptimizeInterval(benchmark::State& state) {
    Triangulation start = uniform_interval_mesh(0.0, 1.0, 8);
    for (int i = 1; i < 8; ++i) start.vertices[i].x += (i % 2 == 1) ? 0.02 : -0.02;
    const ScalarField f = field_by_name("quad1d");
    const EnergyWeights w(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(optimize(start, f, w));
}
BENCHMARK(BM_OptimizeInterval);

static void BM_MeshRoundTrip(benchmark::State& state) {
    const Triangulation mesh = structured_square_mesh(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(read_mesh(write_mesh(mesh)));
}
BENCHMARK(BM_MeshRoundTrip)->Arg(16);

BENCHMARK_MAIN();
