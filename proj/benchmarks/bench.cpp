#include <benchmark/benchmark.h>

#include "hbem/assembly.hpp"
#include "hbem/linalg.hpp"
#include "hbem/solve.hpp"
#include "hbem/spectral.hpp"

using namespace hbem;

namespace {

SurfaceMesh submerged(int s) {
    return place(CavityScene(icosphere(s, 1.0), Vec3{0, 0, -2}, 0.25, 1.0));
}

void bm_assemble_S(benchmark::State& state) {
    const SurfaceMesh mesh = submerged(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(OperatorKind::S, mesh));
    state.SetComplexityN(long(mesh.size()));
}
BENCHMARK(bm_assemble_S)->Arg(1)->Arg(2)->Arg(3)->Complexity(benchmark::oNSquared);

void bm_assemble_Dtilde(benchmark::State& state) {
    const SurfaceMesh mesh = submerged(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(OperatorKind::Dtilde, mesh));
}
BENCHMARK(bm_assemble_Dtilde)->Arg(2)->Arg(3);

void bm_direct_solve(benchmark::State& state) {
    const CavityScene scene(icosphere(int(state.range(0)), 1.0), Vec3{0, 0, -2}, 0.25, 1.0);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g = pressure_datum(system.mesh, {0, 0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(solve_trace(system, g));
}
BENCHMARK(bm_direct_solve)->Arg(1)->Arg(2)->Arg(3);

void bm_series_solve(benchmark::State& state) {
    const CavityScene scene(icosphere(int(state.range(0)), 1.0), Vec3{0, 0, -2}, 0.25, 1.0);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g = pressure_datum(system.mesh, {0, 0, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_trace(system, g, SolveMethod::neumann_series));
}
BENCHMARK(bm_series_solve)->Arg(1)->Arg(2)->Arg(3);

void bm_eigenvalues(benchmark::State& state) {
    const SurfaceMesh mesh = submerged(int(state.range(0)));
    const Matrix op = assemble(OperatorKind::Kstar, mesh).matrix +
                      assemble(OperatorKind::DtildeStar, mesh).matrix;
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(op));
}
BENCHMARK(bm_eigenvalues)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
