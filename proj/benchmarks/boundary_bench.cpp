#include "springembed/boundary_opt.hpp"
#include "springembed/mesh.hpp"

#include <benchmark/benchmark.h>

namespace se = springembed;

namespace {

// Full boundary pipeline on a sampled mesh: eigenpairs, candidates, smoothing.
void BM_EmbedBoundary(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const se::MeshGraph mesh = se::extractGraph(se::delaunay(se::samplePoints(se::Shape::Disk, n, 3)));
    const se::SchurOperator op(se::blockPartition(mesh.graph, mesh.boundary, {.validateBoundary = false}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(se::embedBoundary(op));
    }
}
BENCHMARK(BM_EmbedBoundary)->Arg(500)->Arg(1250)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
