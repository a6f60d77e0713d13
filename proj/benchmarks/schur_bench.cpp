#include "springembed/graph.hpp"
#include "springembed/random.hpp"
#include "springembed/spectral.hpp"

#include <benchmark/benchmark.h>

namespace se = springembed;

namespace {

se::SchurOperator productOperator(int k, int ell)
{
    const se::ProductGraph pg = se::buildProductGraph(k, ell, false);
    return se::SchurOperator(se::blockPartition(pg.graph, pg.boundary));
}

void BM_ApplySchur(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const se::SchurOperator op = productOperator(k, k / 4);
    se::Rng rng = se::substream(1, 0);
    const Eigen::VectorXd x = se::meanZeroNormalVector(rng, k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(op.apply(x));
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(k) * (k / 4));
}
BENCHMARK(BM_ApplySchur)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_ApplySchurInverse(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const se::SchurOperator op = productOperator(k, k / 4);
    se::Rng rng = se::substream(2, 0);
    const Eigen::VectorXd x = se::meanZeroNormalVector(rng, k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(op.applyInverse(x));
    }
}
BENCHMARK(BM_ApplySchurInverse)->RangeMultiplier(2)->Range(32, 256);

void BM_BuildSchur(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const se::ProductGraph pg = se::buildProductGraph(k, k / 4, false);
    for (auto _ : state) {
        se::SchurOperator op(se::blockPartition(pg.graph, pg.boundary));
        benchmark::DoNotOptimize(op);
    }
}
BENCHMARK(BM_BuildSchur)->RangeMultiplier(2)->Range(32, 256);

}  // namespace
