#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "netmet/classify.hpp"
#include "netmet/hierarchy.hpp"
#include "netmet/ingest.hpp"
#include "netmet/metrics.hpp"

#include "scenarios.hpp"

using namespace netmet;

namespace {

PathSet ring_paths(std::size_t n) {
    return generate_topology(TopologyKind::ring_unidirectional, n).paths;
}

void BM_BuildRoutingMatrix(benchmark::State& state) {
    auto paths = ring_paths(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto A = build_routing_matrix(paths, WeightScheme::indicator());
        benchmark::DoNotOptimize(A.edge_count());
    }
}
BENCHMARK(BM_BuildRoutingMatrix)->Arg(16)->Arg(64);

void BM_PairwiseWeightedJaccard(benchmark::State& state) {
    auto A = build_routing_matrix(ring_paths(static_cast<std::size_t>(state.range(0))),
                                  WeightScheme::indicator());
    for (auto _ : state) {
        auto m = pairwise_matrix(A, MetricKind::weighted_jaccard, 1);
        benchmark::DoNotOptimize(m.values.data());
    }
}
BENCHMARK(BM_PairwiseWeightedJaccard)->Arg(16)->Arg(64);

void BM_SignatureMesh(benchmark::State& state) {
    auto paths = generate_topology(TopologyKind::mesh,
                                   static_cast<std::size_t>(state.range(0)))
                     .paths;
    unsigned threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        auto sig = signature(paths, WeightScheme::indicator(), 20, threads);
        benchmark::DoNotOptimize(sig.zero_count);
    }
}
BENCHMARK(BM_SignatureMesh)->Args({40, 1})->Args({40, 4})->Args({100, 4});

void BM_ParseAndAggregate(benchmark::State& state) {
    std::ostringstream log;
    cli::write_two_clusters_log(static_cast<std::size_t>(state.range(0)), log);
    const std::string text = log.str();
    for (auto _ : state) {
        std::istringstream in(text);
        auto parsed = parse_trace_log(in);
        auto result = aggregate_paths(parsed.records);
        benchmark::DoNotOptimize(result.first.size());
    }
}
BENCHMARK(BM_ParseAndAggregate)->Arg(10)->Arg(100);

void BM_Cluster(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(1.0, 20.0);
    EndpointDistanceMatrix D;
    for (std::size_t i = 0; i < n; ++i) D.endpoints.push_back("e" + std::to_string(i));
    D.values.assign(n * n, 0.0);
    D.symmetric = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            D.values[i * n + j] = D.values[j * n + i] = dist(rng);
    for (auto _ : state) {
        auto tree = agglomerative_cluster(D);
        benchmark::DoNotOptimize(tree.root);
    }
}
BENCHMARK(BM_Cluster)->Arg(28)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
