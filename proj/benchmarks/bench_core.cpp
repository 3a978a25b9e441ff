#include "shabat/network.hpp"
#include "shabat/speiser.hpp"
#include "shabat/trees.hpp"
#include "shabat/type_engine.hpp"

#include <benchmark/benchmark.h>

using namespace shabat;

namespace {

void BM_TreeGenerate(benchmark::State& state) {
	const TreeFamily f = TreeFamily::figure_one();
	const auto depth = static_cast<std::uint32_t>(state.range(0));
	for (auto _ : state) benchmark::DoNotOptimize(f.generate(depth));
	state.SetComplexityN(static_cast<benchmark::IterationCount>(f.count_vertices(depth)));
}
BENCHMARK(BM_TreeGenerate)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_SpeiserBuild(benchmark::State& state) {
	const TreeTruncation t = TreeFamily::figure_one().generate(static_cast<std::uint32_t>(state.range(0)));
	for (auto _ : state) benchmark::DoNotOptimize(triangulate_and_dualize(t));
	state.SetComplexityN(static_cast<benchmark::IterationCount>(t.vertex_count()));
}
BENCHMARK(BM_SpeiserBuild)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Extension(benchmark::State& state) {
	const auto radius = static_cast<std::uint32_t>(state.range(0));
	for (auto _ : state) benchmark::DoNotOptimize(build_exact_extension(TreeFamily::sine(), 0, radius));
}
BENCHMARK(BM_Extension)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_ResistanceSolve(benchmark::State& state) {
	const ExtendedGraph x = build_exact_extension(TreeFamily::sine(), 0, static_cast<std::uint32_t>(state.range(0)));
	const std::vector<std::uint32_t> depths{static_cast<std::uint32_t>(state.range(0))};
	for (auto _ : state) benchmark::DoNotOptimize(resistance_profile(x.graph, x.root, depths));
	state.counters["vertices"] = static_cast<double>(x.graph.vertex_count());
}
BENCHMARK(BM_ResistanceSolve)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_TreeResistance(benchmark::State& state) {
	const TreeTruncation t = TreeFamily::homogeneous(3).generate(static_cast<std::uint32_t>(state.range(0)));
	const std::vector<std::uint32_t> depths{static_cast<std::uint32_t>(state.range(0))};
	for (auto _ : state) benchmark::DoNotOptimize(resistance_profile(t.graph, t.root, depths));
	state.counters["vertices"] = static_cast<double>(t.vertex_count());
}
BENCHMARK(BM_TreeResistance)->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);

void BM_StandardModelPipeline(benchmark::State& state) {
	const std::vector<std::uint32_t> depths{16, 32, 64, 128};
	for (auto _ : state) benchmark::DoNotOptimize(standard_model_pipeline(static_cast<int>(state.range(0)), depths));
}
BENCHMARK(BM_StandardModelPipeline)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
