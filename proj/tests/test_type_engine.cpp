#include "doctest.h"

#include "shabat/network.hpp"
#include "shabat/quasi_isometry.hpp"
#include "shabat/speiser.hpp"
#include "shabat/trees.hpp"
#include "shabat/type_engine.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace shabat;

namespace {

using Adj = std::vector<std::vector<Vertex>>;

std::vector<std::uint32_t> all_edges(const RotationGraph& g) {
	std::vector<std::uint32_t> out(g.edge_count());
	std::iota(out.begin(), out.end(), 0u);
	return out;
}

RotationGraph path_graph(std::size_t n) {
	Adj adj(n);
	for (Vertex v = 0; v + 1 < n; ++v) {
		adj[v].push_back(v + 1);
		adj[v + 1].push_back(v);
	}
	return build_graph(n, adj);
}

/// k parallel edges between each pair of consecutive vertices of a path.
RotationGraph bundle_chain(std::size_t n, std::size_t k) {
	Adj adj(n);
	for (Vertex v = 0; v + 1 < n; ++v)
		for (std::size_t i = 0; i < k; ++i) {
			adj[v].push_back(v + 1);
			adj[v + 1].insert(adj[v + 1].begin(), v);
		}
	return build_graph(n, adj);
}

/// w x h grid, vertex (x, y) = y * w + x, neighbours listed east, north, west, south.
RotationGraph grid(std::size_t w, std::size_t h) {
	Adj adj(w * h);
	for (std::size_t y = 0; y < h; ++y)
		for (std::size_t x = 0; x < w; ++x) {
			auto& a = adj[y * w + x];
			if (x + 1 < w) a.push_back(static_cast<Vertex>(y * w + x + 1));
			if (y + 1 < h) a.push_back(static_cast<Vertex>((y + 1) * w + x));
			if (x > 0) a.push_back(static_cast<Vertex>(y * w + x - 1));
			if (y > 0) a.push_back(static_cast<Vertex>((y - 1) * w + x));
		}
	return build_graph(w * h, adj);
}

SpeiserGraph exact_speiser(const TreeFamily& family, std::uint32_t radius) {
	for (std::uint32_t T = radius + 2;; T += 4) {
		SpeiserGraph s = triangulate_and_dualize(family.generate(T));
		if (exact_radius_of(s.graph, s.root) > radius) return s;
		REQUIRE(T < 4 * radius + 16);
	}
}

double resistance(const RotationGraph& g, Vertex a, Vertex b) {
	const Vertex A[] = {a}, B[] = {b};
	return effective_resistance(EdgeNetwork(g), A, B);
}

}  // namespace

TEST_CASE("exact network laws") {
	for (std::size_t n : {2u, 3u, 8u, 40u}) CHECK(resistance(path_graph(n), 0, n - 1) == doctest::Approx(n - 1.0).epsilon(1e-12));
	for (std::size_t k : {1u, 2u, 5u}) CHECK(resistance(bundle_chain(2, k), 0, 1) == doctest::Approx(1.0 / k).epsilon(1e-12));
	const RotationGraph c4 = build_graph(4, Adj{{1, 3}, {2, 0}, {3, 1}, {0, 2}});
	CHECK(resistance(c4, 0, 1) == doctest::Approx(0.75).epsilon(1e-12));
	CHECK(resistance(c4, 0, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("effective resistance agrees with dense elimination") {
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 60; ++trial) {
		const RotationGraph g = testing::add_random_chords(testing::random_tree(2 + rng() % 25, rng), rng() % 20, rng);
		const Vertex a = static_cast<Vertex>(rng() % g.vertex_count());
		Vertex b = static_cast<Vertex>(rng() % g.vertex_count());
		if (a == b) b = (a + 1) % static_cast<Vertex>(g.vertex_count());
		std::vector<Vertex> A{a}, B{b};
		const Vertex c = static_cast<Vertex>(rng() % g.vertex_count());
		if (c != a && c != b) B.push_back(c);
		const double oracle = testing::dense_resistance(g, all_edges(g), A, B);
		CHECK(effective_resistance(EdgeNetwork(g), A, B) == doctest::Approx(oracle).epsilon(1e-9));
		CHECK(effective_resistance_on(EdgeNetwork(g), all_edges(g), A, B) == doctest::Approx(oracle).epsilon(1e-9));
	}
}

TEST_CASE("Rayleigh monotonicity") {
	std::mt19937_64 rng(9);
	for (int trial = 0; trial < 100; ++trial) {
		const RotationGraph g = testing::add_random_chords(testing::random_tree(3 + rng() % 20, rng), 1 + rng() % 15, rng);
		const Vertex A[] = {0};
		const Vertex B[] = {static_cast<Vertex>(g.vertex_count() - 1)};
		const double base = effective_resistance(EdgeNetwork(g), A, B);
		std::vector<std::uint32_t> edges = all_edges(g);
		edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(rng() % edges.size()));
		CHECK(effective_resistance_on(EdgeNetwork(g), edges, A, B) >= base - 1e-12);
		std::vector<double> cond(g.edge_count(), 1.0);
		cond[rng() % cond.size()] = 1.0 + static_cast<double>(rng() % 100) / 10.0;
		CHECK(effective_resistance(EdgeNetwork(g, cond), A, B) <= base + 1e-12);
	}
}

TEST_CASE("disconnected sets have infinite resistance") {
	const RotationGraph p = path_graph(4);
	const Vertex A[] = {0}, B[] = {3};
	const std::uint32_t edges[] = {0, 2};
	CHECK(std::isinf(effective_resistance_on(EdgeNetwork(p), edges, A, B)));
}

TEST_CASE("modulus of annuli") {
	SUBCASE("parallel edges") {
		const RotationGraph g = bundle_chain(2, 4);
		const Annulus a{all_edges(g), {0}, {1}};
		CHECK(modulus_of_annulus(EdgeNetwork(g), a) == doctest::Approx(4.0).epsilon(1e-12));
	}
	SUBCASE("grid: centre to outer ring matches the chain program") {
		const RotationGraph g = grid(5, 5);
		std::vector<Vertex> ring;
		for (Vertex v = 0; v < 25; ++v)
			if (v % 5 == 0 || v % 5 == 4 || v / 5 == 0 || v / 5 == 4) ring.push_back(v);
		std::vector<std::uint32_t> edges;
		for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
			const Vertex u = g.origin(2 * e), v = g.head(2 * e);
			const bool ru = std::find(ring.begin(), ring.end(), u) != ring.end();
			const bool rv = std::find(ring.begin(), ring.end(), v) != ring.end();
			if (!(ru && rv)) edges.push_back(e);
		}
		const Annulus a{edges, {12}, ring};
		CHECK_NOTHROW(validate_annulus(g, a));
		const double qp = testing::qp_modulus(g.edge_count(), testing::enumerate_chains(g, edges, {12}, ring));
		CHECK(modulus_of_annulus(EdgeNetwork(g), a) == doctest::Approx(qp).epsilon(1e-6));
		CHECK(qp == doctest::Approx(1.0 / testing::dense_resistance(g, edges, {12}, ring)).epsilon(1e-6));
	}
	SUBCASE("annulus that does not separate is rejected") {
		const RotationGraph c4 = build_graph(4, Adj{{1, 3}, {2, 0}, {3, 1}, {0, 2}});
		CHECK_THROWS_AS(validate_annulus(c4, Annulus{{0}, {0}, {1}}), Error);
	}
}

TEST_CASE("width-one annuli on a path") {
	const RotationGraph p = path_graph(10);
	const auto annuli = width_one_annuli(p, 0, 0, 5);
	REQUIRE(annuli.size() == 6);
	for (const Annulus& a : annuli) CHECK(a.edges.size() == 1);
}

TEST_CASE("trend classification") {
	const std::vector<double> scale{16, 32, 64, 128};
	const Thresholds th;
	CHECK(classify_trend(scale, {1.0, 1.1, 1.2, 1.3}, th, true) == Verdict::Parabolic);
	CHECK(classify_trend(scale, {1.0, 1.1, 1.2, 1.24}, th, false) == Verdict::Inconclusive);
	CHECK(classify_trend(scale, {0.6, 0.66, 0.665, 0.666}, th, true) == Verdict::Hyperbolic);
	CHECK(classify_trend(scale, {0.6, 0.66, 0.665, 0.666}, th, false) == Verdict::Inconclusive);
	CHECK(classify_trend({16, 32}, {1.0, 5.0}, th, true) == Verdict::Inconclusive);
	CHECK_THROWS_AS(classify_trend(scale, {1.0}, th, true), Error);
	CHECK(std::string(verdict_name(Verdict::Parabolic)) == "parabolic-evidence");
}

TEST_CASE("nested annuli test") {
	SUBCASE("bundle chain diverges") {
		const RotationGraph g = bundle_chain(130, 3);
		std::vector<Annulus> annuli;
		for (Vertex v = 0; v + 1 < 130; ++v) {
			Annulus a{{}, {v}, {v + 1}};
			for (std::uint32_t i = 0; i < 3; ++i) a.edges.push_back(3 * v + i);
			annuli.push_back(a);
		}
		const TypeVerdict t = nested_annuli_test(EdgeNetwork(g), annuli, {16, 32, 64, 128});
		CHECK(t.verdict == Verdict::Parabolic);
		CHECK(t.trace.back() == doctest::Approx(128.0 / 3).epsilon(1e-9));
	}
	SUBCASE("binary tree shells converge") {
		const TreeTruncation t = TreeFamily::homogeneous(3).generate(12);
		const auto annuli = width_one_annuli(t.graph, t.root, 0, 11);
		const TypeVerdict v = nested_annuli_test(EdgeNetwork(t.graph), annuli, {3, 6, 9, 12});
		CHECK(v.verdict == Verdict::Inconclusive);
		for (std::size_t n = 0; n < v.series.size(); ++n) CHECK(v.series[n] == doctest::Approx(3.0 * std::pow(2.0, n)));
	}
	SUBCASE("overlapping annuli are rejected") {
		const RotationGraph p = path_graph(5);
		CHECK_THROWS_AS(nested_annuli_test(EdgeNetwork(p), {{{0}, {0}, {1}}, {{0}, {0}, {1}}}, {1}), Error);
	}
}

TEST_CASE("resistance to infinity") {
	SUBCASE("3-regular tree converges to 2/3") {
		const TreeTruncation t = TreeFamily::homogeneous(3).generate(20);
		const std::vector<std::uint32_t> depths{5, 10, 15, 20};
		const auto r = resistance_profile(t.graph, t.root, depths);
		for (std::size_t i = 0; i < depths.size(); ++i)
			CHECK(r[i] == doctest::Approx(2.0 / 3.0 * (1.0 - std::pow(2.0, -static_cast<double>(depths[i])))).epsilon(1e-9));
		CHECK(std::abs(r.back() - 2.0 / 3.0) < 1e-6);
		CHECK(resistance_to_infinity(t.graph, t.root, depths).verdict == Verdict::Hyperbolic);
	}
	SUBCASE("half-plane lattice diverges") {
		const RotationGraph g = grid(2 * 64 + 1, 65);
		const TypeVerdict v = resistance_to_infinity(g, 64, {8, 16, 32, 64});
		CHECK(v.verdict == Verdict::Parabolic);
	}
	SUBCASE("builder form") {
		const DepthBuilder build = [](std::uint32_t d) {
			const TreeTruncation t = TreeFamily::sine().generate(d + 1);
			return std::pair{t.graph, t.root};
		};
		const TypeVerdict v = resistance_to_infinity(build, {4, 8, 16, 32});
		// two parallel rays: R(d) = d / 2
		CHECK(v.trace.back() == doctest::Approx(16.0));
	}
}

TEST_CASE("Nevanlinna-Wittich counts") {
	const std::vector<std::uint32_t> checkpoints{16, 32, 64, 128};
	const TypeVerdict sine = nevanlinna_wittich(exact_speiser(TreeFamily::sine(), 128), checkpoints);
	CHECK(sine.verdict == Verdict::Parabolic);
	const TypeVerdict f8 = nevanlinna_wittich(exact_speiser(TreeFamily::growing_valence(), 128), checkpoints);
	CHECK(f8.verdict == Verdict::Parabolic);
	CHECK(f8.measure("max_s_over_n") <= 4.0);
	// accessible vertices of the 3-regular tree graph follow a Fibonacci recurrence from s(4) on
	const TypeVerdict hom = nevanlinna_wittich(exact_speiser(TreeFamily::homogeneous(3), 16), {2, 4, 8, 16});
	CHECK(hom.verdict == Verdict::Inconclusive);
	REQUIRE(hom.series.size() == 16);
	for (std::size_t n = 3; n < hom.series.size(); ++n) CHECK(hom.series[n] == hom.series[n - 1] + hom.series[n - 2]);
	CHECK_THROWS_AS(nevanlinna_wittich(triangulate_and_dualize(TreeFamily::sine().generate(4)), {64}), Error);
}

TEST_CASE("isoperimetric test") {
	SUBCASE("lattice has no better than square-root boundary") {
		const RotationGraph g = grid(61, 61);
		const TypeVerdict v = thomassen_isoperimetric(g, 30 * 61 + 30, {8, 16, 24});
		CHECK(v.verdict == Verdict::Inconclusive);
		CHECK(v.trace.back() < v.trace.front());
	}
	SUBCASE("3-regular tree has linear boundary") {
		const TreeTruncation t = TreeFamily::homogeneous(3).generate(12);
		IsoperimetricOptions o;
		o.epsilon = 0.5;
		const TypeVerdict v = thomassen_isoperimetric(t.graph, t.root, {5, 7, 9, 10}, o);
		CHECK(v.verdict == Verdict::Hyperbolic);
		CHECK(v.trace.back() > 0.3);
	}
	SUBCASE("frontier inside the radius is refused") {
		const TreeTruncation t = TreeFamily::homogeneous(3).generate(6);
		CHECK_THROWS_AS(thomassen_isoperimetric(t.graph, t.root, {6}), Error);
	}
}

TEST_CASE("totally ramified values") {
	CHECK(Rational(6, 4).str() == "3/2");
	CHECK(Rational(2, -4) == Rational(-1, 2));
	CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
	const RamificationResult h = totally_ramified_test({3, 3, kInfiniteMultiplicity});
	CHECK(h.defect_sum.str() == "7/3");
	CHECK(h.verdict == Verdict::Hyperbolic);
	CHECK(totally_ramified_test({2, 2}).defect_sum.str() == "1");
	const RamificationResult five = totally_ramified_test({2, 2, 2, 2, 2});
	CHECK(five.defect_sum.str() == "5/2");
	CHECK(five.verdict == Verdict::Hyperbolic);
	CHECK(totally_ramified_test({2, 2, kInfiniteMultiplicity}).verdict == Verdict::Inconclusive);
	CHECK_THROWS_AS(totally_ramified_test({1}), Error);
	CHECK(tree_multiplicities(TreeFamily::homogeneous(3).generate(4)) == std::vector<long>{3, 3, kInfiniteMultiplicity});
	CHECK(tree_multiplicities(TreeFamily::sine().generate(4)) ==
	      std::vector<long>{2, 2, kInfiniteMultiplicity});
}

TEST_CASE("sine pipeline") {
	const PipelineResult r = doyle_merenkov_pipeline(TreeFamily::sine(), 4, {8, 16, 32, 64});
	CHECK(r.combined.verdict == Verdict::Parabolic);
	CHECK(r.exact_radius >= 65);
	CHECK(r.max_modulus_ratio > 0);
	const PipelineResult sm = standard_model_pipeline(2, {8, 16, 32, 64});
	CHECK(sm.combined.verdict == Verdict::Parabolic);
	CHECK(sm.max_modulus_ratio <= 16.0);
}
