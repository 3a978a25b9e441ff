#include "doctest.h"

#include "shabat/graph_io.hpp"
#include "shabat/rotation_graph.hpp"
#include "shabat/trees.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace shabat;

namespace {

RotationGraph four_cycle() { return build_graph(4, std::vector<std::vector<Vertex>>{{1, 3}, {2, 0}, {3, 1}, {0, 2}}); }

RotationGraph theta() { return build_graph(2, std::vector<std::vector<Vertex>>{{1, 1, 1}, {0, 0, 0}}); }

std::vector<std::size_t> sorted_face_sizes(const RotationGraph& g) {
	std::vector<std::size_t> out;
	for (const auto& f : trace_faces(g).faces) out.push_back(f.size());
	std::sort(out.begin(), out.end());
	return out;
}

}  // namespace

TEST_CASE("single edge") {
	const RotationGraph g = build_graph(2, std::vector<std::vector<Vertex>>{{1}, {0}});
	CHECK(g.vertex_count() == 2);
	CHECK(g.dart_count() == 2);
	const FaceSet fs = trace_faces(g);
	REQUIRE(fs.size() == 1);
	CHECK(fs.faces[0].size() == 2);
}

TEST_CASE("four-cycle") {
	const RotationGraph g = four_cycle();
	CHECK(g.dart_count() == 8);
	for (Dart d = 0; d < g.dart_count(); ++d) CHECK(g.rotate(g.rotate(d)) == d);
	CHECK(sorted_face_sizes(g) == std::vector<std::size_t>{4, 4});
	const RotationGraph dual = dual_graph(g, trace_faces(g));
	CHECK(dual.vertex_count() == 2);
	CHECK(dual.edge_count() == 4);
	for (Dart d = 0; d < dual.dart_count(); ++d) CHECK(dual.origin(d) != dual.head(d));
}

TEST_CASE("theta graph and its dual triangle") {
	const RotationGraph g = theta();
	CHECK(sorted_face_sizes(g) == std::vector<std::size_t>{2, 2, 2});
	const RotationGraph dual = dual_graph(g, trace_faces(g));
	CHECK(dual.vertex_count() == 3);
	CHECK(dual.edge_count() == 3);
	for (Vertex v = 0; v < 3; ++v) CHECK(dual.degree(v) == 2);
	CHECK(sorted_face_sizes(dual) == std::vector<std::size_t>{3, 3});
}

TEST_CASE("malformed adjacency is rejected") {
	CHECK_THROWS_AS(build_graph(2, std::vector<std::vector<Vertex>>{{1}, {}}), Error);
	CHECK_THROWS_AS(build_graph(3, std::vector<std::vector<Vertex>>{{1}, {0}, {}}), Error);
	CHECK_THROWS_AS(build_graph(2, std::vector<std::vector<Vertex>>{{5}, {0}}), Error);
}

TEST_CASE("word distance") {
	const RotationGraph path = build_graph(8, std::vector<std::vector<Vertex>>{
	                                              {1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 7}, {6}});
	CHECK(word_distance(path, 3, 3) == 0);
	CHECK(word_distance(path, 0, 7) == 7);
	CHECK_THROWS_AS(word_distance(path, 0, 9), Error);

	// leaves at depth 4 below different children of the root
	const TreeTruncation t = TreeFamily::homogeneous(3).generate(4);
	auto top = [&](Vertex v) {
		while (t.level[v] > 1) v = t.parent[v];
		return v;
	};
	Vertex a = kNone, b = kNone;
	for (Vertex v = 0; v < t.vertex_count() && b == kNone; ++v) {
		if (t.level[v] != 4) continue;
		if (a == kNone) a = v;
		else if (top(v) != top(a)) b = v;
	}
	REQUIRE(b != kNone);
	CHECK(word_distance(t.graph, a, b) == 8);
}

TEST_CASE("bfs agrees with Floyd-Warshall on random planar graphs") {
	std::mt19937_64 rng(7);
	for (int trial = 0; trial < 30; ++trial) {
		const RotationGraph g = testing::add_random_chords(testing::random_tree(3 + rng() % 20, rng), rng() % 15, rng);
		const auto fw = testing::floyd_warshall(g);
		for (Vertex s = 0; s < g.vertex_count(); ++s) {
			const Vertex src[] = {s};
			const auto d = bfs_distances(g, src);
			for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(d[v] == fw[s][v]);
		}
	}
}

TEST_CASE("Euler formula and dual involution on random planar graphs") {
	std::mt19937_64 rng(11);
	for (int trial = 0; trial < 50; ++trial) {
		const RotationGraph g = testing::add_random_chords(testing::random_tree(2 + rng() % 30, rng), rng() % 25, rng);
		CHECK(testing::euler_characteristic(g) == 2);
		const FaceSet fs = trace_faces(g);
		const RotationGraph dual = dual_graph(g, fs);
		CHECK(dual.vertex_count() == fs.size());
		CHECK(testing::euler_characteristic(dual) == 2);
		const RotationGraph dd = dual_graph(dual, trace_faces(dual));
		CHECK(dd.vertex_count() == g.vertex_count());
		CHECK(dd.edge_count() == g.edge_count());
		// same edge ids: the double dual has the same degree sequence and face sizes
		std::vector<std::size_t> dg, ddg;
		for (Vertex v = 0; v < g.vertex_count(); ++v) dg.push_back(g.degree(v));
		for (Vertex v = 0; v < dd.vertex_count(); ++v) ddg.push_back(dd.degree(v));
		std::sort(dg.begin(), dg.end());
		std::sort(ddg.begin(), ddg.end());
		CHECK(dg == ddg);
		CHECK(sorted_face_sizes(g) == sorted_face_sizes(dd));
	}
}

TEST_CASE("text format round trip is exact") {
	std::mt19937_64 rng(3);
	for (int trial = 0; trial < 20; ++trial) {
		const RotationGraph g = testing::add_random_chords(testing::random_tree(2 + rng() % 20, rng), rng() % 10, rng);
		const ParsedGraph p = parse_text(to_text(g, "random"));
		CHECK(p.name == "random");
		CHECK(p.graph == g);
		CHECK(to_text(p.graph, "random") == to_text(g, "random"));
	}
	// parallel edges need the explicit dart pairing
	const RotationGraph t = theta();
	CHECK(parse_text(to_text(t, "theta")).graph == t);
}

TEST_CASE("text format records, comments and errors") {
	const ParsedGraph p = parse_text("// a path\ngraph p 3\nv 0 1 circle\nv 1 0 2 cross frontier\nv 2 1 circle\nroot 1\nrays 0 2\n");
	CHECK(p.graph.vertex_count() == 3);
	CHECK(p.graph.color(1) == Color::Cross);
	CHECK(p.graph.has_flag(1, vflag::Frontier));
	CHECK(p.records.at("root") == std::vector<std::uint32_t>{1});
	CHECK(p.records.at("rays") == std::vector<std::uint32_t>{0, 2});
	CHECK_THROWS_AS(parse_text("graph p 2\nv 0 1\n"), Error);
	CHECK_THROWS_AS(parse_text("graph p 2\nv 0 1\nv 1 0 sparkly\n"), Error);
	CHECK_THROWS_AS(parse_text("v 0 1\n"), Error);
}

TEST_CASE("dot output marks colors") {
	const TreeTruncation t = TreeFamily::sine().generate(2);
	const std::string dot = to_dot(t.graph, "sine");
	CHECK(dot.find("graph") != std::string::npos);
	CHECK(dot.find("circle") != std::string::npos);
	CHECK(dot == to_dot(t.graph, "sine"));
}

TEST_CASE("close_frontier adds one ideal vertex and stays planar") {
	const TreeTruncation t = TreeFamily::standard_model_tree(4).generate(5);
	const RotationGraph c = close_frontier(t.graph);
	CHECK(c.vertex_count() == t.vertex_count() + 1);
	CHECK(c.has_flag(c.vertex_count() - 1, vflag::Ideal));
	CHECK(c.degree(c.vertex_count() - 1) == 4);
	CHECK(testing::euler_characteristic(c) == 2);
	CHECK(trace_faces(c).size() == 4);
}

TEST_CASE("induced subgraph keeps restricted rotations") {
	const RotationGraph g = four_cycle();
	const Vertex keep[] = {0, 1, 2};
	const RotationGraph h = induced_subgraph(g, keep);
	CHECK(h.vertex_count() == 3);
	CHECK(h.edge_count() == 2);
	CHECK(h.degree(1) == 2);
}
