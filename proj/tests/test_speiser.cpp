#include "doctest.h"

#include "shabat/speiser.hpp"
#include "shabat/trees.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <map>

using namespace shabat;

namespace {

std::map<std::size_t, std::size_t> bounded_face_sizes(const SpeiserGraph& s) {
	std::map<std::size_t, std::size_t> out;
	for (const auto& f : s.faces)
		if (f.kind == FaceKind::Bounded) ++out[f.size()];
	return out;
}

void check_speiser_invariants(const TreeTruncation& t, const SpeiserGraph& s) {
	const RotationGraph& g = s.graph;
	CHECK(g.vertex_count() == 2 * t.graph.edge_count());
	for (Dart d = 0; d < g.dart_count(); ++d) CHECK(g.color(g.origin(d)) != g.color(g.head(d)));
	for (Vertex v = 0; v < g.vertex_count(); ++v)
		if (!g.has_flag(v, vflag::Artifact | vflag::Frontier)) CHECK(g.degree(v) == 3);
}

}  // namespace

TEST_CASE("single edge tree gives the theta graph") {
	const TreeTruncation t = TreeFamily::star(1).generate(1);
	REQUIRE(t.graph.edge_count() == 1);
	const SpeiserGraph s = triangulate_and_dualize(t);
	CHECK(s.graph.vertex_count() == 2);
	CHECK(s.graph.edge_count() == 3);
	CHECK(s.graph.color(0) != s.graph.color(1));
	CHECK(trace_faces(s.graph).size() == 3);
	for (const auto& f : s.faces) CHECK(f.size() == 2);
}

TEST_CASE("star(3): the center face has six darts") {
	const TreeTruncation t = TreeFamily::star(3).generate(1);
	const SpeiserGraph s = triangulate_and_dualize(t);
	check_speiser_invariants(t, s);
	CHECK(testing::euler_characteristic(s.graph) == 2);
	const auto center = std::find_if(s.faces.begin(), s.faces.end(), [&](const SpeiserFace& f) { return f.tree_vertex == t.root; });
	REQUIRE(center != s.faces.end());
	CHECK(center->size() == 6);
	CHECK(center->label == face_label::MinusOne);
	for (const auto& f : s.faces)
		if (f.tree_vertex != kNone && f.tree_vertex != t.root) {
			CHECK(f.size() == 2);
			CHECK(f.label == face_label::PlusOne);
		}
	// the face over infinity of a polynomial: one closed walk around the tree
	CHECK(s.unbounded_face_count() == 1);
}

TEST_CASE("finite trees: Euler formula and valence 3") {
	for (int k = 1; k <= 6; ++k) {
		const TreeTruncation t = TreeFamily::star(k).generate(1);
		const SpeiserGraph s = triangulate_and_dualize(t);
		check_speiser_invariants(t, s);
		CHECK(testing::euler_characteristic(s.graph) == 2);
		// one face per tree vertex plus the face over infinity
		CHECK(s.faces.size() == t.vertex_count() + 1);
	}
}

TEST_CASE("sine ladder") {
	const TreeTruncation t = TreeFamily::sine().generate(10);
	const SpeiserGraph s = triangulate_and_dualize(t);
	check_speiser_invariants(t, s);
	CHECK(s.unbounded_face_count() == 2);
	const auto sizes = bounded_face_sizes(s);
	REQUIRE(sizes.size() == 1);
	CHECK(sizes.begin()->first == 4);
	CHECK(sizes.begin()->second == t.vertex_count() - 2);
	// labels alternate along the path
	for (const auto& f : s.faces)
		if (f.tree_vertex != kNone)
			CHECK(f.label == (t.graph.color(f.tree_vertex) == Color::Circle ? face_label::MinusOne : face_label::PlusOne));
}

TEST_CASE("tree-derived graphs on all families") {
	for (const TreeFamily& f : {TreeFamily::figure_one(), TreeFamily::growing_valence(), TreeFamily::caterpillar(2),
	                            TreeFamily::standard_model_tree(3), TreeFamily::coscos(), TreeFamily::homogeneous(3)}) {
		CAPTURE(f.describe());
		const TreeTruncation t = f.generate(6);
		const SpeiserGraph s = triangulate_and_dualize(t);
		check_speiser_invariants(t, s);
		CHECK(s.unbounded_face_count() == unbounded_face_count(t));
		// every bounded face belongs to a settled tree vertex and has 2 deg darts
		for (const auto& face : s.faces)
			if (face.kind == FaceKind::Bounded) CHECK(face.size() == 2 * t.graph.degree(face.tree_vertex));
	}
}

TEST_CASE("lattice patch counts") {
	const std::uint32_t m = 6, h = 4, p = 3;
	std::vector<std::vector<Vertex>> adj(m + 1);
	for (Vertex i = 0; i < m; ++i) {
		adj[i].push_back(i + 1);
		adj[i + 1].push_back(i);
	}
	const RotationGraph base = build_graph(m + 1, adj);
	GlueWalk w;
	for (Vertex i = 0; i < m; ++i)
		for (Dart d : base.darts_at(i))
			if (base.head(d) == i + 1) w.darts.push_back(d);
	ExtendOptions opt;
	opt.height = h;
	opt.pad = p;
	const ExtendedGraph x = glue_patches(base, {w}, 0, opt);
	CHECK(x.graph.vertex_count() == (m + 2 * p + 1) * (h + 1));
	CHECK(x.graph.edge_count() == (m + 2 * p) * (h + 1) + (m + 2 * p + 1) * h);
	REQUIRE(x.patches.size() == 1);
	const Patch& patch = x.patches[0];
	for (std::uint32_t c = 0; c <= m; ++c) CHECK(patch.at(static_cast<std::int32_t>(c), 0) == c);
	for (Vertex v = 0; v < x.graph.vertex_count(); ++v) {
		const bool interior = x.row[v] > 0 && x.row[v] < h && x.col[v] > patch.col_min && x.col[v] < patch.col_max;
		if (interior) CHECK(x.graph.degree(v) == 4);
	}
	CHECK(testing::euler_characteristic(x.graph) == 2);
	CHECK(x.exact_radius() > 0);
}

TEST_CASE("extensions") {
	SUBCASE("sine: two half-planes") {
		const SpeiserGraph s = triangulate_and_dualize(TreeFamily::sine().generate(12));
		ExtendOptions opt;
		opt.height = opt.pad = 6;
		const ExtendedGraph x = extend(s, opt);
		CHECK(x.patches.size() == 2);
		for (Vertex v = 0; v < s.graph.vertex_count(); ++v) CHECK(x.graph.label(v).color == s.graph.label(v).color);
		CHECK(testing::euler_characteristic(x.graph) == 2);
	}
	SUBCASE("fig12 Gamma_4: bounded faces untouched") {
		const SpeiserGraph s = triangulate_and_dualize(TreeFamily::hyperbolic_branches(2).generate(10));
		for (const auto& f : s.faces)
			if (f.kind == FaceKind::Bounded) CHECK(f.size() <= 6);
		ExtendOptions opt;
		opt.n = 4;
		opt.height = opt.pad = 5;
		const ExtendedGraph x = extend(s, opt);
		CHECK(x.patches.size() == 2);
	}
	SUBCASE("star(3): the face over infinity gets one cylinder") {
		const SpeiserGraph s = triangulate_and_dualize(TreeFamily::star(3).generate(1));
		ExtendOptions opt;
		opt.height = opt.pad = 3;
		const ExtendedGraph x = extend(s, opt);
		REQUIRE(x.patches.size() == 1);
		CHECK(x.patches[0].shape == Patch::Shape::HalfCylinder);
		CHECK(testing::euler_characteristic(x.graph) == 2);
	}
	SUBCASE("Gamma_n patches large bounded faces") {
		const SpeiserGraph s = triangulate_and_dualize(TreeFamily::growing_valence().generate(9));
		ExtendOptions opt;
		opt.n = 3;
		opt.height = opt.pad = 3;
		std::size_t big = 0;
		for (const auto& f : s.faces)
			if (f.kind == FaceKind::Bounded && f.size() >= 6) ++big;
		REQUIRE(big > 0);
		CHECK(extend(s, opt).patches.size() == 2 + big);
	}
	SUBCASE("exactness grows with the options") {
		const TreeTruncation t = TreeFamily::caterpillar(1).generate(30);
		const ExtendedGraph x = extend_tree(t, options_for_radius(8));
		CHECK(x.exact_radius() >= 8);
		CHECK(testing::euler_characteristic(x.graph) == 2);
	}
}

TEST_CASE("standard models") {
	for (int n = 1; n <= 4; ++n) {
		CAPTURE(n);
		const ExtendedGraph sigma = standard_model(n, 8, 8);
		CHECK(sigma.patches.size() == static_cast<std::size_t>(n));
		CHECK(testing::euler_characteristic(sigma.graph) == 2);
		for (Vertex v = 0; v < sigma.graph.vertex_count(); ++v)
			if (!sigma.graph.has_flag(v, vflag::Artifact | vflag::Frontier) && v != sigma.root)
				CHECK(sigma.graph.degree(v) == 4);
		CHECK(sigma.graph.degree(sigma.root) == static_cast<std::size_t>(2 * n));
	}
}

TEST_CASE("face collapse") {
	SUBCASE("one critical point, four ends: four-ray star") {
		const SpeiserGraph s = testing::four_end_pattern(5);
		CHECK(bounded_face_sizes(s)[4] == 1);
		// the four ends share the outer face of the truncation
		CHECK(s.unbounded_face_count() == 1);
		std::size_t ends = 0;
		for (Vertex v = 0; v < s.graph.vertex_count(); ++v) ends += s.graph.has_flag(v, vflag::Frontier);
		CHECK(ends == 4);
		const TreeTruncation t = collapse_faces(s);
		CHECK(testing::planar_isomorphic(t.graph, TreeFamily::standard_model_tree(4).generate(11).graph));
	}
	SUBCASE("no critical points, three ends: three-ray star") {
		const SpeiserGraph s = testing::three_end_pattern(4);
		const auto sizes = bounded_face_sizes(s);
		for (const auto& [size, count] : sizes) CHECK(size == 2);
		const TreeTruncation t = collapse_faces(s);
		CHECK(testing::planar_isomorphic(t.graph, TreeFamily::standard_model_tree(3).generate(9).graph));
	}
	SUBCASE("theta graph collapses to a single edge") {
		const TreeTruncation t = collapse_faces(triangulate_and_dualize(TreeFamily::star(1).generate(1)));
		CHECK(t.vertex_count() == 2);
	}
}
