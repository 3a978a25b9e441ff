#pragma once

#include "shabat/rotation_graph.hpp"
#include "shabat/trees.hpp"

#include <cstdint>
#include <vector>

namespace shabat {

enum class FaceKind : std::uint8_t {
	Bounded,     // complete face of the infinite graph
	Unbounded,   // open boundary walk of an unbounded face
	Incomplete,  // bounded in the infinite graph but cut by the truncation
};

/// Face labels of tree-derived graphs: the three singular values.
namespace face_label {
inline constexpr int Unknown = -1;
inline constexpr int MinusOne = 0;
inline constexpr int PlusOne = 1;
inline constexpr int Infinity = 2;
}  // namespace face_label

struct SpeiserFace {
	FaceKind kind = FaceKind::Bounded;
	int label = face_label::Unknown;
	/// Darts in face order (face to the right). Closed faces are cycles; open
	/// walks run between two truncation cuts.
	std::vector<Dart> darts;
	bool closed = true;
	Vertex tree_vertex = kNone;  // source tree vertex of +-1 faces
	/// For an open walk without darts: the dart after which patch edges go.
	Dart anchor = kNone;

	std::size_t size() const { return darts.size(); }
};

/// Bipartite graph of uniform valence q (frontier vertices excepted) together
/// with its faces.
struct SpeiserGraph {
	RotationGraph graph;
	std::uint32_t valence = 3;
	std::vector<SpeiserFace> faces;
	Vertex root = 0;
	/// For tree-derived graphs: the dart from the circle triangle to the cross
	/// triangle across tree edge e.
	std::vector<Dart> tree_edge_dart;

	std::size_t bounded_face_count() const;
	std::size_t unbounded_face_count() const;

	/// Wraps a hand-built graph. Faces meeting a frontier vertex are
	/// unbounded; the rest are bounded. Labels are left unknown.
	static SpeiserGraph from_graph(RotationGraph g, std::uint32_t valence, Vertex root = 0);
};

/// Triangulates the sphere by the tree and returns the dual graph, one vertex
/// per triangle. Triangles adjacent to frontier tree vertices carry the
/// Artifact flag; curves around ray-frontier leaves are cut, which opens the
/// outer face into one boundary walk per unbounded face.
SpeiserGraph triangulate_and_dualize(const TreeTruncation& t);

/// Rectangular lattice patch glued to a boundary walk x_0..x_m.
struct Patch {
	enum class Shape : std::uint8_t { HalfPlane, HalfCylinder };
	Shape shape = Shape::HalfPlane;
	std::size_t face = 0;  // index into the base face list
	std::vector<Vertex> boundary;
	std::int32_t col_min = 0, col_max = 0;  // inclusive; cylinders wrap
	std::uint32_t height = 0;
	std::vector<Vertex> ids;  // row-major from (col_min, 0); kNone when pruned

	Vertex at(std::int32_t col, std::uint32_t row) const;
	std::size_t width() const { return static_cast<std::size_t>(col_max - col_min + 1); }
};

struct ExtendOptions {
	/// Bounded faces with at least 2n darts receive half-cylinders; 0 means
	/// never (the n = infinity extension).
	std::uint32_t n = 0;
	std::uint32_t height = 8;
	/// Extra columns beyond each end of an open walk.
	std::uint32_t pad = 8;
	/// Only vertices within this lower-bound distance of the root are built;
	/// kNone builds full patches.
	std::uint32_t keep_radius = kNone;
	/// When set, the result must be exact up to this radius.
	std::uint32_t analysis_radius = 0;
};

struct ExtendedGraph {
	RotationGraph graph;
	std::size_t base_vertex_count = 0;  // base ids are preserved
	std::vector<Patch> patches;
	std::vector<std::uint32_t> patch_of;  // kNone for base vertices
	std::vector<std::int32_t> col;
	std::vector<std::uint32_t> row;
	Vertex root = 0;

	bool is_patch(Vertex v) const { return patch_of[v] != kNone; }
	/// Distance from the root to the nearest artifact vertex. Balls of smaller
	/// radius coincide with balls of the infinite object.
	std::uint32_t exact_radius() const;
};

/// Boundary walk to glue: x_i = origin(darts[i]); an open walk ends at the
/// head of its last dart.
struct GlueWalk {
	std::vector<Dart> darts;
	bool closed = false;
	std::size_t face = 0;
	Dart anchor = kNone;
	Vertex single = kNone;  // the vertex of an empty open walk
};

ExtendedGraph glue_patches(const RotationGraph& base, const std::vector<GlueWalk>& walks, Vertex root,
                           const ExtendOptions& opt);

ExtendedGraph extend(const SpeiserGraph& g, const ExtendOptions& opt);

/// Glues half-planes into the complementary components of a tree along its
/// contour, split at the ray-frontier leaves. A finite tree gets one
/// half-cylinder around its contour.
ExtendedGraph extend_tree(const TreeTruncation& t, const ExtendOptions& opt);

/// Open walks of the tree contour between consecutive ray leaves, starting at
/// the root's first dart.
std::vector<GlueWalk> tree_contour_walks(const TreeTruncation& t);

/// Smallest truncation options that make extend_tree exact up to `radius`.
ExtendOptions options_for_radius(std::uint32_t radius);

/// Contracts every bounded face to a vertex and merges parallel edges.
TreeTruncation collapse_faces(const SpeiserGraph& g);

/// N-ray star tree of the given depth with a half-plane in each wedge.
ExtendedGraph standard_model(int ends, std::uint32_t depth, std::uint32_t height);

}  // namespace shabat
