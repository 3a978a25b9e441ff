#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shabat {

using Vertex = std::uint32_t;
using Dart = std::uint32_t;

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Raised on malformed input or violated preconditions.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

enum class Color : std::uint8_t { None = 0, Circle = 1, Cross = 2 };

/// Per-vertex flag bits.
namespace vflag {
inline constexpr std::uint8_t Frontier = 1;  // pending edges beyond the truncation
inline constexpr std::uint8_t Ray = 2;       // frontier whose continuation is infinite
inline constexpr std::uint8_t Lattice = 4;   // patch vertex of an extension
inline constexpr std::uint8_t Artifact = 8;  // neighborhood differs from the infinite object
inline constexpr std::uint8_t Ideal = 16;    // vertex added by truncation closure
}  // namespace vflag

struct VertexLabel {
	Color color = Color::None;
	std::uint8_t flags = 0;
	bool operator==(const VertexLabel&) const = default;
};

/// A connected graph embedded in the plane as a rotation system.
///
/// Edge e owns darts 2e and 2e+1, so twin(d) = d ^ 1. The darts at each vertex
/// are stored in counter-clockwise order. Faces are the orbits of
/// face_next(d) = rotate(twin(d)); a traced face lies to the right of its darts.
/// Instances are immutable once built.
class RotationGraph {
public:
	RotationGraph() = default;

	std::size_t vertex_count() const { return labels_.size(); }
	std::size_t dart_count() const { return origin_.size(); }
	std::size_t edge_count() const { return origin_.size() / 2; }

	static constexpr Dart twin(Dart d) { return d ^ 1u; }
	static constexpr std::uint32_t edge_of(Dart d) { return d >> 1; }

	Vertex origin(Dart d) const { return origin_[d]; }
	Vertex head(Dart d) const { return origin_[twin(d)]; }

	/// Counter-clockwise successor of d around its origin.
	Dart rotate(Dart d) const {
		const Vertex v = origin_[d];
		std::uint32_t p = pos_[d] + 1;
		if (p == offset_[v + 1]) p = offset_[v];
		return ccw_[p];
	}
	Dart rotate_back(Dart d) const {
		const Vertex v = origin_[d];
		std::uint32_t p = pos_[d];
		p = (p == offset_[v] ? offset_[v + 1] : p) - 1;
		return ccw_[p];
	}
	Dart face_next(Dart d) const { return rotate(twin(d)); }

	std::span<const Dart> darts_at(Vertex v) const {
		return {ccw_.data() + offset_[v], offset_[v + 1] - offset_[v]};
	}
	std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }
	/// Index of d within the counter-clockwise list of its origin.
	std::size_t slot(Dart d) const { return pos_[d] - offset_[origin_[d]]; }

	const VertexLabel& label(Vertex v) const { return labels_[v]; }
	Color color(Vertex v) const { return labels_[v].color; }
	bool has_flag(Vertex v, std::uint8_t f) const { return (labels_[v].flags & f) != 0; }
	std::size_t max_degree() const;

	bool operator==(const RotationGraph&) const = default;

	/// Builds a rooted tree directly. parent[0] must be kNone; children of each
	/// vertex are placed counter-clockwise after the parent dart in ascending id
	/// order. Edge c-1 joins parent[c] and c, dart 2(c-1) leaving the parent.
	static RotationGraph from_parents(std::span<const Vertex> parent,
	                                  std::vector<VertexLabel> labels);

private:
	friend class GraphBuilder;
	void validate(bool allow_loops, bool require_connected) const;

	std::vector<std::uint32_t> offset_{0};
	std::vector<Dart> ccw_;
	std::vector<std::uint32_t> pos_;
	std::vector<Vertex> origin_;
	std::vector<VertexLabel> labels_;
};

/// Mutable construction site for a RotationGraph. Dart ids stay stable until
/// build(); removed edges are dropped and the survivors renumbered in order.
class GraphBuilder {
public:
	GraphBuilder() = default;
	explicit GraphBuilder(const RotationGraph& g);

	Vertex add_vertex(VertexLabel label = {});
	/// Appends both darts at the end of the counter-clockwise lists; returns
	/// the dart leaving u.
	Dart add_edge(Vertex u, Vertex v);
	void remove_edge(Dart d);
	/// Moves d so that it directly follows (precedes) ref around their
	/// common origin.
	void move_after(Dart d, Dart ref);
	void move_before(Dart d, Dart ref);
	/// Replaces the counter-clockwise order at v by a permutation of it.
	void set_rotation(Vertex v, std::vector<Dart> order);

	std::size_t vertex_count() const { return labels_.size(); }
	std::size_t dart_count() const { return origin_.size(); }
	Vertex origin(Dart d) const { return origin_[d]; }
	Vertex head(Dart d) const { return origin_[d ^ 1u]; }
	bool removed(Dart d) const { return removed_[d >> 1]; }
	const std::vector<Dart>& darts_at(Vertex v) const { return ccw_[v]; }
	VertexLabel& label(Vertex v) { return labels_[v]; }
	const VertexLabel& label(Vertex v) const { return labels_[v]; }

	void set_allow_loops(bool on) { allow_loops_ = on; }
	void set_require_connected(bool on) { require_connected_ = on; }

	/// old dart id -> new dart id (kNone for removed darts), valid after build().
	const std::vector<Dart>& dart_remap() const { return remap_; }
	RotationGraph build();

private:
	std::vector<std::vector<Dart>> ccw_;
	std::vector<Vertex> origin_;
	std::vector<bool> removed_;
	std::vector<VertexLabel> labels_;
	std::vector<Dart> remap_;
	bool allow_loops_ = false;
	bool require_connected_ = true;
};

/// A neighbour entry in a cyclic adjacency list. When dart is set it names the
/// dart leaving the listing vertex, which fixes the pairing of parallel edges.
struct NeighborRef {
	Vertex vertex = 0;
	Dart dart = kNone;
};

/// Builds a graph from per-vertex counter-clockwise neighbour lists.
/// Without explicit darts, the i-th listing of v at u pairs with the i-th
/// listing of u at v counted from the back, which keeps parallel edges planar.
RotationGraph build_graph(std::size_t vertex_count,
                          const std::vector<std::vector<NeighborRef>>& adjacency,
                          std::vector<VertexLabel> labels = {});
RotationGraph build_graph(std::size_t vertex_count,
                          const std::vector<std::vector<Vertex>>& adjacency);

struct FaceSet {
	std::vector<std::vector<Dart>> faces;
	std::vector<std::uint32_t> face_of_dart;
	std::vector<bool> touches_frontier;

	std::size_t size() const { return faces.size(); }
	std::size_t darts(std::size_t f) const { return faces[f].size(); }
};

FaceSet trace_faces(const RotationGraph& g);

/// Closes the truncation: one ideal vertex joined to every ray-frontier
/// vertex, each closing dart placed last in its vertex's rotation. Faces of
/// the closure that meet the ideal vertex are the unbounded-face candidates.
RotationGraph close_frontier(const RotationGraph& g);

/// Breadth-first distances from a set of sources; unreachable entries are
/// kUnreached.
std::vector<std::uint32_t> bfs_distances(const RotationGraph& g, std::span<const Vertex> sources,
                                         std::uint32_t max_distance = kUnreached);
std::uint32_t word_distance(const RotationGraph& g, Vertex u, Vertex v);

/// One dual vertex per face, one dual edge per primal edge (same edge id).
RotationGraph dual_graph(const RotationGraph& g, const FaceSet& faces);

/// Subgraph induced on `keep` (sorted ascending). Rotations are restricted and
/// new vertex i is keep[i]. The result need not be connected.
RotationGraph induced_subgraph(const RotationGraph& g, std::span<const Vertex> keep);

}  // namespace shabat
