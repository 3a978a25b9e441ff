#pragma once

#include "shabat/rotation_graph.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shabat {

/// Finite radius-R ball of an infinite planar tree.
///
/// Vertices carry the Frontier flag when the generator has pending edges for
/// them, and additionally Ray when the continuation beyond them is infinite.
/// The root is colored Circle and colors alternate along edges.
struct TreeTruncation {
	RotationGraph graph;
	std::uint32_t depth = 0;
	Vertex root = 0;
	std::vector<Vertex> parent;        // kNone at the root
	std::vector<std::uint32_t> level;  // distance from the root

	std::size_t vertex_count() const { return graph.vertex_count(); }
	bool is_frontier(Vertex v) const { return graph.has_flag(v, vflag::Frontier); }
	bool is_ray(Vertex v) const { return graph.has_flag(v, vflag::Ray); }
	std::vector<Vertex> frontier() const;
	std::vector<Vertex> rays() const;

	/// Wraps an explicit tree; parents and levels come from a BFS at root.
	static TreeTruncation from_graph(RotationGraph g, Vertex root);
};

/// Builtin or explicit description of an infinite planar tree. generate(R) is
/// deterministic and monotone: the radius-R ball of generate(R + 1) equals
/// generate(R) with identical ids and rotations.
class TreeFamily {
public:
	enum class Kind {
		Sine,
		Homogeneous,
		Star,
		Caterpillar,
		FigureOne,
		GrowingValence,
		UnboundedDistance,
		HyperbolicBranches,
		Sutter,
		CosCos,
		StandardModelTree,
		CosSqrt,
		Explicit,
	};

	static TreeFamily sine();
	static TreeFamily homogeneous(int valence);
	static TreeFamily star(int leaves);
	static TreeFamily caterpillar(int teeth);
	/// Spine with small finite branches of three shapes (distance to kernel <= 2).
	static TreeFamily figure_one();
	/// Spine vertex 2k carries |k| leaves on each side.
	static TreeFamily growing_valence();
	/// Spine vertex 2k carries a path of length |k| on each side.
	static TreeFamily unbounded_distance();
	/// Spine vertex k != 0 carries, on one side, a path of length base^|k|.
	static TreeFamily hyperbolic_branches(int base = 2);
	/// Spine vertex 2^j carries 2^j leaves on one side.
	static TreeFamily sutter();
	/// Real axis with a vertical bi-infinite path through every other vertex.
	static TreeFamily coscos();
	static TreeFamily standard_model_tree(int ends);
	/// Semi-infinite path rooted at its endpoint.
	static TreeFamily cos_sqrt();
	static TreeFamily explicit_tree(TreeTruncation t);

	/// Looks up a builtin by name ("sine", "homogeneous", "fig8", ...) with
	/// positional integer parameters.
	static TreeFamily from_name(const std::string& name, const std::vector<long>& params = {});
	static std::vector<std::string> builtin_names();

	Kind kind() const { return kind_; }
	const std::string& name() const { return name_; }
	long param() const { return param_; }
	/// Canonical `family <name> <params>` record.
	std::string describe() const;

	TreeTruncation generate(std::uint32_t depth) const;
	/// Vertex count of generate(depth), saturating at `cap`.
	std::uint64_t count_vertices(std::uint32_t depth, std::uint64_t cap = 1ull << 40) const;
	/// Largest depth <= max_depth whose truncation has at most `budget` vertices.
	std::uint32_t max_feasible_depth(std::uint32_t max_depth, std::uint64_t budget) const;

	static constexpr std::uint64_t kVertexBudget = 8'000'000;

private:
	TreeFamily(Kind kind, std::string name, long param) : kind_(kind), name_(std::move(name)), param_(param) {}

	Kind kind_;
	std::string name_;
	long param_ = 0;
	std::shared_ptr<const TreeTruncation> explicit_;
};

enum class KernelKind { BiInfiniteUnion, SemiInfinitePath };

struct Kernel {
	KernelKind kind = KernelKind::BiInfiniteUnion;
	std::vector<bool> contains;   // indexed by tree vertex
	std::vector<Vertex> vertices;  // ascending

	bool has(Vertex v) const { return contains[v]; }
};

Kernel kernel_of(const TreeTruncation& t);

/// The kernel as a truncation of its own, ids renumbered densely in
/// ascending order; `old_ids[i]` is the tree id of kernel vertex i.
TreeTruncation kernel_truncation(const TreeTruncation& t, const Kernel& k,
                                 std::vector<Vertex>* old_ids = nullptr);

struct KernelDistances {
	std::vector<std::uint32_t> distance;  // per vertex
	/// Vertices whose branch still contains frontier vertices; their distance
	/// can grow under deeper generation and they are excluded from max.
	std::vector<bool> censored;
	std::uint32_t max = 0;
	Vertex witness = kNone;
};

KernelDistances distance_to_kernel(const TreeTruncation& t, const Kernel& k);

/// Kernel vertex reached from v without re-entering the kernel.
std::vector<Vertex> parent_map(const TreeTruncation& t, const Kernel& k);

struct ComponentTrace {
	std::optional<std::uint32_t> count;  // empty when unstable
	std::vector<std::uint32_t> depths;
	std::vector<std::uint32_t> trace;
};

/// Unbounded faces of the truncation closure at a single depth.
std::uint32_t unbounded_face_count(const TreeTruncation& t);
ComponentTrace complementary_components(const TreeFamily& family, const std::vector<std::uint32_t>& depths);

struct TucReport {
	std::vector<std::uint32_t> depths;
	std::vector<std::uint32_t> valence_trace, component_trace, distance_trace;
	std::uint32_t B = 0, N = 0, M = 0;  // values at the last depth
	bool bounded_valence = false;       // (T1)
	bool finite_components = false;     // (T2)
	bool bounded_distance = false;      // (T3)
	Vertex valence_witness = kNone, distance_witness = kNone;
	std::optional<std::uint32_t> stability_depth;

	bool passes() const { return bounded_valence && finite_components && bounded_distance; }
};

TucReport check_tuc(const TreeFamily& family, const std::vector<std::uint32_t>& depths);

/// Maximal non-frontier valence and a vertex attaining it.
std::pair<std::uint32_t, Vertex> max_settled_valence(const TreeTruncation& t);

}  // namespace shabat
