#pragma once

#include "shabat/rotation_graph.hpp"
#include "shabat/speiser.hpp"
#include "shabat/trees.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace shabat {

/// Vertex map between two graphs. Holds references: both graphs must
/// outlive the map. Distances are trusted only within the exact radii.
struct GraphMap {
	const RotationGraph* source = nullptr;
	const RotationGraph* target = nullptr;
	std::vector<Vertex> image;
	std::string name;
	Vertex source_root = 0;
	std::uint32_t source_exact = kUnreached;  // radius around source_root
	std::uint32_t target_exact = kUnreached;  // radius around image[source_root]
	/// Optional marks for a separately reported sub-part (the tree part).
	std::vector<bool> tree_part;
};

struct QIOptions {
	std::uint32_t sample_radius = 20;
	std::size_t exhaustive_limit = 200'000;  // ordered pairs checked exhaustively up to this
	std::size_t sample_pairs = 100'000;
	std::uint64_t seed = 1;
	bool force_exhaustive = false;
	std::vector<double> k_grid{1.0, 1.25, 1.5, 2.0, 3.0};
};

struct QIWitness {
	double k = 1.0;
	double C = 0.0;
	std::uint32_t epsilon = 0;  // every sampled target vertex lies within epsilon of the image
	std::size_t pairs = 0;
	bool exhaustive = true;
	std::pair<Vertex, Vertex> worst{kNone, kNone};  // pair attaining C at k = 1
	std::vector<std::pair<double, double>> grid;      // (k, minimal C)
	double tree_part_C = 0.0;                         // C at k = 1 over tree-part pairs
	std::size_t sample_size = 0;

	/// Minimal C on the grid for k; throws for k off the grid.
	double C_at(double k) const;
};

/// Distortion of the map on the source ball of the given radius.
QIWitness verify_qi(const GraphMap& m, const QIOptions& opt = {});

/// Largest branch of T minus its kernel (vertex count) over branches that
/// are fully generated.
std::uint32_t max_branch_size(const TreeTruncation& t, const Kernel& k);

/// Tree vertices go to their kernel parent; patch vertex (i, j) goes to
/// (pi(i), j) in the matching kernel patch, where pi(i) counts the kernel
/// darts among the first i darts of the contour walk.
/// ext_t = extend_tree(t), ext_k = extend_tree(kernel_truncation(t, k, &old_ids)).
GraphMap build_phi(const TreeTruncation& t, const Kernel& k, const std::vector<Vertex>& kernel_ids,
                   const ExtendedGraph& ext_t, const ExtendedGraph& ext_k);

/// Each dual vertex goes to the least vertex on the boundary of its face.
/// `dual` must be dual_graph(ext.graph, trace_faces(ext.graph)).
GraphMap dual_to_extension_map(const RotationGraph& dual, const ExtendedGraph& ext);

/// Hub (smallest subtree holding every kernel vertex of valence > 2) to the
/// center, rays isometrically onto rays, patches column by column.
GraphMap standard_model_map(const ExtendedGraph& ext_k, const ExtendedGraph& sigma);

/// Radius around root within which no artifact or frontier vertex occurs.
std::uint32_t exact_radius_of(const RotationGraph& g, Vertex root);

}  // namespace shabat
