#pragma once

#include "shabat/rotation_graph.hpp"

#include <span>
#include <vector>

namespace shabat {

/// Graph with positive edge conductances (all 1 unless given). Holds a
/// reference: the graph must outlive the network.
class EdgeNetwork {
public:
	explicit EdgeNetwork(const RotationGraph& g, std::vector<double> conductance = {});

	const RotationGraph& graph() const { return *graph_; }
	double conductance(std::uint32_t edge) const { return conductance_.empty() ? 1.0 : conductance_[edge]; }
	bool unit() const { return conductance_.empty(); }

private:
	const RotationGraph* graph_;
	std::vector<double> conductance_;
};

/// Resistance between the vertex sets A and B, each contracted to a point.
/// Uses an exact recursion when the network is a tree and A is a single
/// vertex, a sparse Cholesky factorization for moderate sizes, and
/// preconditioned conjugate gradients beyond.
double effective_resistance(const EdgeNetwork& net, std::span<const Vertex> A, std::span<const Vertex> B);

/// Same, restricted to the listed edges. Components meeting neither A nor B
/// are ignored; returns +infinity when no edge path joins A to B.
double effective_resistance_on(const EdgeNetwork& net, std::span<const std::uint32_t> edges,
                               std::span<const Vertex> A, std::span<const Vertex> B);

/// Solver switch point: systems with more unknowns use the iterative path.
inline constexpr std::size_t kDirectSolveLimit = 400'000;

struct Annulus {
	std::vector<std::uint32_t> edges;
	std::vector<Vertex> inner, outer;
};

/// Throws unless removing the annulus edges disconnects inner from outer.
void validate_annulus(const RotationGraph& g, const Annulus& a);

/// Modulus of the family of edge chains in the annulus joining its two
/// boundaries, i.e. the reciprocal of their effective resistance.
double modulus_of_annulus(const EdgeNetwork& net, const Annulus& a);

/// Edges between the distance shells n and n+1 around root, n = first..last.
std::vector<Annulus> width_one_annuli(const RotationGraph& g, Vertex root, std::uint32_t first, std::uint32_t last);

}  // namespace shabat
