#include "shabat/network.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <deque>
#include <cmath>
#include <limits>

namespace shabat {

EdgeNetwork::EdgeNetwork(const RotationGraph& g, std::vector<double> conductance)
    : graph_(&g), conductance_(std::move(conductance)) {
	if (!conductance_.empty()) {
		if (conductance_.size() != g.edge_count()) throw Error("one conductance per edge required");
		for (double c : conductance_)
			if (!(c > 0.0) || !std::isfinite(c)) throw Error("conductances must be positive and finite");
	}
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum : std::uint8_t { kFree = 0, kSideA = 1, kSideB = 2 };

double solve(const EdgeNetwork& net, std::span<const std::uint32_t> edges, std::span<const Vertex> A,
             std::span<const Vertex> B, bool require_connected) {
	const RotationGraph& g = net.graph();
	const std::size_t n = g.vertex_count();
	if (A.empty() || B.empty()) throw Error("terminal sets must be nonempty");
	std::vector<std::uint8_t> side(n, kFree);
	for (Vertex a : A) {
		if (a >= n) throw Error("unknown vertex " + std::to_string(a));
		side[a] = kSideA;
	}
	for (Vertex b : B) {
		if (b >= n) throw Error("unknown vertex " + std::to_string(b));
		if (side[b] == kSideA) throw Error("terminal sets intersect at vertex " + std::to_string(b));
		side[b] = kSideB;
	}

	// adjacency restricted to the edge list
	std::vector<std::uint32_t> off(n + 1, 0);
	for (auto e : edges) {
		++off[g.origin(2 * e) + 1];
		++off[g.head(2 * e) + 1];
	}
	for (std::size_t v = 0; v < n; ++v) off[v + 1] += off[v];
	std::vector<std::uint32_t> inc(off.back());
	{
		std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
		for (auto e : edges) {
			inc[fill[g.origin(2 * e)]++] = e;
			inc[fill[g.head(2 * e)]++] = e;
		}
	}
	auto other = [&](std::uint32_t e, Vertex v) { return g.origin(2 * e) == v ? g.head(2 * e) : g.origin(2 * e); };

	// the part reachable from A carries all current
	std::vector<std::uint32_t> order;
	std::vector<Vertex> bfs_parent(n, kNone);
	std::vector<bool> seen(n, false);
	for (Vertex a : A)
		if (!seen[a]) {
			seen[a] = true;
			order.push_back(a);
		}
	bool reaches_b = false;
	std::size_t relevant_edges = 0;
	for (std::size_t i = 0; i < order.size(); ++i) {
		const Vertex v = order[i];
		reaches_b |= side[v] == kSideB;
		for (std::uint32_t p = off[v]; p < off[v + 1]; ++p) {
			const Vertex w = other(inc[p], v);
			++relevant_edges;
			if (seen[w]) continue;
			seen[w] = true;
			bfs_parent[w] = v;
			order.push_back(w);
		}
	}
	relevant_edges /= 2;
	if (!reaches_b) {
		if (require_connected) throw Error("graph is disconnected between the terminal sets");
		return kInf;
	}

	if (A.size() == 1 && relevant_edges + 1 == order.size()) {
		// tree: exact bottom-up series-parallel reduction
		std::vector<double> sum(n, 0.0);
		std::vector<double> res(n, kInf);
		for (std::size_t i = order.size(); i-- > 0;) {
			const Vertex v = order[i];
			if (side[v] == kSideB) res[v] = 0.0;
			else if (sum[v] > 0.0) res[v] = 1.0 / sum[v];
			const Vertex p = bfs_parent[v];
			if (p == kNone || res[v] == kInf) continue;
			double c = 0.0;
			for (std::uint32_t q = off[v]; q < off[v + 1]; ++q)
				if (other(inc[q], v) == p) c = net.conductance(inc[q]);
			sum[p] += 1.0 / (1.0 / c + res[v]);
		}
		return res[A[0]];
	}

	// Dirichlet problem: potential 1 on A, 0 on B
	std::vector<std::int64_t> idx(n, -1);
	std::int64_t m = 0;
	for (Vertex v : order)
		if (side[v] == kFree) idx[v] = m++;
	std::vector<Eigen::Triplet<double>> trip;
	Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
	double direct = 0.0;  // current over edges joining A to B
	std::vector<double> diag(static_cast<std::size_t>(m), 0.0);
	for (auto e : edges) {
		const Vertex u = g.origin(2 * e), v = g.head(2 * e);
		if (!seen[u]) continue;
		const double c = net.conductance(e);
		const std::uint8_t su = side[u], sv = side[v];
		if (su != kFree && sv != kFree) {
			if (su != sv) direct += c;
			continue;
		}
		if (su == kFree) diag[idx[u]] += c;
		if (sv == kFree) diag[idx[v]] += c;
		if (su == kFree && sv == kFree) {
			if (u == v) {
				diag[idx[u]] -= 2 * c;
				continue;
			}
			trip.emplace_back(idx[u], idx[v], -c);
			trip.emplace_back(idx[v], idx[u], -c);
		} else if (su == kSideA) {
			rhs[idx[v]] += c;
		} else if (sv == kSideA) {
			rhs[idx[u]] += c;
		}
	}
	double current = direct;
	if (m > 0) {
		for (std::int64_t i = 0; i < m; ++i) trip.emplace_back(i, i, diag[i]);
		Eigen::SparseMatrix<double> L(m, m);
		L.setFromTriplets(trip.begin(), trip.end());
		Eigen::VectorXd x;
		bool ok = false;
		if (static_cast<std::size_t>(m) <= kDirectSolveLimit) {
			Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
			if (ldlt.info() == Eigen::Success) {
				x = ldlt.solve(rhs);
				ok = ldlt.info() == Eigen::Success;
			}
		}
		if (!ok) {
			Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
			                         Eigen::IncompleteCholesky<double>>
			    cg;
			cg.setTolerance(1e-10);
			cg.setMaxIterations(static_cast<Eigen::Index>(10 * m + 1000));
			cg.compute(L);
			x = cg.solve(rhs);
			if (cg.info() != Eigen::Success) throw Error("linear solve did not converge");
		}
		for (auto e : edges) {
			const Vertex u = g.origin(2 * e), v = g.head(2 * e);
			if (!seen[u]) continue;
			if (side[u] == kSideA && side[v] == kFree) current += net.conductance(e) * (1.0 - x[idx[v]]);
			if (side[v] == kSideA && side[u] == kFree) current += net.conductance(e) * (1.0 - x[idx[u]]);
		}
	}
	return current > 0.0 ? 1.0 / current : kInf;
}

}  // namespace

double effective_resistance(const EdgeNetwork& net, std::span<const Vertex> A, std::span<const Vertex> B) {
	std::vector<std::uint32_t> all(net.graph().edge_count());
	for (std::uint32_t e = 0; e < all.size(); ++e) all[e] = e;
	return solve(net, all, A, B, true);
}

double effective_resistance_on(const EdgeNetwork& net, std::span<const std::uint32_t> edges,
                               std::span<const Vertex> A, std::span<const Vertex> B) {
	return solve(net, edges, A, B, false);
}

void validate_annulus(const RotationGraph& g, const Annulus& a) {
	if (a.inner.empty() || a.outer.empty()) throw Error("annulus boundaries must be nonempty");
	std::vector<bool> cut(g.edge_count(), false), outer(g.vertex_count(), false), seen(g.vertex_count(), false);
	for (auto e : a.edges) cut[e] = true;
	for (Vertex v : a.outer) outer[v] = true;
	std::deque<Vertex> queue;
	for (Vertex v : a.inner) {
		if (outer[v]) throw Error("annulus boundaries share vertex " + std::to_string(v));
		if (!seen[v]) {
			seen[v] = true;
			queue.push_back(v);
		}
	}
	while (!queue.empty()) {
		const Vertex v = queue.front();
		queue.pop_front();
		if (outer[v]) throw Error("annulus does not separate: vertex " + std::to_string(v) + " reachable");
		for (Dart d : g.darts_at(v)) {
			if (cut[RotationGraph::edge_of(d)]) continue;
			const Vertex w = g.head(d);
			if (!seen[w]) {
				seen[w] = true;
				queue.push_back(w);
			}
		}
	}
}

double modulus_of_annulus(const EdgeNetwork& net, const Annulus& a) {
	validate_annulus(net.graph(), a);
	const double r = effective_resistance_on(net, a.edges, a.inner, a.outer);
	return 1.0 / r;
}

std::vector<Annulus> width_one_annuli(const RotationGraph& g, Vertex root, std::uint32_t first, std::uint32_t last) {
	const std::vector<std::uint32_t> dist = bfs_distances(g, std::span<const Vertex>(&root, 1), last + 1);
	std::vector<Annulus> out(last >= first ? last - first + 1 : 0);
	for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
		const Vertex u = g.origin(2 * e), v = g.head(2 * e);
		const std::uint32_t du = dist[u], dv = dist[v];
		if (du == kUnreached || dv == kUnreached || du == dv) continue;
		const std::uint32_t lo = std::min(du, dv);
		if (lo < first || lo > last) continue;
		Annulus& a = out[lo - first];
		a.edges.push_back(e);
		a.inner.push_back(du < dv ? u : v);
		a.outer.push_back(du < dv ? v : u);
	}
	for (Annulus& a : out) {
		for (auto* s : {&a.inner, &a.outer}) {
			std::sort(s->begin(), s->end());
			s->erase(std::unique(s->begin(), s->end()), s->end());
		}
	}
	while (!out.empty() && out.back().edges.empty()) out.pop_back();
	return out;
}

}  // namespace shabat
