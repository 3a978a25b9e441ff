#include "shabat/trees.hpp"

#include <algorithm>
#include <deque>

namespace shabat {

Kernel kernel_of(const TreeTruncation& t) {
	const RotationGraph& g = t.graph;
	const std::size_t n = g.vertex_count();
	const std::vector<Vertex> rays = t.rays();
	if (rays.empty()) throw Error("finite tree has no kernel");
	Kernel k;
	k.contains.assign(n, false);
	if (rays.size() == 1) {
		k.kind = KernelKind::SemiInfinitePath;
		for (Vertex v = rays[0]; v != kNone; v = t.parent[v]) k.contains[v] = true;
	} else {
		k.kind = KernelKind::BiInfiniteUnion;
		std::vector<std::uint32_t> deg(n);
		std::deque<Vertex> queue;
		for (Vertex v = 0; v < n; ++v) {
			deg[v] = static_cast<std::uint32_t>(g.degree(v));
			k.contains[v] = true;
			if (!t.is_ray(v) && deg[v] <= 1) queue.push_back(v);
		}
		while (!queue.empty()) {
			const Vertex v = queue.front();
			queue.pop_front();
			if (!k.contains[v]) continue;
			k.contains[v] = false;
			for (Dart d : g.darts_at(v)) {
				const Vertex w = g.head(d);
				if (k.contains[w] && --deg[w] == 1 && !t.is_ray(w)) queue.push_back(w);
			}
		}
	}
	for (Vertex v = 0; v < n; ++v)
		if (k.contains[v]) k.vertices.push_back(v);
	return k;
}

std::vector<Vertex> parent_map(const TreeTruncation& t, const Kernel& k) {
	const RotationGraph& g = t.graph;
	if (k.contains.size() != g.vertex_count()) throw Error("kernel does not match the tree");
	std::vector<Vertex> to(g.vertex_count(), kNone);
	std::deque<Vertex> queue;
	for (Vertex v : k.vertices) {
		to[v] = v;
		queue.push_back(v);
	}
	while (!queue.empty()) {
		const Vertex v = queue.front();
		queue.pop_front();
		for (Dart d : g.darts_at(v)) {
			const Vertex w = g.head(d);
			if (to[w] != kNone) continue;
			to[w] = to[v];
			queue.push_back(w);
		}
	}
	return to;
}

TreeTruncation kernel_truncation(const TreeTruncation& t, const Kernel& k, std::vector<Vertex>* old_ids) {
	RotationGraph sub = induced_subgraph(t.graph, k.vertices);
	Vertex root_old = t.root;
	if (!k.has(root_old)) root_old = parent_map(t, k)[root_old];
	const Vertex root = static_cast<Vertex>(
	    std::lower_bound(k.vertices.begin(), k.vertices.end(), root_old) - k.vertices.begin());
	TreeTruncation kt = TreeTruncation::from_graph(std::move(sub), root);
	if (old_ids) *old_ids = k.vertices;
	return kt;
}

KernelDistances distance_to_kernel(const TreeTruncation& t, const Kernel& k) {
	const RotationGraph& g = t.graph;
	const std::size_t n = g.vertex_count();
	if (k.contains.size() != n) throw Error("kernel does not match the tree");
	KernelDistances out;
	out.distance.assign(n, kUnreached);
	out.censored.assign(n, false);
	// branch[v]: first off-kernel vertex on the path from the kernel to v
	std::vector<Vertex> branch(n, kNone);
	std::vector<Vertex> order;
	for (Vertex v : k.vertices) {
		out.distance[v] = 0;
		order.push_back(v);
	}
	for (std::size_t i = 0; i < order.size(); ++i) {
		const Vertex v = order[i];
		for (Dart d : g.darts_at(v)) {
			const Vertex w = g.head(d);
			if (out.distance[w] != kUnreached) continue;
			out.distance[w] = out.distance[v] + 1;
			branch[w] = k.has(v) ? w : branch[v];
			order.push_back(w);
		}
	}
	std::vector<bool> open(n, false);
	for (Vertex v = 0; v < n; ++v)
		if (branch[v] != kNone && t.is_frontier(v)) open[branch[v]] = true;
	out.witness = k.vertices.empty() ? kNone : k.vertices.front();
	for (Vertex v = 0; v < n; ++v) {
		if (branch[v] == kNone) continue;
		if (open[branch[v]]) {
			out.censored[v] = true;
			continue;
		}
		if (out.distance[v] > out.max) {
			out.max = out.distance[v];
			out.witness = v;
		}
	}
	return out;
}

std::uint32_t unbounded_face_count(const TreeTruncation& t) {
	if (t.rays().empty()) return 1;
	const RotationGraph closed = close_frontier(t.graph);
	const FaceSet faces = trace_faces(closed);
	const Vertex ideal = static_cast<Vertex>(closed.vertex_count() - 1);
	std::uint32_t count = 0;
	for (const auto& f : faces.faces) {
		for (Dart d : f) {
			if (closed.origin(d) == ideal) {
				++count;
				break;
			}
		}
	}
	return count;
}

ComponentTrace complementary_components(const TreeFamily& family, const std::vector<std::uint32_t>& depths) {
	if (depths.size() < 2) throw Error("need at least two depths");
	ComponentTrace out;
	out.depths = depths;
	for (auto d : depths) out.trace.push_back(unbounded_face_count(family.generate(d)));
	if (out.trace[out.trace.size() - 1] == out.trace[out.trace.size() - 2]) out.count = out.trace.back();
	return out;
}

std::pair<std::uint32_t, Vertex> max_settled_valence(const TreeTruncation& t) {
	std::uint32_t best = 0;
	Vertex who = kNone;
	for (Vertex v = 0; v < t.vertex_count(); ++v) {
		if (t.is_frontier(v)) continue;
		const auto d = static_cast<std::uint32_t>(t.graph.degree(v));
		if (who == kNone || d > best) {
			best = d;
			who = v;
		}
	}
	return {best, who};
}

TucReport check_tuc(const TreeFamily& family, const std::vector<std::uint32_t>& depths) {
	if (depths.size() < 2) throw Error("need at least two depths");
	TucReport r;
	r.depths = depths;
	for (auto depth : depths) {
		const TreeTruncation t = family.generate(depth);
		auto [b, bw] = max_settled_valence(t);
		r.valence_trace.push_back(b);
		r.valence_witness = bw;
		r.component_trace.push_back(unbounded_face_count(t));
		if (t.rays().empty()) {
			r.distance_trace.push_back(0);
			r.distance_witness = t.root;
		} else {
			const KernelDistances kd = distance_to_kernel(t, kernel_of(t));
			r.distance_trace.push_back(kd.max);
			r.distance_witness = kd.witness;
		}
	}
	const std::size_t L = depths.size();
	auto stable = [&](const std::vector<std::uint32_t>& v) { return v[L - 1] == v[L - 2]; };
	r.B = r.valence_trace.back();
	r.N = r.component_trace.back();
	r.M = r.distance_trace.back();
	r.bounded_valence = stable(r.valence_trace);
	r.finite_components = stable(r.component_trace);
	r.bounded_distance = stable(r.distance_trace);
	if (r.passes()) {
		std::size_t i = L - 1;
		while (i > 0 && r.valence_trace[i - 1] == r.B && r.component_trace[i - 1] == r.N &&
		       r.distance_trace[i - 1] == r.M)
			--i;
		r.stability_depth = depths[i];
	}
	return r;
}

}  // namespace shabat
