#include "shabat/rotation_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace shabat {

std::size_t RotationGraph::max_degree() const {
	std::size_t best = 0;
	for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
	return best;
}

void RotationGraph::validate(bool allow_loops, bool require_connected) const {
	if (origin_.size() % 2 != 0) throw Error("odd dart count");
	if (!allow_loops) {
		for (Dart d = 0; d < origin_.size(); d += 2) {
			if (origin_[d] == origin_[d + 1]) {
				std::ostringstream os;
				os << "self-loop at vertex " << origin_[d];
				throw Error(os.str());
			}
		}
	}
	if (require_connected && vertex_count() > 1) {
		std::vector<bool> seen(vertex_count(), false);
		std::vector<Vertex> stack{0};
		seen[0] = true;
		std::size_t count = 1;
		while (!stack.empty()) {
			Vertex v = stack.back();
			stack.pop_back();
			for (Dart d : darts_at(v)) {
				Vertex w = head(d);
				if (!seen[w]) {
					seen[w] = true;
					++count;
					stack.push_back(w);
				}
			}
		}
		if (count != vertex_count()) {
			std::ostringstream os;
			os << "graph is disconnected (" << count << " of " << vertex_count()
			   << " vertices reachable from 0)";
			throw Error(os.str());
		}
	}
}

RotationGraph RotationGraph::from_parents(std::span<const Vertex> parent,
                                          std::vector<VertexLabel> labels) {
	const std::size_t n = parent.size();
	if (labels.size() != n) throw Error("label count mismatch");
	RotationGraph g;
	g.labels_ = std::move(labels);
	g.offset_.assign(n + 1, 0);
	for (Vertex c = 1; c < n; ++c) {
		if (parent[c] >= c) throw Error("parents must precede children");
		++g.offset_[c + 1];
		++g.offset_[parent[c] + 1];
	}
	for (std::size_t v = 0; v < n; ++v) g.offset_[v + 1] += g.offset_[v];
	const std::size_t darts = n == 0 ? 0 : 2 * (n - 1);
	g.ccw_.resize(darts);
	g.pos_.resize(darts);
	g.origin_.resize(darts);
	std::vector<std::uint32_t> fill(g.offset_.begin(), g.offset_.end() - 1);
	// parent dart first, then children in ascending id order
	for (Vertex c = 1; c < n; ++c) {
		const Dart down = 2 * (c - 1);
		const Dart up = down + 1;
		g.origin_[down] = parent[c];
		g.origin_[up] = c;
		std::uint32_t p = fill[c]++;
		g.ccw_[p] = up;
		g.pos_[up] = p;
	}
	for (Vertex c = 1; c < n; ++c) {
		const Dart down = 2 * (c - 1);
		std::uint32_t p = fill[parent[c]]++;
		g.ccw_[p] = down;
		g.pos_[down] = p;
	}
	return g;
}

GraphBuilder::GraphBuilder(const RotationGraph& g) {
	const std::size_t n = g.vertex_count();
	labels_.assign(g.labels_.begin(), g.labels_.end());
	origin_.assign(g.origin_.begin(), g.origin_.end());
	removed_.assign(g.edge_count(), false);
	ccw_.resize(n);
	for (Vertex v = 0; v < n; ++v) {
		auto ds = g.darts_at(v);
		ccw_[v].assign(ds.begin(), ds.end());
	}
}

Vertex GraphBuilder::add_vertex(VertexLabel label) {
	labels_.push_back(label);
	ccw_.emplace_back();
	return static_cast<Vertex>(labels_.size() - 1);
}

Dart GraphBuilder::add_edge(Vertex u, Vertex v) {
	if (u >= labels_.size() || v >= labels_.size()) throw Error("add_edge: unknown vertex");
	const Dart d = static_cast<Dart>(origin_.size());
	origin_.push_back(u);
	origin_.push_back(v);
	removed_.push_back(false);
	ccw_[u].push_back(d);
	ccw_[v].push_back(d + 1);
	return d;
}

void GraphBuilder::remove_edge(Dart d) {
	removed_[d >> 1] = true;
	for (Dart x : {d, d ^ 1u}) {
		auto& list = ccw_[origin_[x]];
		list.erase(std::find(list.begin(), list.end(), x));
	}
}

void GraphBuilder::move_after(Dart d, Dart ref) {
	auto& list = ccw_[origin_[d]];
	if (origin_[ref] != origin_[d]) throw Error("move_after: darts at different vertices");
	list.erase(std::find(list.begin(), list.end(), d));
	auto it = std::find(list.begin(), list.end(), ref);
	list.insert(it + 1, d);
}

void GraphBuilder::move_before(Dart d, Dart ref) {
	auto& list = ccw_[origin_[d]];
	if (origin_[ref] != origin_[d]) throw Error("move_before: darts at different vertices");
	list.erase(std::find(list.begin(), list.end(), d));
	auto it = std::find(list.begin(), list.end(), ref);
	list.insert(it, d);
}

void GraphBuilder::set_rotation(Vertex v, std::vector<Dart> order) {
	auto& list = ccw_[v];
	std::vector<Dart> a = list, b = order;
	std::sort(a.begin(), a.end());
	std::sort(b.begin(), b.end());
	if (a != b) throw Error("set_rotation: not a permutation of the darts at the vertex");
	list = std::move(order);
}

RotationGraph GraphBuilder::build() {
	remap_.assign(origin_.size(), kNone);
	Dart next = 0;
	for (std::size_t e = 0; e < removed_.size(); ++e) {
		if (removed_[e]) continue;
		remap_[2 * e] = next;
		remap_[2 * e + 1] = next + 1;
		next += 2;
	}
	RotationGraph g;
	const std::size_t n = labels_.size();
	g.labels_ = labels_;
	g.offset_.assign(n + 1, 0);
	for (Vertex v = 0; v < n; ++v) g.offset_[v + 1] = g.offset_[v] + static_cast<std::uint32_t>(ccw_[v].size());
	g.ccw_.resize(next);
	g.pos_.resize(next);
	g.origin_.resize(next);
	for (Vertex v = 0; v < n; ++v) {
		std::uint32_t p = g.offset_[v];
		for (Dart old : ccw_[v]) {
			const Dart d = remap_[old];
			g.ccw_[p] = d;
			g.pos_[d] = p;
			g.origin_[d] = v;
			++p;
		}
	}
	if (g.offset_[n] != next) throw Error("builder: dangling darts");
	g.validate(allow_loops_, require_connected_);
	return g;
}

RotationGraph build_graph(std::size_t vertex_count,
                          const std::vector<std::vector<NeighborRef>>& adjacency,
                          std::vector<VertexLabel> labels) {
	if (adjacency.size() != vertex_count) throw Error("adjacency size does not match vertex count");
	if (labels.empty()) labels.assign(vertex_count, {});
	if (labels.size() != vertex_count) throw Error("label count does not match vertex count");
	for (Vertex u = 0; u < vertex_count; ++u)
		for (const auto& n : adjacency[u])
			if (n.vertex >= vertex_count) {
				std::ostringstream os;
				os << "vertex " << u << " lists unknown neighbour " << n.vertex;
				throw Error(os.str());
			}

	bool explicit_darts = false, implicit_darts = false;
	std::size_t total = 0;
	for (const auto& list : adjacency)
		for (const auto& n : list) {
			(n.dart == kNone ? implicit_darts : explicit_darts) = true;
			++total;
		}
	if (explicit_darts && implicit_darts) throw Error("mixed explicit and implicit dart ids");

	// dart id for each (u, slot)
	std::vector<std::vector<Dart>> slot_dart(vertex_count);
	for (Vertex u = 0; u < vertex_count; ++u) slot_dart[u].assign(adjacency[u].size(), kNone);

	if (explicit_darts) {
		if (total % 2 != 0) throw Error("odd number of darts");
		std::vector<std::pair<Vertex, std::size_t>> where(total, {kNone, 0});
		for (Vertex u = 0; u < vertex_count; ++u)
			for (std::size_t i = 0; i < adjacency[u].size(); ++i) {
				const Dart d = adjacency[u][i].dart;
				if (d >= total || where[d].first != kNone) {
					std::ostringstream os;
					os << "dart id " << d << " at vertex " << u << " is out of range or repeated";
					throw Error(os.str());
				}
				where[d] = {u, i};
				slot_dart[u][i] = d;
			}
		for (Dart d = 0; d < total; ++d) {
			const auto [u, i] = where[d];
			const auto [v, j] = where[d ^ 1u];
			if (adjacency[u][i].vertex != v || adjacency[v][j].vertex != u) {
				std::ostringstream os;
				os << "inconsistent adjacency between " << u << " and " << adjacency[u][i].vertex
				   << " (dart " << d << ")";
				throw Error(os.str());
			}
		}
	} else {
		Dart next = 0;
		for (Vertex u = 0; u < vertex_count; ++u) {
			std::map<Vertex, std::vector<std::size_t>> mine;
			for (std::size_t i = 0; i < adjacency[u].size(); ++i) mine[adjacency[u][i].vertex].push_back(i);
			for (auto& [v, slots] : mine) {
				if (v < u) continue;
				if (v == u) {
					std::ostringstream os;
					os << "self-loop at vertex " << u;
					throw Error(os.str());
				}
				std::vector<std::size_t> theirs;
				for (std::size_t j = 0; j < adjacency[v].size(); ++j)
					if (adjacency[v][j].vertex == u) theirs.push_back(j);
				if (theirs.size() != slots.size()) {
					std::ostringstream os;
					os << "inconsistent adjacency between " << u << " and " << v << ": " << slots.size()
					   << " vs " << theirs.size() << " listings";
					throw Error(os.str());
				}
				const std::size_t k = slots.size();
				for (std::size_t i = 0; i < k; ++i) {
					slot_dart[u][slots[i]] = next;
					slot_dart[v][theirs[k - 1 - i]] = next + 1;
					next += 2;
				}
			}
		}
	}

	GraphBuilder b;
	for (Vertex u = 0; u < vertex_count; ++u) b.add_vertex(labels[u]);
	// create edges in dart-id order so ids survive build()
	std::vector<std::pair<Vertex, Vertex>> ends(total / 2);
	for (Vertex u = 0; u < vertex_count; ++u)
		for (std::size_t i = 0; i < adjacency[u].size(); ++i) {
			const Dart d = slot_dart[u][i];
			if (d % 2 == 0) ends[d / 2] = {u, adjacency[u][i].vertex};
		}
	for (const auto& [u, v] : ends) b.add_edge(u, v);
	for (Vertex u = 0; u < vertex_count; ++u) {
		b.set_rotation(u, slot_dart[u]);
	}
	return b.build();
}

RotationGraph build_graph(std::size_t vertex_count, const std::vector<std::vector<Vertex>>& adjacency) {
	std::vector<std::vector<NeighborRef>> refs(adjacency.size());
	for (std::size_t u = 0; u < adjacency.size(); ++u)
		for (Vertex v : adjacency[u]) refs[u].push_back({v, kNone});
	return build_graph(vertex_count, refs);
}

FaceSet trace_faces(const RotationGraph& g) {
	FaceSet fs;
	fs.face_of_dart.assign(g.dart_count(), kNone);
	for (Dart start = 0; start < g.dart_count(); ++start) {
		if (fs.face_of_dart[start] != kNone) continue;
		const auto id = static_cast<std::uint32_t>(fs.faces.size());
		std::vector<Dart> cycle;
		bool frontier = false;
		Dart d = start;
		do {
			fs.face_of_dart[d] = id;
			cycle.push_back(d);
			if (g.has_flag(g.origin(d), vflag::Frontier | vflag::Ray | vflag::Ideal)) frontier = true;
			d = g.face_next(d);
		} while (d != start);
		fs.faces.push_back(std::move(cycle));
		fs.touches_frontier.push_back(frontier);
	}
	// an isolated vertex bounds one face with no darts
	if (g.dart_count() == 0 && g.vertex_count() == 1) {
		fs.faces.emplace_back();
		fs.touches_frontier.push_back(g.has_flag(0, vflag::Frontier | vflag::Ray));
	}
	return fs;
}

RotationGraph close_frontier(const RotationGraph& g) {
	GraphBuilder b(g);
	std::vector<Vertex> rays;
	for (Vertex v = 0; v < g.vertex_count(); ++v)
		if (g.has_flag(v, vflag::Ray)) rays.push_back(v);
	if (rays.empty()) return g;

	// order the closing darts around the ideal vertex opposite to the order in
	// which the (single) outer walk meets the rays, so the closure stays planar
	std::vector<Vertex> order;
	{
		FaceSet fs = trace_faces(g);
		std::vector<bool> done(g.vertex_count(), false);
		for (const auto& face : fs.faces)
			for (Dart d : face) {
				Vertex v = g.origin(d);
				if (g.has_flag(v, vflag::Ray) && !done[v]) {
					done[v] = true;
					order.push_back(v);
				}
			}
	}
	const Vertex ideal = b.add_vertex({Color::None, vflag::Ideal});
	std::vector<Dart> at_ideal;
	for (Vertex v : order) {
		Dart d = b.add_edge(v, ideal);
		at_ideal.push_back(d ^ 1u);
	}
	std::reverse(at_ideal.begin(), at_ideal.end());
	b.set_rotation(ideal, std::move(at_ideal));
	return b.build();
}

std::vector<std::uint32_t> bfs_distances(const RotationGraph& g, std::span<const Vertex> sources,
                                         std::uint32_t max_distance) {
	std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
	std::vector<Vertex> frontier, next;
	for (Vertex s : sources) {
		if (s >= g.vertex_count()) throw Error("bfs: unknown vertex");
		if (dist[s] != 0) {
			dist[s] = 0;
			frontier.push_back(s);
		}
	}
	std::uint32_t level = 0;
	while (!frontier.empty() && level < max_distance) {
		++level;
		next.clear();
		for (Vertex v : frontier)
			for (Dart d : g.darts_at(v)) {
				Vertex w = g.head(d);
				if (dist[w] == kUnreached) {
					dist[w] = level;
					next.push_back(w);
				}
			}
		frontier.swap(next);
	}
	return dist;
}

std::uint32_t word_distance(const RotationGraph& g, Vertex u, Vertex v) {
	if (u >= g.vertex_count() || v >= g.vertex_count()) {
		std::ostringstream os;
		os << "word_distance: unknown vertex " << (u >= g.vertex_count() ? u : v);
		throw Error(os.str());
	}
	const Vertex src[] = {u};
	return bfs_distances(g, src)[v];
}

RotationGraph dual_graph(const RotationGraph& g, const FaceSet& faces) {
	GraphBuilder b;
	b.set_allow_loops(true);
	for (std::size_t f = 0; f < faces.size(); ++f) b.add_vertex({});
	for (std::uint32_t e = 0; e < g.edge_count(); ++e)
		b.add_edge(faces.face_of_dart[2 * e], faces.face_of_dart[2 * e + 1]);
	// a face is traced clockwise, so its dual rotation is the reversed walk
	for (std::size_t f = 0; f < faces.size(); ++f) {
		b.set_rotation(static_cast<Vertex>(f), std::vector<Dart>(faces.faces[f].rbegin(), faces.faces[f].rend()));
	}
	return b.build();
}

RotationGraph induced_subgraph(const RotationGraph& g, std::span<const Vertex> keep) {
	std::vector<Vertex> new_id(g.vertex_count(), kNone);
	for (std::size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<Vertex>(i);
	GraphBuilder b;
	b.set_allow_loops(true);
	b.set_require_connected(false);
	for (Vertex v : keep) b.add_vertex(g.label(v));
	std::vector<Dart> new_dart(g.dart_count(), kNone);
	for (Dart d = 0; d < g.dart_count(); d += 2) {
		Vertex u = new_id[g.origin(d)], v = new_id[g.head(d)];
		if (u == kNone || v == kNone) continue;
		Dart nd = b.add_edge(u, v);
		new_dart[d] = nd;
		new_dart[d + 1] = nd + 1;
	}
	for (std::size_t i = 0; i < keep.size(); ++i) {
		std::vector<Dart> order;
		for (Dart d : g.darts_at(keep[i]))
			if (new_dart[d] != kNone) order.push_back(new_dart[d]);
		b.set_rotation(static_cast<Vertex>(i), std::move(order));
	}
	return b.build();
}

}  // namespace shabat
