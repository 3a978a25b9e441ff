#include "shabat/speiser.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace shabat {

std::size_t SpeiserGraph::bounded_face_count() const {
	return static_cast<std::size_t>(
	    std::count_if(faces.begin(), faces.end(), [](const SpeiserFace& f) { return f.kind == FaceKind::Bounded; }));
}

std::size_t SpeiserGraph::unbounded_face_count() const {
	return static_cast<std::size_t>(
	    std::count_if(faces.begin(), faces.end(), [](const SpeiserFace& f) { return f.kind == FaceKind::Unbounded; }));
}

SpeiserGraph SpeiserGraph::from_graph(RotationGraph g, std::uint32_t valence, Vertex root) {
	const std::size_t n = g.vertex_count();
	if (root >= n) throw Error("root is not a vertex");
	// two-color by BFS when no coloring is supplied
	bool colored = true;
	for (Vertex v = 0; v < n; ++v) colored &= g.color(v) != Color::None;
	if (!colored) {
		GraphBuilder b(g);
		std::vector<std::uint32_t> dist = bfs_distances(g, std::span<const Vertex>(&root, 1));
		for (Vertex v = 0; v < n; ++v) b.label(v).color = dist[v] % 2 == 0 ? Color::Circle : Color::Cross;
		g = b.build();
	}
	for (Dart d = 0; d < g.dart_count(); ++d)
		if (g.color(g.origin(d)) == g.color(g.head(d)))
			throw Error("edge " + std::to_string(g.origin(d)) + "-" + std::to_string(g.head(d)) +
			            " joins vertices of the same color");
	for (Vertex v = 0; v < n; ++v)
		if (!g.has_flag(v, vflag::Frontier) && g.degree(v) != valence)
			throw Error("vertex " + std::to_string(v) + " has valence " + std::to_string(g.degree(v)));
	SpeiserGraph s;
	const FaceSet fs = trace_faces(g);
	for (std::size_t f = 0; f < fs.size(); ++f) {
		SpeiserFace face;
		face.darts = fs.faces[f];
		face.kind = fs.touches_frontier[f] ? FaceKind::Unbounded : FaceKind::Bounded;
		s.faces.push_back(std::move(face));
	}
	s.graph = std::move(g);
	s.valence = valence;
	s.root = root;
	return s;
}

SpeiserGraph triangulate_and_dualize(const TreeTruncation& t) {
	const RotationGraph& tree = t.graph;
	const std::uint32_t E = static_cast<std::uint32_t>(tree.edge_count());
	if (E == 0) throw Error("tree has no edges");

	auto left = [](std::uint32_t e) { return static_cast<Vertex>(2 * e); };
	auto right = [](std::uint32_t e) { return static_cast<Vertex>(2 * e + 1); };
	auto black_end = [&](std::uint32_t e) {
		const Vertex a = tree.origin(2 * e);
		return tree.color(a) == Color::Circle ? a : tree.head(2 * e);
	};
	for (std::uint32_t e = 0; e < E; ++e)
		if (tree.color(tree.origin(2 * e)) == tree.color(tree.head(2 * e)))
			throw Error("internal error: tree coloring is not proper");

	GraphBuilder b;
	for (std::uint32_t e = 0; e < E; ++e) {
		const bool edge_artifact = t.is_frontier(tree.origin(2 * e)) || t.is_frontier(tree.head(2 * e));
		const std::uint8_t flags = edge_artifact ? vflag::Artifact : 0;
		b.add_vertex({Color::Circle, flags});
		b.add_vertex({Color::Cross, flags});
	}
	// crossing edge of tree edge e is dual edge e; dart 2e runs circle -> cross
	for (std::uint32_t e = 0; e < E; ++e) b.add_edge(left(e), right(e));

	std::vector<Dart> black_curve(2 * E, kNone), white_curve(2 * E, kNone);
	std::vector<Dart> cut;
	for (Vertex u = 0; u < tree.vertex_count(); ++u) {
		const auto ds = tree.darts_at(u);
		const std::size_t k = ds.size();
		const bool black = tree.color(u) == Color::Circle;
		for (std::size_t i = 0; i < k; ++i) {
			const std::uint32_t ea = RotationGraph::edge_of(ds[i]);
			const std::uint32_t eb = RotationGraph::edge_of(ds[(i + 1) % k]);
			const Vertex after = black ? left(ea) : right(ea);
			const Vertex before = black ? right(eb) : left(eb);
			const Dart d = b.add_edge(after, before);
			(black ? black_curve : white_curve)[after] = d;
			(black ? black_curve : white_curve)[before] = d ^ 1u;
			if (t.is_ray(u) && i + 1 == k) cut.push_back(d);
		}
	}
	for (std::uint32_t e = 0; e < E; ++e) {
		// circle triangle: crossing, white curve, black curve; cross triangle reversed
		const Dart cl = 2 * e, cr = 2 * e + 1;
		b.move_after(white_curve[left(e)], cl);
		b.move_after(black_curve[left(e)], white_curve[left(e)]);
		b.move_after(black_curve[right(e)], cr);
		b.move_after(white_curve[right(e)], black_curve[right(e)]);
	}
	for (Dart c : cut) {
		for (Vertex v : {b.origin(c), b.head(c)}) b.label(v).flags |= vflag::Frontier | vflag::Ray;
	}
	const RotationGraph full = b.build();

	// corner of each dart: the tree vertex (or infinity) owning the sector
	// between rotate_back(d) and d
	const std::size_t D = full.dart_count();
	std::vector<Vertex> corner(D, kNone);
	for (std::uint32_t e = 0; e < E; ++e) {
		const Vertex bl = black_end(e);
		const Vertex wh = tree.origin(2 * e) == bl ? tree.head(2 * e) : tree.origin(2 * e);
		corner[2 * e] = bl;
		corner[white_curve[left(e)]] = wh;
		corner[2 * e + 1] = wh;
		corner[black_curve[right(e)]] = bl;
	}
	const FaceSet fs = trace_faces(full);
	std::vector<bool> is_cut(D, false);
	for (Dart c : cut) is_cut[c] = is_cut[c ^ 1u] = true;

	GraphBuilder trimmed(full);
	for (Dart c : cut) trimmed.remove_edge(c);
	SpeiserGraph s;
	s.graph = trimmed.build();
	const auto& remap = trimmed.dart_remap();
	auto remap_walk = [&](std::vector<Dart> walk) {
		std::vector<Dart> out;
		for (Dart d : walk)
			if (!is_cut[d]) out.push_back(remap[d]);
		return out;
	};

	for (std::size_t f = 0; f < fs.size(); ++f) {
		const auto& cyc = fs.faces[f];
		Vertex owner = kNone;
		for (Dart d : cyc) {
			if (is_cut[d]) continue;
			owner = corner[d];
			break;
		}
		if (owner != kNone) {
			SpeiserFace face;
			face.label = tree.color(owner) == Color::Circle ? face_label::MinusOne : face_label::PlusOne;
			face.tree_vertex = owner;
			face.kind = t.is_frontier(owner) ? FaceKind::Incomplete : FaceKind::Bounded;
			face.darts = remap_walk(cyc);
			s.faces.push_back(std::move(face));
			continue;
		}
		// the outer face: split at the cut darts into open walks
		std::vector<std::size_t> cuts;
		for (std::size_t i = 0; i < cyc.size(); ++i)
			if (is_cut[cyc[i]]) cuts.push_back(i);
		if (cuts.empty()) {
			SpeiserFace face;
			face.kind = FaceKind::Unbounded;
			face.label = face_label::Infinity;
			face.darts = remap_walk(cyc);
			s.faces.push_back(std::move(face));
			continue;
		}
		for (std::size_t j = 0; j < cuts.size(); ++j) {
			const std::size_t from = cuts[j], to = cuts[(j + 1) % cuts.size()];
			SpeiserFace face;
			face.kind = FaceKind::Unbounded;
			face.label = face_label::Infinity;
			face.closed = false;
			for (std::size_t i = (from + 1) % cyc.size(); i != to; i = (i + 1) % cyc.size())
				face.darts.push_back(remap[cyc[i]]);
			if (face.darts.empty()) {
				// both curves of one triangle were cut: anchor at its crossing dart
				const Vertex x = full.head(cyc[from]);
				for (Dart d : full.darts_at(x))
					if (!is_cut[d]) face.anchor = remap[d];
			}
			s.faces.push_back(std::move(face));
		}
	}
	s.root = left(RotationGraph::edge_of(tree.darts_at(t.root)[0]));
	s.tree_edge_dart.resize(E);
	for (std::uint32_t e = 0; e < E; ++e) s.tree_edge_dart[e] = remap[2 * e];
	return s;
}

Vertex Patch::at(std::int32_t c, std::uint32_t r) const {
	if (shape == Shape::HalfCylinder) {
		const std::int32_t w = static_cast<std::int32_t>(width());
		c = ((c - col_min) % w + w) % w + col_min;
	}
	if (c < col_min || c > col_max || r > height) return kNone;
	return ids[static_cast<std::size_t>(c - col_min) + width() * r];
}

std::uint32_t ExtendedGraph::exact_radius() const {
	const std::uint8_t bad = vflag::Artifact | vflag::Frontier;
	std::vector<std::uint32_t> dist(graph.vertex_count(), kUnreached);
	std::deque<Vertex> queue{root};
	dist[root] = 0;
	while (!queue.empty()) {
		const Vertex v = queue.front();
		queue.pop_front();
		if (graph.has_flag(v, bad)) return dist[v];
		for (Dart d : graph.darts_at(v)) {
			const Vertex w = graph.head(d);
			if (dist[w] != kUnreached) continue;
			dist[w] = dist[v] + 1;
			queue.push_back(w);
		}
	}
	return kUnreached;
}

ExtendedGraph glue_patches(const RotationGraph& base, const std::vector<GlueWalk>& walks, Vertex root,
                           const ExtendOptions& opt) {
	const bool prune = opt.keep_radius != kNone;
	std::vector<std::uint32_t> base_dist;
	if (prune) base_dist = bfs_distances(base, std::span<const Vertex>(&root, 1));

	GraphBuilder b(base);
	ExtendedGraph x;
	x.base_vertex_count = base.vertex_count();
	x.root = root;
	const std::uint32_t h = opt.height;

	// per new vertex: darts toward (prev, up, next, down)
	std::vector<std::array<Dart, 4>> slots;
	auto new_vertex = [&](std::size_t patch, std::int32_t c, std::uint32_t r) {
		const Vertex v = b.add_vertex({Color::None, vflag::Lattice});
		slots.push_back({kNone, kNone, kNone, kNone});
		x.patch_of.push_back(static_cast<std::uint32_t>(patch));
		x.col.push_back(c);
		x.row.push_back(r);
		return v;
	};
	x.patch_of.assign(base.vertex_count(), kNone);
	x.col.assign(base.vertex_count(), 0);
	x.row.assign(base.vertex_count(), 0);
	const Vertex first_new = static_cast<Vertex>(base.vertex_count());

	for (std::size_t wi = 0; wi < walks.size(); ++wi) {
		GlueWalk walk = walks[wi];
		const std::size_t m = walk.darts.size();
		if (walk.closed) {
			if (m < 2) throw Error("closed walk needs at least two darts");
			// anchor the cylinder at the boundary vertex of least id
			std::size_t best = 0;
			for (std::size_t i = 1; i < m; ++i)
				if (base.origin(walk.darts[i]) < base.origin(walk.darts[best])) best = i;
			std::rotate(walk.darts.begin(), walk.darts.begin() + static_cast<std::ptrdiff_t>(best), walk.darts.end());
		}
		Patch p;
		p.shape = walk.closed ? Patch::Shape::HalfCylinder : Patch::Shape::HalfPlane;
		p.face = walk.face;
		p.height = h;
		if (walk.closed) {
			for (Dart d : walk.darts) p.boundary.push_back(base.origin(d));
			p.col_min = 0;
			p.col_max = static_cast<std::int32_t>(m) - 1;
		} else {
			if (m == 0) {
				if (walk.single == kNone) throw Error("empty walk without a vertex");
				p.boundary.push_back(walk.single);
			} else {
				for (Dart d : walk.darts) p.boundary.push_back(base.origin(d));
				p.boundary.push_back(base.head(walk.darts.back()));
			}
			p.col_min = -static_cast<std::int32_t>(opt.pad);
			p.col_max = static_cast<std::int32_t>(m + opt.pad);
		}
		const std::int32_t last = static_cast<std::int32_t>(p.boundary.size()) - 1;  // open: m
		auto on_base = [&](std::int32_t c) { return c >= 0 && c <= last; };
		auto bound = [&](std::int32_t c) -> std::uint64_t {
			if (!prune) return 0;
			if (c < 0) return std::uint64_t(base_dist[p.boundary.front()]) + std::uint64_t(-c);
			if (c > last) return std::uint64_t(base_dist[p.boundary.back()]) + std::uint64_t(c - last);
			return base_dist[p.boundary[static_cast<std::size_t>(c)]];
		};
		auto kept = [&](std::int32_t c, std::uint32_t r) {
			return !prune || bound(c) + r <= opt.keep_radius;
		};
		const std::size_t W = p.width();
		p.ids.assign(W * (h + 1), kNone);
		const std::size_t pi = x.patches.size();
		for (std::uint32_t r = 0; r <= h; ++r)
			for (std::int32_t c = p.col_min; c <= p.col_max; ++c) {
				Vertex& id = p.ids[static_cast<std::size_t>(c - p.col_min) + W * r];
				if (r == 0 && on_base(c))
					id = p.boundary[static_cast<std::size_t>(c)];
				else if (kept(c, r))
					id = new_vertex(pi, c, r);
			}
		auto id_at = [&](std::int32_t c, std::uint32_t r) { return p.ids[static_cast<std::size_t>(c - p.col_min) + W * r]; };
		auto is_new = [&](Vertex v) { return v != kNone && v >= first_new; };

		// darts inserted at each boundary position, in rotation order
		std::vector<std::vector<Dart>> at_base(p.boundary.size());
		std::vector<Dart> base_prev_ext(p.boundary.size(), kNone), base_next_ext(p.boundary.size(), kNone);
		std::vector<Dart> base_up(p.boundary.size(), kNone);

		auto link_h = [&](std::int32_t c1, std::int32_t c2, std::uint32_t r) {
			const Vertex a = id_at(c1, r), z = id_at(c2, r);
			if (a == kNone || z == kNone) return;
			const Dart d = b.add_edge(a, z);
			if (is_new(a)) slots[a - first_new][2] = d;
			else base_next_ext[static_cast<std::size_t>(c1)] = d;
			if (is_new(z)) slots[z - first_new][0] = d ^ 1u;
			else base_prev_ext[static_cast<std::size_t>(c2)] = d ^ 1u;
		};
		for (std::uint32_t r = 0; r <= h; ++r) {
			for (std::int32_t c = p.col_min; c < p.col_max; ++c) {
				if (r == 0 && on_base(c) && on_base(c + 1)) continue;
				link_h(c, c + 1, r);
			}
			if (walk.closed && r > 0) link_h(p.col_max, p.col_min, r);
		}
		for (std::uint32_t r = 0; r < h; ++r)
			for (std::int32_t c = p.col_min; c <= p.col_max; ++c) {
				const Vertex a = id_at(c, r), z = id_at(c, r + 1);
				if (a == kNone || z == kNone) continue;
				const Dart d = b.add_edge(a, z);
				if (is_new(a)) slots[a - first_new][1] = d;
				else base_up[static_cast<std::size_t>(c)] = d;
				slots[z - first_new][3] = d ^ 1u;
			}
		// splice the new darts into the base rotations
		for (std::size_t i = 0; i < p.boundary.size(); ++i) {
			std::vector<Dart> seq;
			if (!walk.closed && i == 0 && base_prev_ext[i] != kNone) seq.push_back(base_prev_ext[i]);
			if (base_up[i] != kNone) seq.push_back(base_up[i]);
			if (!walk.closed && i + 1 == p.boundary.size() && base_next_ext[i] != kNone) seq.push_back(base_next_ext[i]);
			if (seq.empty()) continue;
			if (walk.closed || i < m) {
				for (Dart d : seq) b.move_before(d, walk.darts[i]);
			} else {
				Dart prev = m == 0 ? walk.anchor : RotationGraph::twin(walk.darts[m - 1]);
				if (prev == kNone) continue;  // isolated vertex: order is irrelevant
				for (Dart d : seq) {
					b.move_after(d, prev);
					prev = d;
				}
			}
		}
		// artifact marks: missing lattice neighbours and fake boundary
		for (std::uint32_t r = 0; r <= h; ++r)
			for (std::int32_t c = p.col_min; c <= p.col_max; ++c) {
				const Vertex v = id_at(c, r);
				if (v == kNone) continue;
				bool artifact = r == h;
				if (!walk.closed) {
					artifact |= c == p.col_min || c == p.col_max;
					artifact |= r == 0 && !on_base(c);
				}
				if (r < h && id_at(c, r + 1) == kNone) artifact = true;
				if (r > 0) {
					const std::int32_t cl = c == p.col_min ? (walk.closed ? p.col_max : c) : c - 1;
					const std::int32_t cr = c == p.col_max ? (walk.closed ? p.col_min : c) : c + 1;
					if (id_at(cl, r) == kNone || id_at(cr, r) == kNone) artifact = true;
				}
				if (artifact) b.label(v).flags |= vflag::Artifact;
			}
		x.patches.push_back(std::move(p));
	}
	for (std::size_t i = 0; i < slots.size(); ++i) {
		Dart prev = kNone;
		for (Dart d : slots[i]) {
			if (d == kNone) continue;
			if (prev != kNone) b.move_after(d, prev);
			prev = d;
		}
	}
	x.graph = b.build();
	if (opt.analysis_radius > 0) {
		const std::uint32_t exact = x.exact_radius();
		if (exact < opt.analysis_radius)
			throw Error("extension is exact only up to radius " + std::to_string(exact) + ", below the requested " +
			            std::to_string(opt.analysis_radius) + "; height and pad must be at least " +
			            std::to_string(opt.analysis_radius) + " and the base deeper");
	}
	return x;
}

ExtendedGraph extend(const SpeiserGraph& g, const ExtendOptions& opt) {
	std::vector<GlueWalk> walks;
	for (std::size_t f = 0; f < g.faces.size(); ++f) {
		const SpeiserFace& face = g.faces[f];
		GlueWalk w;
		w.face = f;
		w.darts = face.darts;
		w.closed = face.closed;
		w.anchor = face.anchor;
		if (face.kind == FaceKind::Unbounded) {
			if (!face.closed && face.darts.empty()) w.single = g.graph.origin(face.anchor);
			walks.push_back(std::move(w));
		} else if (face.kind == FaceKind::Bounded && opt.n > 0 && face.size() > 2 && face.size() >= 2 * opt.n) {
			walks.push_back(std::move(w));
		}
	}
	return glue_patches(g.graph, walks, g.root, opt);
}

std::vector<GlueWalk> tree_contour_walks(const TreeTruncation& t) {
	const RotationGraph& g = t.graph;
	if (g.edge_count() == 0) throw Error("tree has no edges");
	std::vector<Dart> cyc;
	const Dart start = g.darts_at(t.root)[0];
	Dart d = start;
	do {
		cyc.push_back(d);
		d = g.face_next(d);
	} while (d != start);
	std::vector<std::size_t> splits;
	for (std::size_t i = 0; i < cyc.size(); ++i) {
		const Vertex v = g.origin(cyc[i]);
		if (t.is_ray(v) && g.darts_at(v)[0] == cyc[i]) splits.push_back(i);
	}
	std::vector<GlueWalk> walks;
	if (splits.empty()) {
		GlueWalk w;
		w.darts = cyc;
		w.closed = true;
		walks.push_back(std::move(w));
		return walks;
	}
	for (std::size_t j = 0; j < splits.size(); ++j) {
		const std::size_t from = splits[j], to = splits[(j + 1) % splits.size()];
		GlueWalk w;
		w.face = j;
		std::size_t i = from;
		do {
			w.darts.push_back(cyc[i]);
			i = (i + 1) % cyc.size();
		} while (i != to);
		walks.push_back(std::move(w));
	}
	return walks;
}

ExtendedGraph extend_tree(const TreeTruncation& t, const ExtendOptions& opt) {
	return glue_patches(t.graph, tree_contour_walks(t), t.root, opt);
}

ExtendOptions options_for_radius(std::uint32_t radius) {
	ExtendOptions o;
	o.height = radius + 1;
	o.pad = radius + 1;
	o.keep_radius = radius + 1;
	return o;
}

TreeTruncation collapse_faces(const SpeiserGraph& g) {
	const RotationGraph& G = g.graph;
	const std::size_t n = G.vertex_count();
	std::vector<Vertex> uf(n);
	std::iota(uf.begin(), uf.end(), 0);
	auto find = [&](Vertex v) {
		while (uf[v] != v) v = uf[v] = uf[uf[v]];
		return v;
	};
	std::vector<const SpeiserFace*> contracted;
	for (const SpeiserFace& f : g.faces) {
		if (f.kind != FaceKind::Bounded || !f.closed || f.size() <= 2) continue;
		contracted.push_back(&f);
		for (Dart d : f.darts) {
			const Vertex a = find(G.origin(f.darts[0])), z = find(G.origin(d));
			if (a != z) uf[std::max(a, z)] = std::min(a, z);
		}
	}
	// class ids in order of least member
	std::vector<Vertex> cls(n, kNone);
	Vertex classes = 0;
	for (Vertex v = 0; v < n; ++v) {
		const Vertex r = find(v);
		if (cls[r] == kNone) cls[r] = classes++;
		cls[v] = cls[r];
	}
	// rotation of each class: externals around contracted faces, else as is
	std::vector<std::vector<Dart>> rot(classes);
	std::vector<bool> placed(G.dart_count(), false);
	auto push = [&](Vertex c, Dart d) {
		if (placed[d] || cls[G.head(d)] == c) return;
		placed[d] = true;
		rot[c].push_back(d);
	};
	for (const SpeiserFace* f : contracted) {
		const auto& w = f->darts;
		const std::size_t m = w.size();
		const Vertex c = cls[G.origin(w[0])];
		for (std::size_t k = m; k-- > 0;) {
			const Dart stop = RotationGraph::twin(w[(k + m - 1) % m]);
			for (Dart d = G.rotate(w[k]); d != stop && d != w[k]; d = G.rotate(d)) push(c, d);
		}
	}
	for (Vertex v = 0; v < n; ++v)
		for (Dart d : G.darts_at(v)) push(cls[v], d);

	// keep one edge per pair of classes: the least edge id
	std::map<std::pair<Vertex, Vertex>, std::uint32_t> keep;
	for (std::uint32_t e = 0; e < G.edge_count(); ++e) {
		Vertex a = cls[G.origin(2 * e)], z = cls[G.head(2 * e)];
		if (a == z) continue;
		keep.emplace(std::minmax(a, z), e);
	}
	if (keep.size() + 1 != classes)
		throw Error("not a Speiser graph of Nevanlinna-Elfving type: collapsed graph contains a cycle");
	std::vector<std::uint32_t> new_edge(G.edge_count(), kNone);
	{
		std::vector<std::uint32_t> kept;
		for (const auto& [pair, e] : keep) kept.push_back(e);
		std::sort(kept.begin(), kept.end());
		for (std::uint32_t i = 0; i < kept.size(); ++i) new_edge[kept[i]] = i;
	}
	std::vector<std::vector<NeighborRef>> adj(classes);
	std::vector<VertexLabel> labels(classes);
	for (Vertex c = 0; c < classes; ++c)
		for (Dart d : rot[c]) {
			const std::uint32_t e = new_edge[RotationGraph::edge_of(d)];
			if (e == kNone) continue;
			adj[c].push_back({cls[G.head(d)], 2 * e + (d & 1u)});
		}
	for (Vertex v = 0; v < n; ++v) labels[cls[v]].flags |= G.label(v).flags & (vflag::Frontier | vflag::Ray);
	RotationGraph tree;
	try {
		tree = build_graph(classes, adj, labels);
	} catch (const Error&) {
		throw Error("not a Speiser graph of Nevanlinna-Elfving type: collapsed graph is not a tree");
	}
	return TreeTruncation::from_graph(std::move(tree), cls[g.root]);
}

ExtendedGraph standard_model(int ends, std::uint32_t depth, std::uint32_t height) {
	const TreeTruncation t = TreeFamily::standard_model_tree(ends).generate(depth);
	ExtendOptions o;
	o.height = height;
	o.pad = height;
	return extend_tree(t, o);
}

}  // namespace shabat
