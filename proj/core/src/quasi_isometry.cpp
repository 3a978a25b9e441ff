#include "shabat/quasi_isometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>

namespace shabat {

std::uint32_t exact_radius_of(const RotationGraph& g, Vertex root) {
	const std::uint8_t bad = vflag::Artifact | vflag::Frontier;
	std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
	std::deque<Vertex> q{root};
	dist[root] = 0;
	while (!q.empty()) {
		const Vertex v = q.front();
		q.pop_front();
		if (g.has_flag(v, bad)) return dist[v];
		for (Dart d : g.darts_at(v)) {
			const Vertex w = g.head(d);
			if (dist[w] == kUnreached) {
				dist[w] = dist[v] + 1;
				q.push_back(w);
			}
		}
	}
	return kUnreached;
}

double QIWitness::C_at(double kk) const {
	for (const auto& [gk, gc] : grid)
		if (std::abs(gk - kk) < 1e-12) return gc;
	throw Error("k is not on the grid");
}

QIWitness verify_qi(const GraphMap& m, const QIOptions& opt) {
	const RotationGraph& src = *m.source;
	const RotationGraph& dst = *m.target;
	if (m.image.size() != src.vertex_count()) throw Error("map is not total");
	const std::uint32_t rho = opt.sample_radius;
	const std::vector<std::uint32_t> from_root = bfs_distances(src, std::span<const Vertex>(&m.source_root, 1), rho);
	std::vector<Vertex> sample;
	for (Vertex v = 0; v < src.vertex_count(); ++v)
		if (from_root[v] <= rho) sample.push_back(v);
	const Vertex target_root = m.image[m.source_root];
	const std::vector<std::uint32_t> target_from_root = bfs_distances(dst, std::span<const Vertex>(&target_root, 1));
	std::uint32_t rho_t = 0;
	for (Vertex v : sample) {
		const Vertex w = m.image[v];
		if (w >= dst.vertex_count()) throw Error("image vertex " + std::to_string(w) + " does not exist");
		if (target_from_root[w] == kUnreached) throw Error("image is not connected to the target root");
		rho_t = std::max(rho_t, target_from_root[w]);
	}
	if (m.source_exact != kUnreached && m.source_exact <= 3 * rho)
		throw Error("sample ball of radius " + std::to_string(rho) + " exceeds the exact source region (radius " +
		            std::to_string(m.source_exact) + ")");
	if (m.target_exact != kUnreached && m.target_exact <= 3 * rho_t)
		throw Error("image ball of radius " + std::to_string(rho_t) + " exceeds the exact target region (radius " +
		            std::to_string(m.target_exact) + ")");

	QIWitness w;
	w.sample_size = sample.size();
	const std::size_t n = sample.size();
	const std::size_t all_pairs = n * (n - 1) / 2;
	w.exhaustive = opt.force_exhaustive || all_pairs <= opt.exhaustive_limit;
	std::vector<Vertex> sources = sample;
	if (!w.exhaustive) {
		std::mt19937_64 rng(opt.seed);
		std::shuffle(sources.begin(), sources.end(), rng);
		const std::size_t want = std::max<std::size_t>(1, (opt.sample_pairs + n - 1) / n);
		sources.resize(std::min(want, sources.size()));
		std::sort(sources.begin(), sources.end());
	}
	std::vector<double> C(opt.k_grid.size(), 0.0);
	std::vector<std::size_t> sample_pos(src.vertex_count(), kNone);
	for (std::size_t i = 0; i < n; ++i) sample_pos[sample[i]] = i;
	const bool has_tree = !m.tree_part.empty();
	for (Vertex x : sources) {
		const auto d1 = bfs_distances(src, std::span<const Vertex>(&x, 1), 2 * rho);
		const Vertex fx = m.image[x];
		const auto d2 = bfs_distances(dst, std::span<const Vertex>(&fx, 1), 2 * rho_t);
		for (Vertex y : sample) {
			if (y == x || (w.exhaustive && sample_pos[y] < sample_pos[x])) continue;
			++w.pairs;
			const double a = d1[y], b = d2[m.image[y]];
			for (std::size_t i = 0; i < C.size(); ++i) {
				const double k = opt.k_grid[i];
				const double c = std::max({b - k * a, a / k - b, 0.0});
				if (c > C[i]) {
					C[i] = c;
					if (k == 1.0) w.worst = {x, y};
				}
			}
			if (has_tree && m.tree_part[x] && m.tree_part[y])
				w.tree_part_C = std::max({w.tree_part_C, b - a, a - b});
		}
	}
	for (std::size_t i = 0; i < C.size(); ++i) w.grid.emplace_back(opt.k_grid[i], C[i]);
	w.k = 1.0;
	w.C = C.empty() ? 0.0 : C[0];
	for (std::size_t i = 0; i < C.size(); ++i)
		if (opt.k_grid[i] == 1.0) w.C = C[i];

	// cover radius: every target vertex of the image ball lies near the image
	std::vector<Vertex> images(m.image.begin(), m.image.end());
	std::sort(images.begin(), images.end());
	images.erase(std::unique(images.begin(), images.end()), images.end());
	const auto cover = bfs_distances(dst, images);
	for (Vertex v = 0; v < dst.vertex_count(); ++v)
		if (target_from_root[v] <= rho_t) w.epsilon = std::max(w.epsilon, cover[v]);
	return w;
}

std::uint32_t max_branch_size(const TreeTruncation& t, const Kernel& k) {
	const RotationGraph& g = t.graph;
	std::vector<std::uint32_t> comp(g.vertex_count(), kNone);
	std::uint32_t best = 0;
	for (Vertex s = 0; s < g.vertex_count(); ++s) {
		if (k.has(s) || comp[s] != kNone) continue;
		std::vector<Vertex> stack{s};
		comp[s] = s;
		std::uint32_t size = 0;
		bool open = false;
		while (!stack.empty()) {
			const Vertex v = stack.back();
			stack.pop_back();
			++size;
			open |= t.is_frontier(v);
			for (Dart d : g.darts_at(v)) {
				const Vertex u = g.head(d);
				if (k.has(u) || comp[u] != kNone) continue;
				comp[u] = s;
				stack.push_back(u);
			}
		}
		if (!open) best = std::max(best, size);
	}
	return best;
}

GraphMap build_phi(const TreeTruncation& t, const Kernel& k, const std::vector<Vertex>& kernel_ids,
                   const ExtendedGraph& ext_t, const ExtendedGraph& ext_k) {
	if (ext_t.base_vertex_count != t.vertex_count()) throw Error("extension does not match the tree");
	if (ext_k.base_vertex_count != kernel_ids.size()) throw Error("extension does not match the kernel");
	std::vector<Vertex> new_id(t.vertex_count(), kNone);
	for (Vertex i = 0; i < kernel_ids.size(); ++i) new_id[kernel_ids[i]] = i;
	const std::vector<Vertex> pm = parent_map(t, k);

	GraphMap m;
	m.source = &ext_t.graph;
	m.target = &ext_k.graph;
	m.name = "parent-map";
	m.source_root = ext_t.root;
	m.image.assign(ext_t.graph.vertex_count(), kNone);
	m.tree_part.assign(ext_t.graph.vertex_count(), false);
	for (Vertex v = 0; v < t.vertex_count(); ++v) {
		m.image[v] = new_id[pm[v]];
		m.tree_part[v] = true;
	}
	std::map<Vertex, std::size_t> by_start;
	for (std::size_t q = 0; q < ext_k.patches.size(); ++q) by_start[ext_k.patches[q].boundary.front()] = q;
	if (ext_t.patches.size() != ext_k.patches.size())
		throw Error("component correspondence failure: " + std::to_string(ext_t.patches.size()) + " vs " +
		            std::to_string(ext_k.patches.size()) + " patches");
	for (const Patch& p : ext_t.patches) {
		if (p.shape != Patch::Shape::HalfPlane) throw Error("component correspondence failure: closed boundary");
		const Vertex start = new_id[p.boundary.front()];
		auto it = by_start.find(start);
		if (start == kNone || it == by_start.end())
			throw Error("component correspondence failure at leaf " + std::to_string(p.boundary.front()));
		const Patch& q = ext_k.patches[it->second];
		const std::int32_t mlen = static_cast<std::int32_t>(p.boundary.size()) - 1;
		std::vector<std::int32_t> pi(p.boundary.size(), 0);
		for (std::size_t i = 1; i < p.boundary.size(); ++i)
			pi[i] = pi[i - 1] + (k.has(p.boundary[i - 1]) && k.has(p.boundary[i]) ? 1 : 0);
		const std::int32_t mk = pi.back();
		for (std::uint32_t r = 0; r <= p.height; ++r)
			for (std::int32_t c = p.col_min; c <= p.col_max; ++c) {
				const Vertex v = p.at(c, r);
				if (v == kNone || v < ext_t.base_vertex_count) continue;
				const std::int32_t tc = c < 0 ? c : c > mlen ? mk + (c - mlen) : pi[static_cast<std::size_t>(c)];
				const Vertex img = q.at(tc, r);
				if (img == kNone)
					throw Error("kernel extension lacks the image of column " + std::to_string(c) + ", row " +
					            std::to_string(r));
				m.image[v] = img;
			}
	}
	for (Vertex v = 0; v < m.image.size(); ++v)
		if (m.image[v] == kNone) throw Error("vertex " + std::to_string(v) + " has no image");
	m.source_exact = ext_t.exact_radius();
	m.target_exact = ext_k.exact_radius();
	return m;
}

GraphMap dual_to_extension_map(const RotationGraph& dual, const ExtendedGraph& ext) {
	const FaceSet faces = trace_faces(ext.graph);
	if (dual.vertex_count() != faces.size() || dual.edge_count() != ext.graph.edge_count())
		throw Error("face correspondence failure: dual does not match the extension");
	GraphMap m;
	m.source = &dual;
	m.target = &ext.graph;
	m.name = "dual-to-extension";
	m.image.assign(faces.size(), kNone);
	std::vector<bool> bad(faces.size(), false);
	for (std::size_t f = 0; f < faces.size(); ++f) {
		for (Dart d : faces.faces[f]) {
			const Vertex v = ext.graph.origin(d);
			m.image[f] = std::min(m.image[f], v);
			if (ext.graph.has_flag(v, vflag::Artifact | vflag::Frontier)) bad[f] = true;
		}
	}
	m.source_root = faces.face_of_dart[ext.graph.darts_at(ext.root)[0]];
	std::vector<std::uint32_t> dist = bfs_distances(dual, std::span<const Vertex>(&m.source_root, 1));
	m.source_exact = kUnreached;
	for (std::size_t f = 0; f < faces.size(); ++f)
		if (bad[f]) m.source_exact = std::min(m.source_exact, dist[f]);
	m.target_exact = exact_radius_of(ext.graph, m.image[m.source_root]);
	return m;
}

namespace {

std::vector<std::uint32_t> base_degrees(const ExtendedGraph& x) {
	const auto nb = x.base_vertex_count;
	std::vector<std::uint32_t> deg(nb, 0);
	for (Vertex v = 0; v < nb; ++v)
		for (Dart d : x.graph.darts_at(v))
			if (x.graph.head(d) < nb) ++deg[v];
	return deg;
}

}  // namespace

GraphMap standard_model_map(const ExtendedGraph& ext_k, const ExtendedGraph& sigma) {
	const RotationGraph& g = ext_k.graph;
	const auto nb = ext_k.base_vertex_count;
	if (ext_k.patches.size() != sigma.patches.size())
		throw Error("end-count mismatch: " + std::to_string(ext_k.patches.size()) + " vs " +
		            std::to_string(sigma.patches.size()));
	// hub: hull of the branching vertices
	std::vector<std::uint32_t> deg = base_degrees(ext_k);
	std::vector<bool> hub(nb, false);
	bool any = false;
	for (Vertex v = 0; v < nb; ++v)
		if (deg[v] > 2) hub[v] = any = true;
	if (!any) {
		hub[ext_k.root] = true;
	} else {
		std::vector<bool> alive(nb, true);
		std::deque<Vertex> q;
		for (Vertex v = 0; v < nb; ++v)
			if (deg[v] <= 1 && !hub[v]) q.push_back(v);
		while (!q.empty()) {
			const Vertex v = q.front();
			q.pop_front();
			alive[v] = false;
			for (Dart d : g.darts_at(v)) {
				const Vertex u = g.head(d);
				if (u >= nb || !alive[u]) continue;
				if (--deg[u] == 1 && !hub[u]) q.push_back(u);
			}
		}
		for (Vertex v = 0; v < nb; ++v) hub[v] = alive[v];
	}
	// distance to the hub inside the base tree
	std::vector<std::uint32_t> hd(nb, kUnreached);
	std::deque<Vertex> q;
	for (Vertex v = 0; v < nb; ++v)
		if (hub[v]) {
			hd[v] = 0;
			q.push_back(v);
		}
	while (!q.empty()) {
		const Vertex v = q.front();
		q.pop_front();
		for (Dart d : g.darts_at(v)) {
			const Vertex u = g.head(d);
			if (u < nb && hd[u] == kUnreached) {
				hd[u] = hd[v] + 1;
				q.push_back(u);
			}
		}
	}
	// sigma rays: vertex at distance s from the center along ray j
	const auto sb = sigma.base_vertex_count;
	const std::size_t N = sigma.patches.size();
	std::vector<std::vector<Vertex>> sray(N);
	for (std::size_t j = 0; j < N; ++j) {
		const auto& bd = sigma.patches[j].boundary;
		// the walk runs down ray j to the center first
		std::size_t mid = 0;
		while (mid < bd.size() && bd[mid] != sigma.root) ++mid;
		if (mid == bd.size()) throw Error("standard model walk misses its center");
		for (std::size_t s = 0; s <= mid; ++s) sray[j].push_back(bd[mid - s]);
	}
	const std::uint32_t Ds = static_cast<std::uint32_t>(sray[0].size() - 1);
	GraphMap m;
	m.source = &g;
	m.target = &sigma.graph;
	m.name = "standard-model";
	m.source_root = ext_k.root;
	m.image.assign(g.vertex_count(), kNone);
	std::vector<std::uint32_t> ray_of(nb, kNone);
	for (std::size_t j = 0; j < N; ++j) {
		Vertex v = ext_k.patches[j].boundary.front();
		while (!hub[v]) {
			ray_of[v] = static_cast<std::uint32_t>(j);
			Vertex next = kNone;
			for (Dart d : g.darts_at(v))
				if (g.head(d) < nb && hd[g.head(d)] + 1 == hd[v]) next = g.head(d);
			v = next;
		}
	}
	for (Vertex v = 0; v < nb; ++v) {
		if (hub[v]) {
			m.image[v] = sigma.root;
			continue;
		}
		if (ray_of[v] == kNone) throw Error("vertex " + std::to_string(v) + " is neither hub nor ray");
		if (hd[v] > Ds) throw Error("standard model too shallow for ray vertex " + std::to_string(v));
		m.image[v] = sray[ray_of[v]][hd[v]];
	}
	(void)sb;
	for (std::size_t j = 0; j < N; ++j) {
		const Patch& p = ext_k.patches[j];
		const Patch& s = sigma.patches[j];
		const std::int32_t mlen = static_cast<std::int32_t>(p.boundary.size()) - 1;
		std::vector<std::int32_t> col(p.boundary.size());
		bool passed = false;
		for (std::size_t i = 0; i < p.boundary.size(); ++i) {
			const Vertex x = p.boundary[i];
			if (hub[x]) {
				passed = true;
				col[i] = static_cast<std::int32_t>(Ds);
			} else {
				col[i] = static_cast<std::int32_t>(passed ? Ds + hd[x] : Ds - hd[x]);
			}
		}
		for (std::uint32_t r = 0; r <= p.height; ++r)
			for (std::int32_t c = p.col_min; c <= p.col_max; ++c) {
				const Vertex v = p.at(c, r);
				if (v == kNone || v < nb) continue;
				const std::int32_t tc =
				    c < 0 ? c : c > mlen ? static_cast<std::int32_t>(2 * Ds) + (c - mlen) : col[static_cast<std::size_t>(c)];
				const Vertex img = s.at(tc, r);
				if (img == kNone)
					throw Error("standard model lacks the image of column " + std::to_string(c) + ", row " +
					            std::to_string(r));
				m.image[v] = img;
			}
	}
	for (Vertex v = 0; v < m.image.size(); ++v)
		if (m.image[v] == kNone) throw Error("vertex " + std::to_string(v) + " has no image");
	m.source_exact = ext_k.exact_radius();
	m.target_exact = exact_radius_of(sigma.graph, m.image[m.source_root]);
	return m;
}

}  // namespace shabat
