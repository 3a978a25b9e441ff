#include "shabat/type_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace shabat {

const char* verdict_name(Verdict v) {
	switch (v) {
	case Verdict::Parabolic: return "parabolic-evidence";
	case Verdict::Hyperbolic: return "hyperbolic-evidence";
	default: return "inconclusive";
	}
}

double TypeVerdict::measure(const std::string& key) const {
	for (const auto& [k, v] : measured)
		if (k == key) return v;
	throw Error("no measurement named " + key);
}

Verdict classify_trend(const std::vector<double>& scale, const std::vector<double>& trace, const Thresholds& th,
                       bool allow_hyperbolic) {
	const std::size_t L = trace.size();
	if (scale.size() != L) throw Error("scale and trace lengths differ");
	if (L >= th.doublings + 1 && th.doublings > 0) {
		bool grows = true;
		for (std::size_t i = L - th.doublings; i < L; ++i) {
			const double doublings = std::log2(scale[i] / scale[i - 1]);
			if (!(doublings > 0) || !((trace[i] - trace[i - 1]) / doublings >= th.delta)) grows = false;
		}
		if (grows) return Verdict::Parabolic;
	}
	if (allow_hyperbolic && L >= 3 && std::isfinite(trace[L - 1])) {
		const double tail = trace[L - 1] - trace[L - 3];
		if (tail >= -1e-12 && tail < th.tau) return Verdict::Hyperbolic;
	}
	return Verdict::Inconclusive;
}

namespace {

std::vector<double> as_doubles(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

std::uint32_t nearest_artifact(const RotationGraph& g, Vertex root) {
	const std::vector<std::uint32_t> dist = bfs_distances(g, std::span<const Vertex>(&root, 1));
	std::uint32_t best = kUnreached;
	for (Vertex v = 0; v < g.vertex_count(); ++v)
		if (g.has_flag(v, vflag::Artifact | vflag::Frontier)) best = std::min(best, dist[v]);
	return best;
}

}  // namespace

TypeVerdict nested_annuli_test(const EdgeNetwork& net, const std::vector<Annulus>& annuli,
                               const std::vector<std::uint32_t>& checkpoints, const Thresholds& th) {
	const RotationGraph& g = net.graph();
	std::vector<bool> used(g.edge_count(), false);
	for (std::size_t i = 0; i < annuli.size(); ++i) {
		validate_annulus(g, annuli[i]);
		for (auto e : annuli[i].edges) {
			if (used[e]) throw Error("annuli " + std::to_string(i) + " and an earlier one share edge " + std::to_string(e));
			used[e] = true;
		}
	}
	std::vector<Vertex> frontier;
	for (Vertex v = 0; v < g.vertex_count(); ++v)
		if (g.has_flag(v, vflag::Frontier)) frontier.push_back(v);
	for (std::size_t i = 1; i < annuli.size(); ++i) {
		// from beyond annulus i, without crossing it, annulus i-1 stays unreachable
		std::vector<bool> cut(g.edge_count(), false), target(g.vertex_count(), false), seen(g.vertex_count(), false);
		for (auto e : annuli[i].edges) cut[e] = true;
		for (Vertex v : annuli[i - 1].inner) target[v] = true;
		std::queue<Vertex> q;
		auto seed = [&](Vertex v) {
			if (!seen[v]) {
				seen[v] = true;
				q.push(v);
			}
		};
		for (Vertex v : annuli[i].outer) seed(v);
		for (Vertex v : frontier) seed(v);
		while (!q.empty()) {
			const Vertex v = q.front();
			q.pop();
			if (target[v])
				throw Error("annuli " + std::to_string(i - 1) + " and " + std::to_string(i) +
				            " are not nested: vertex " + std::to_string(v) + " reached from outside");
			for (Dart d : g.darts_at(v)) {
				if (cut[RotationGraph::edge_of(d)]) continue;
				seed(g.head(d));
			}
		}
	}
	TypeVerdict out;
	out.criterion = "nested-annuli";
	out.thresholds = th;
	std::vector<double> partial{0.0};
	for (const Annulus& a : annuli) {
		const double m = modulus_of_annulus(net, a);
		out.series.push_back(m);
		partial.push_back(partial.back() + 1.0 / m);
	}
	for (auto c : checkpoints) {
		if (c == 0 || c > annuli.size())
			throw Error("checkpoint " + std::to_string(c) + " outside 1.." + std::to_string(annuli.size()));
		out.scale.push_back(c);
		out.trace.push_back(partial[c]);
	}
	out.verdict = classify_trend(out.scale, out.trace, th, false);
	return out;
}

std::vector<double> resistance_profile(const RotationGraph& g, Vertex root, const std::vector<std::uint32_t>& depths) {
	if (depths.empty()) return {};
	const std::uint32_t D = *std::max_element(depths.begin(), depths.end());
	const std::vector<std::uint32_t> dist = bfs_distances(g, std::span<const Vertex>(&root, 1), D);
	const EdgeNetwork net(g);
	std::vector<double> out;
	for (auto d : depths) {
		if (d == 0) throw Error("depth must be positive");
		std::vector<std::uint32_t> edges;
		for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
			const auto a = dist[g.origin(2 * e)], b = dist[g.head(2 * e)];
			if (a <= d && b <= d && !(a == d && b == d)) edges.push_back(e);
		}
		std::vector<Vertex> sphere;
		for (Vertex v = 0; v < g.vertex_count(); ++v)
			if (dist[v] == d) sphere.push_back(v);
		if (sphere.empty()) throw Error("graph has no vertex at distance " + std::to_string(d));
		out.push_back(effective_resistance_on(net, edges, std::span<const Vertex>(&root, 1), sphere));
	}
	return out;
}

namespace {

TypeVerdict resistance_verdict(const std::vector<std::uint32_t>& depths, std::vector<double> r, const Thresholds& th) {
	for (std::size_t i = 1; i < r.size(); ++i)
		if (r[i] < r[i - 1] * (1 - 1e-9) - 1e-12)
			throw Error("builder inconsistency: resistance decreased from depth " + std::to_string(depths[i - 1]) +
			            " to " + std::to_string(depths[i]));
	TypeVerdict out;
	out.criterion = "resistance";
	out.thresholds = th;
	out.scale = as_doubles(depths);
	out.trace = std::move(r);
	out.verdict = classify_trend(out.scale, out.trace, th, true);
	if (out.trace.size() >= 3) out.measured.emplace_back("tail", out.trace.back() - out.trace[out.trace.size() - 3]);
	return out;
}

}  // namespace

TypeVerdict resistance_to_infinity(const DepthBuilder& build, const std::vector<std::uint32_t>& depths,
                                   const Thresholds& th) {
	std::vector<double> r;
	for (auto d : depths) {
		auto [g, root] = build(d);
		r.push_back(resistance_profile(g, root, {d})[0]);
	}
	return resistance_verdict(depths, std::move(r), th);
}

TypeVerdict resistance_to_infinity(const RotationGraph& g, Vertex root, const std::vector<std::uint32_t>& depths,
                                   const Thresholds& th) {
	return resistance_verdict(depths, resistance_profile(g, root, depths), th);
}

TypeVerdict nevanlinna_wittich(const SpeiserGraph& s, const std::vector<std::uint32_t>& checkpoints,
                               const Thresholds& th) {
	const RotationGraph& g = s.graph;
	std::vector<bool> accessible(g.vertex_count(), false);
	for (const SpeiserFace& f : s.faces) {
		if (f.kind != FaceKind::Unbounded) continue;
		for (Dart d : f.darts) accessible[g.origin(d)] = accessible[g.head(d)] = true;
		if (f.darts.empty() && f.anchor != kNone) accessible[g.origin(f.anchor)] = true;
	}
	for (Vertex v = 0; v < g.vertex_count(); ++v)
		if (!accessible[v])
			throw Error("criterion inapplicable: vertex " + std::to_string(v) + " does not lie on an unbounded face");
	const std::uint32_t N = checkpoints.empty() ? 0 : *std::max_element(checkpoints.begin(), checkpoints.end());
	const std::uint32_t exact = nearest_artifact(g, s.root);
	if (exact <= N)
		throw Error("truncation exact only up to distance " + std::to_string(exact) + ", need " + std::to_string(N + 1));
	const std::vector<std::uint32_t> dist = bfs_distances(g, std::span<const Vertex>(&s.root, 1), N);
	std::vector<double> count(N + 1, 0.0);
	for (Vertex v = 0; v < g.vertex_count(); ++v)
		if (dist[v] <= N && accessible[v]) count[dist[v]] += 1;
	TypeVerdict out;
	out.criterion = "nevanlinna-wittich";
	out.thresholds = th;
	std::vector<double> partial{0.0};
	double worst = 0.0;
	for (std::uint32_t n = 1; n <= N; ++n) {
		out.series.push_back(count[n]);
		partial.push_back(partial.back() + 1.0 / count[n]);
		worst = std::max(worst, count[n] / n);
	}
	for (auto c : checkpoints) {
		if (c == 0) throw Error("checkpoints start at 1");
		out.scale.push_back(c);
		out.trace.push_back(partial[c]);
	}
	out.measured.emplace_back("max_s_over_n", worst);
	out.verdict = classify_trend(out.scale, out.trace, th, false);
	return out;
}

TypeVerdict thomassen_isoperimetric(const RotationGraph& g, Vertex root, const std::vector<std::uint32_t>& radii,
                                    const IsoperimetricOptions& opt) {
	if (radii.empty()) throw Error("need at least one radius");
	const std::uint32_t D = *std::max_element(radii.begin(), radii.end());
	const std::vector<std::uint32_t> dist = bfs_distances(g, std::span<const Vertex>(&root, 1), D + 1);
	const double power = 0.5 + opt.epsilon;
	TypeVerdict out;
	out.criterion = "thomassen";
	out.measured.emplace_back("epsilon", opt.epsilon);
	std::uint32_t max_val = 0;
	for (Vertex v = 0; v < g.vertex_count(); ++v) {
		if (dist[v] == kUnreached) continue;
		if (g.has_flag(v, vflag::Artifact | vflag::Frontier))
			throw Error("truncation not exact: artifact vertex " + std::to_string(v) + " at distance " +
			            std::to_string(dist[v]) + " <= " + std::to_string(D + 1));
		max_val = std::max<std::uint32_t>(max_val, static_cast<std::uint32_t>(g.degree(v)));
	}
	if (max_val > opt.max_valence)
		throw Error("unbounded valence: degree " + std::to_string(max_val) + " within radius " + std::to_string(D));
	out.measured.emplace_back("max_valence", max_val);

	for (auto d : radii) {
		double best = std::numeric_limits<double>::infinity();
		// balls
		std::vector<std::size_t> size(d + 1, 0), bnd(d + 1, 0);
		for (Vertex v = 0; v < g.vertex_count(); ++v) {
			if (dist[v] > d) continue;
			++size[dist[v]];
			for (Dart e : g.darts_at(v))
				if (dist[g.head(e)] == dist[v] + 1) {
					++bnd[dist[v]];
					break;
				}
		}
		std::size_t total = 0;
		for (std::uint32_t r = 0; r <= d; ++r) {
			total += size[r];
			best = std::min(best, static_cast<double>(bnd[r]) / std::pow(static_cast<double>(total), power));
		}
		// greedy growth by least boundary increase
		std::vector<bool> in(g.vertex_count(), false), queued(g.vertex_count(), false);
		std::vector<std::uint32_t> outside(g.vertex_count(), 0);
		std::size_t boundary = 0, members = 0;
		auto delta = [&](Vertex w) {
			int change = 0;
			std::uint32_t out_w = 0;
			for (Dart e : g.darts_at(w)) {
				const Vertex u = g.head(e);
				if (!in[u] && u != w) ++out_w;
			}
			change += out_w > 0;
			for (Dart e : g.darts_at(w)) {
				const Vertex u = g.head(e);
				if (!in[u]) continue;
				std::uint32_t mult = 0;
				bool first = true;
				for (Dart f : g.darts_at(u)) {
					if (g.head(f) == w) ++mult;
				}
				for (Dart f : g.darts_at(w)) {
					if (f == e) break;
					if (g.head(f) == u) first = false;
				}
				if (first && outside[u] == mult) --change;
			}
			return change;
		};
		using Item = std::pair<int, Vertex>;
		std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
		heap.push({0, root});
		queued[root] = true;
		while (!heap.empty()) {
			auto [key, w] = heap.top();
			heap.pop();
			if (in[w]) continue;
			const int now = delta(w);
			if (now != key) {
				heap.push({now, w});
				continue;
			}
			in[w] = true;
			++members;
			std::uint32_t out_w = 0;
			for (Dart e : g.darts_at(w)) {
				const Vertex u = g.head(e);
				if (in[u] && u != w) {
					if (--outside[u] == 0) --boundary;
				} else if (!in[u]) {
					++out_w;
				}
			}
			outside[w] = out_w;
			if (out_w > 0) ++boundary;
			best = std::min(best, static_cast<double>(boundary) / std::pow(static_cast<double>(members), power));
			if (members >= total) break;
			for (Dart e : g.darts_at(w)) {
				const Vertex u = g.head(e);
				if (in[u] || queued[u] || dist[u] > d) continue;
				queued[u] = true;
				heap.push({delta(u), u});
			}
		}
		out.scale.push_back(d);
		out.trace.push_back(best);
	}
	const std::size_t L = out.trace.size();
	out.verdict = Verdict::Inconclusive;
	if (L >= 2 && out.trace[L - 1] > 0 && out.trace[L - 1] >= opt.stability * out.trace[L - 2])
		out.verdict = Verdict::Hyperbolic;
	out.measured.emplace_back("c", out.trace.back());
	return out;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
	if (d == 0) throw Error("zero denominator");
	if (d < 0) n = -n, d = -d;
	const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
	num = n / (g ? g : 1);
	den = d / (g ? g : 1);
}

Rational Rational::operator+(const Rational& o) const {
	const std::int64_t l = std::lcm(den, o.den);
	return {num * (l / den) + o.num * (l / o.den), l};
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }

bool Rational::operator<(const Rational& o) const { return num * o.den < o.num * den; }

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

RamificationResult totally_ramified_test(const std::vector<long>& multiplicities) {
	RamificationResult r;
	r.multiplicities = multiplicities;
	for (long m : multiplicities) {
		if (m == kInfiniteMultiplicity) {
			r.defect_sum = r.defect_sum + Rational(1);
			continue;
		}
		if (m < 2) throw Error("multiplicity " + std::to_string(m) + " is below 2");
		r.defect_sum = r.defect_sum + Rational(m - 1, m);
	}
	r.verdict = r.defect_sum > Rational(2) ? Verdict::Hyperbolic : Verdict::Inconclusive;
	return r;
}

std::vector<long> tree_multiplicities(const TreeTruncation& t) {
	long lo[3] = {0, 0, 0};
	for (Vertex v = 0; v < t.vertex_count(); ++v) {
		if (t.is_frontier(v)) continue;
		const auto c = static_cast<std::size_t>(t.graph.color(v));
		const long d = static_cast<long>(t.graph.degree(v));
		if (lo[c] == 0 || d < lo[c]) lo[c] = d;
	}
	std::vector<long> out;
	for (std::size_t c : {1u, 2u})
		if (lo[c] >= 2) out.push_back(lo[c]);
	out.push_back(kInfiniteMultiplicity);
	return out;
}

PipelineResult analyze_extension(const ExtendedGraph& x, const std::vector<std::uint32_t>& depths,
                                 const Thresholds& th) {
	if (depths.empty()) throw Error("need at least one depth");
	const std::uint32_t D = *std::max_element(depths.begin(), depths.end());
	PipelineResult r;
	r.vertex_count = x.graph.vertex_count();
	r.exact_radius = x.exact_radius();
	if (r.exact_radius < D + 1)
		throw Error("extension exact only up to radius " + std::to_string(r.exact_radius) + ", need " +
		            std::to_string(D + 1));
	r.resistance = resistance_to_infinity(x.graph, x.root, depths, th);
	const EdgeNetwork net(x.graph);
	const std::vector<Annulus> annuli = width_one_annuli(x.graph, x.root, 0, D - 1);
	r.annuli = nested_annuli_test(net, annuli, depths, th);
	for (std::size_t n = 1; n < r.annuli.series.size(); ++n)
		r.max_modulus_ratio = std::max(r.max_modulus_ratio, r.annuli.series[n] / static_cast<double>(n));
	r.annuli.measured.emplace_back("max_mod_over_n", r.max_modulus_ratio);

	r.combined.criterion = "doyle-merenkov";
	r.combined.thresholds = th;
	r.combined.scale = r.resistance.scale;
	r.combined.trace = r.resistance.trace;
	if (r.resistance.verdict == Verdict::Hyperbolic)
		r.combined.verdict = Verdict::Hyperbolic;
	else if (r.resistance.verdict == Verdict::Parabolic || r.annuli.verdict == Verdict::Parabolic)
		r.combined.verdict = Verdict::Parabolic;
	r.combined.note = std::string("resistance ") + verdict_name(r.resistance.verdict) + ", annuli " +
	                  verdict_name(r.annuli.verdict);
	return r;
}

ExtendedGraph build_exact_extension(const TreeFamily& family, std::uint32_t n, std::uint32_t radius,
                                    std::uint32_t* tree_depth) {
	ExtendOptions opt;
	opt.n = n;
	opt.height = radius + 2;
	opt.pad = radius + 2;
	opt.keep_radius = radius + 2;
	for (std::uint32_t T = radius + 2; T <= 4 * radius + 8; T += std::max<std::uint32_t>(4, radius / 2)) {
		const TreeTruncation t = family.generate(T);
		ExtendedGraph x = extend(triangulate_and_dualize(t), opt);
		if (x.exact_radius() >= radius + 1) {
			if (tree_depth) *tree_depth = T;
			return x;
		}
	}
	throw Error("could not build an extension of " + family.describe() + " exact up to radius " +
	            std::to_string(radius + 1));
}

PipelineResult doyle_merenkov_pipeline(const TreeFamily& family, std::uint32_t n,
                                       const std::vector<std::uint32_t>& depths, const Thresholds& th) {
	if (depths.empty()) throw Error("need at least one depth");
	std::uint32_t T = 0;
	const ExtendedGraph x = build_exact_extension(family, n, *std::max_element(depths.begin(), depths.end()), &T);
	PipelineResult r = analyze_extension(x, depths, th);
	r.tree_depth = T;
	return r;
}

PipelineResult standard_model_pipeline(int ends, const std::vector<std::uint32_t>& depths, const Thresholds& th) {
	if (depths.empty()) throw Error("need at least one depth");
	const std::uint32_t D = *std::max_element(depths.begin(), depths.end());
	const TreeTruncation t = TreeFamily::standard_model_tree(ends).generate(D + 2);
	ExtendOptions opt;
	opt.height = D + 2;
	opt.pad = D + 2;
	opt.keep_radius = D + 2;
	PipelineResult r = analyze_extension(extend_tree(t, opt), depths, th);
	r.tree_depth = D + 2;
	return r;
}

}  // namespace shabat
