#include "shabat/trees.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace shabat {

namespace {

// Generator state of a single vertex. Children are listed in counter-clockwise
// order starting right after the parent dart.
enum class Node : std::uint8_t {
	SpineRoot,  // a = 0
	Spine,      // a = signed position on the spine
	Tooth,      // a = vertices remaining on this path including this one
	Fork,       // two leaves
	HomRoot,
	Hom,
	StarRoot,
	RayRoot,  // root of the standard model tree / cos-sqrt tree
	Ray,
};

struct NodeType {
	Node kind;
	std::int64_t a = 0;
	bool operator<(const NodeType& o) const { return std::tie(kind, a) < std::tie(o.kind, o.a); }
};

NodeType tooth(std::int64_t len) { return {Node::Tooth, len}; }
NodeType leaf() { return tooth(1); }

bool is_power_of_two(std::int64_t k) { return k > 0 && (k & (k - 1)) == 0; }

struct Generator {
	TreeFamily::Kind kind;
	long param;

	NodeType root() const {
		switch (kind) {
		case TreeFamily::Kind::Homogeneous: return {Node::HomRoot};
		case TreeFamily::Kind::Star: return {Node::StarRoot};
		case TreeFamily::Kind::StandardModelTree:
		case TreeFamily::Kind::CosSqrt: return {Node::RayRoot};
		default: return {Node::SpineRoot};
		}
	}

	void branches(std::int64_t k, bool north, std::vector<NodeType>& out) const {
		const std::int64_t a = k < 0 ? -k : k;
		switch (kind) {
		case TreeFamily::Kind::Caterpillar:
			if (north && param > 0) out.push_back(tooth(param));
			break;
		case TreeFamily::Kind::FigureOne: {
			const std::int64_t m = ((k % 4) + 4) % 4;
			if (m == 1 && north) out.push_back(leaf());
			if (m == 2 && !north) out.push_back(tooth(2));
			if (m == 3 && north) out.push_back({Node::Fork});
			break;
		}
		case TreeFamily::Kind::GrowingValence:
			if (k % 2 == 0)
				for (std::int64_t i = 0; i < a / 2; ++i) out.push_back(leaf());
			break;
		case TreeFamily::Kind::UnboundedDistance:
			if (k % 2 == 0 && a > 0) out.push_back(tooth(a / 2));
			break;
		case TreeFamily::Kind::HyperbolicBranches:
			if (north && a > 0) {
				std::int64_t len = 1;
				for (std::int64_t i = 0; i < a && len < (1ll << 40); ++i) len *= param;
				out.push_back(tooth(len));
			}
			break;
		case TreeFamily::Kind::Sutter:
			if (north && k >= 2 && is_power_of_two(k))
				for (std::int64_t i = 0; i < k; ++i) out.push_back(leaf());
			break;
		case TreeFamily::Kind::CosCos:
			if (k % 2 == 0) out.push_back({Node::Ray});
			break;
		default: break;
		}
	}

	std::vector<NodeType> children(const NodeType& t) const {
		std::vector<NodeType> out;
		switch (t.kind) {
		case Node::SpineRoot:
			out.push_back({Node::Spine, 1});
			branches(0, true, out);
			out.push_back({Node::Spine, -1});
			branches(0, false, out);
			break;
		case Node::Spine:
			// east-going spine: parent is west, so south comes first
			branches(t.a, t.a < 0, out);
			out.push_back({Node::Spine, t.a > 0 ? t.a + 1 : t.a - 1});
			branches(t.a, t.a > 0, out);
			break;
		case Node::Tooth:
			if (t.a > 1) out.push_back(tooth(t.a - 1));
			break;
		case Node::Fork: out.assign(2, leaf()); break;
		case Node::HomRoot: out.assign(static_cast<std::size_t>(param), {Node::Hom}); break;
		case Node::Hom: out.assign(static_cast<std::size_t>(param - 1), {Node::Hom}); break;
		case Node::StarRoot: out.assign(static_cast<std::size_t>(param), leaf()); break;
		case Node::RayRoot:
			out.assign(kind == TreeFamily::Kind::CosSqrt ? 1 : static_cast<std::size_t>(param), {Node::Ray});
			break;
		case Node::Ray: out.push_back({Node::Ray}); break;
		}
		return out;
	}

	static bool infinite(const NodeType& t) {
		return t.kind != Node::Tooth && t.kind != Node::Fork && t.kind != Node::StarRoot;
	}
};

Generator generator_of(TreeFamily::Kind kind, long param) { return Generator{kind, param}; }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
	return a >= cap || b >= cap || a + b >= cap ? cap : a + b;
}

}  // namespace

std::vector<Vertex> TreeTruncation::frontier() const {
	std::vector<Vertex> out;
	for (Vertex v = 0; v < vertex_count(); ++v)
		if (is_frontier(v)) out.push_back(v);
	return out;
}

std::vector<Vertex> TreeTruncation::rays() const {
	std::vector<Vertex> out;
	for (Vertex v = 0; v < vertex_count(); ++v)
		if (is_ray(v)) out.push_back(v);
	return out;
}

TreeTruncation TreeTruncation::from_graph(RotationGraph g, Vertex root) {
	const std::size_t n = g.vertex_count();
	if (root >= n) throw Error("root " + std::to_string(root) + " is not a vertex");
	if (g.edge_count() + 1 != n) throw Error("graph is not a tree");
	TreeTruncation t;
	t.root = root;
	t.parent.assign(n, kNone);
	t.level.assign(n, kUnreached);
	std::vector<Vertex> order{root};
	t.level[root] = 0;
	for (std::size_t i = 0; i < order.size(); ++i) {
		const Vertex v = order[i];
		for (Dart d : g.darts_at(v)) {
			const Vertex w = g.head(d);
			if (t.level[w] != kUnreached) continue;
			t.level[w] = t.level[v] + 1;
			t.parent[w] = v;
			order.push_back(w);
		}
	}
	if (order.size() != n) throw Error("graph is not connected");
	bool any_ray = false, any_frontier = false;
	bool proper = true;
	for (Vertex v = 0; v < n; ++v) {
		any_ray |= g.has_flag(v, vflag::Ray);
		any_frontier |= g.has_flag(v, vflag::Frontier);
		if (g.color(v) == Color::None) proper = false;
		for (Dart d : g.darts_at(v))
			if (g.color(v) == g.color(g.head(d))) proper = false;
	}
	if (!proper || (any_frontier && !any_ray)) {
		// recolor from the root; frontier without ray marks counts as rays
		GraphBuilder b(g);
		for (Vertex v = 0; v < n; ++v) {
			if (!proper) b.label(v).color = t.level[v] % 2 == 0 ? Color::Circle : Color::Cross;
			if (!any_ray && (b.label(v).flags & vflag::Frontier)) b.label(v).flags |= vflag::Ray;
		}
		g = b.build();
	}
	t.depth = 0;
	for (auto l : t.level) t.depth = std::max(t.depth, l);
	t.graph = std::move(g);
	return t;
}

TreeFamily TreeFamily::sine() { return {Kind::Sine, "sine", 0}; }
TreeFamily TreeFamily::homogeneous(int valence) {
	if (valence < 2) throw Error("homogeneous tree needs valence >= 2");
	return {Kind::Homogeneous, "homogeneous", valence};
}
TreeFamily TreeFamily::star(int leaves) {
	if (leaves < 1) throw Error("star needs at least one leaf");
	return {Kind::Star, "star", leaves};
}
TreeFamily TreeFamily::caterpillar(int teeth) {
	if (teeth < 0) throw Error("caterpillar tooth length must be nonnegative");
	return {Kind::Caterpillar, "caterpillar", teeth};
}
TreeFamily TreeFamily::figure_one() { return {Kind::FigureOne, "fig1", 0}; }
TreeFamily TreeFamily::growing_valence() { return {Kind::GrowingValence, "fig8", 0}; }
TreeFamily TreeFamily::unbounded_distance() { return {Kind::UnboundedDistance, "fig11", 0}; }
TreeFamily TreeFamily::hyperbolic_branches(int base) {
	if (base < 2) throw Error("growth base must be >= 2");
	return {Kind::HyperbolicBranches, "fig12", base};
}
TreeFamily TreeFamily::sutter() { return {Kind::Sutter, "sutter", 0}; }
TreeFamily TreeFamily::coscos() { return {Kind::CosCos, "coscos", 0}; }
TreeFamily TreeFamily::standard_model_tree(int ends) {
	if (ends < 1) throw Error("standard model tree needs at least one end");
	return {Kind::StandardModelTree, "standard-model-tree", ends};
}
TreeFamily TreeFamily::cos_sqrt() { return {Kind::CosSqrt, "cos-sqrt", 0}; }
TreeFamily TreeFamily::explicit_tree(TreeTruncation t) {
	TreeFamily f(Kind::Explicit, "explicit", 0);
	f.explicit_ = std::make_shared<const TreeTruncation>(std::move(t));
	return f;
}

std::vector<std::string> TreeFamily::builtin_names() {
	return {"sine",  "homogeneous", "star",   "caterpillar", "fig1",     "fig8",
	        "fig11", "fig12",       "sutter", "coscos",      "standard-model-tree", "cos-sqrt"};
}

TreeFamily TreeFamily::from_name(const std::string& name, const std::vector<long>& params) {
	auto arg = [&](long fallback) -> int {
		if (params.size() > 1) throw Error("family " + name + " takes at most one parameter");
		return static_cast<int>(params.empty() ? fallback : params[0]);
	};
	auto none = [&] {
		if (!params.empty()) throw Error("family " + name + " takes no parameters");
	};
	if (name == "sine") return none(), sine();
	if (name == "homogeneous") return homogeneous(arg(3));
	if (name == "star") return star(arg(3));
	if (name == "caterpillar") return caterpillar(arg(1));
	if (name == "fig1") return none(), figure_one();
	if (name == "fig8") return none(), growing_valence();
	if (name == "fig11") return none(), unbounded_distance();
	if (name == "fig12") return hyperbolic_branches(arg(2));
	if (name == "sutter") return none(), sutter();
	if (name == "coscos") return none(), coscos();
	if (name == "standard-model-tree" || name == "standard-model") return standard_model_tree(arg(1));
	if (name == "cos-sqrt") return none(), cos_sqrt();
	throw Error("unknown tree family '" + name + "'");
}

std::string TreeFamily::describe() const {
	std::ostringstream os;
	os << "family " << name_;
	switch (kind_) {
	case Kind::Homogeneous:
	case Kind::Star:
	case Kind::Caterpillar:
	case Kind::HyperbolicBranches:
	case Kind::StandardModelTree: os << ' ' << param_; break;
	default: break;
	}
	return os.str();
}

TreeTruncation TreeFamily::generate(std::uint32_t depth) const {
	if (kind_ == Kind::Explicit) {
		const TreeTruncation& src = *explicit_;
		if (depth >= src.depth) return src;
		std::vector<Vertex> keep;
		for (Vertex v = 0; v < src.vertex_count(); ++v)
			if (src.level[v] <= depth) keep.push_back(v);
		// a cut vertex is a ray if some frontier ray lies beyond it
		std::vector<bool> reaches_ray(src.vertex_count(), false);
		std::vector<Vertex> order(src.vertex_count());
		for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
		std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return src.level[a] > src.level[b]; });
		for (Vertex v : order) {
			if (src.is_ray(v)) reaches_ray[v] = true;
			if (reaches_ray[v] && src.parent[v] != kNone) reaches_ray[src.parent[v]] = true;
		}
		RotationGraph sub = induced_subgraph(src.graph, keep);
		GraphBuilder b(sub);
		for (Vertex i = 0; i < keep.size(); ++i) {
			const Vertex v = keep[i];
			if (src.level[v] == depth && src.graph.degree(v) > sub.degree(i)) {
				b.label(i).flags |= vflag::Frontier;
				if (reaches_ray[v]) b.label(i).flags |= vflag::Ray;
			}
		}
		const Vertex root = static_cast<Vertex>(std::lower_bound(keep.begin(), keep.end(), src.root) - keep.begin());
		TreeTruncation t = TreeTruncation::from_graph(b.build(), root);
		t.depth = depth;
		return t;
	}

	if (count_vertices(depth, kVertexBudget + 1) > kVertexBudget)
		throw Error("truncation of " + describe() + " at depth " + std::to_string(depth) +
		            " exceeds the vertex budget");
	const Generator gen = generator_of(kind_, param_);
	std::vector<NodeType> type{gen.root()};
	std::vector<Vertex> parent{kNone};
	std::vector<std::uint32_t> level{0};
	std::vector<VertexLabel> labels;
	for (std::size_t v = 0; v < type.size(); ++v) {
		VertexLabel lab;
		lab.color = level[v] % 2 == 0 ? Color::Circle : Color::Cross;
		std::vector<NodeType> kids = gen.children(type[v]);
		if (level[v] == depth) {
			if (!kids.empty()) {
				lab.flags |= vflag::Frontier;
				if (Generator::infinite(type[v])) lab.flags |= vflag::Ray;
			}
		} else {
			for (const NodeType& c : kids) {
				type.push_back(c);
				parent.push_back(static_cast<Vertex>(v));
				level.push_back(level[v] + 1);
			}
		}
		labels.push_back(lab);
	}
	TreeTruncation t;
	t.graph = RotationGraph::from_parents(parent, std::move(labels));
	t.depth = depth;
	t.root = 0;
	t.parent = std::move(parent);
	t.level = std::move(level);
	return t;
}

std::uint64_t TreeFamily::count_vertices(std::uint32_t depth, std::uint64_t cap) const {
	if (kind_ == Kind::Explicit) {
		std::uint64_t c = 0;
		for (auto l : explicit_->level) c += l <= depth;
		return std::min(c, cap);
	}
	const Generator gen = generator_of(kind_, param_);
	std::map<std::pair<NodeType, std::uint32_t>, std::uint64_t> memo;
	auto count = [&](auto&& self, const NodeType& t, std::uint32_t rem) -> std::uint64_t {
		if (rem == 0) return 1;
		// a tooth longer than the remaining depth behaves like a ray
		NodeType key = t;
		if (key.kind == Node::Tooth && key.a > static_cast<std::int64_t>(rem) + 1) key.a = rem + 1;
		auto it = memo.find({key, rem});
		if (it != memo.end()) return it->second;
		std::uint64_t total = 1;
		for (const NodeType& c : gen.children(key)) total = sat_add(total, self(self, c, rem - 1), cap);
		memo.emplace(std::make_pair(key, rem), total);
		return total;
	};
	return count(count, gen.root(), depth);
}

std::uint32_t TreeFamily::max_feasible_depth(std::uint32_t max_depth, std::uint64_t budget) const {
	std::uint32_t d = max_depth;
	while (d > 0 && count_vertices(d, budget + 1) > budget) --d;
	return d;
}

}  // namespace shabat
