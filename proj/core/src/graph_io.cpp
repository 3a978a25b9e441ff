#include "shabat/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace shabat {
namespace {

struct FlagName {
	std::uint8_t bit;
	const char* name;
};
constexpr FlagName kFlags[] = {{vflag::Frontier, "frontier"},
                               {vflag::Ray, "ray"},
                               {vflag::Lattice, "lattice"},
                               {vflag::Artifact, "artifact"},
                               {vflag::Ideal, "ideal"}};

std::uint32_t parse_uint(const std::string& tok, std::size_t line) {
	std::uint32_t value = 0;
	auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
	if (ec != std::errc() || ptr != tok.data() + tok.size()) {
		std::ostringstream os;
		os << "line " << line << ": expected an integer, got '" << tok << "'";
		throw Error(os.str());
	}
	return value;
}

}  // namespace

void write_text(std::ostream& os, const RotationGraph& g, const std::string& name, bool explicit_darts) {
	os << "graph " << (name.empty() ? "g" : name) << ' ' << g.vertex_count() << '\n';
	for (Vertex v = 0; v < g.vertex_count(); ++v) {
		os << "v " << v;
		for (Dart d : g.darts_at(v)) {
			os << ' ' << g.head(d);
			if (explicit_darts) os << '#' << d;
		}
		const auto& lab = g.label(v);
		if (lab.color == Color::Circle) os << " circle";
		if (lab.color == Color::Cross) os << " cross";
		for (const auto& f : kFlags)
			if (lab.flags & f.bit) os << ' ' << f.name;
		os << '\n';
	}
}

std::string to_text(const RotationGraph& g, const std::string& name, bool explicit_darts) {
	std::ostringstream os;
	write_text(os, g, name, explicit_darts);
	return os.str();
}

ParsedGraph read_text(std::istream& is) {
	ParsedGraph out;
	std::string line;
	std::size_t lineno = 0;
	std::size_t n = 0;
	bool have_header = false;
	std::vector<std::vector<NeighborRef>> adj;
	std::vector<VertexLabel> labels;
	std::vector<bool> seen;
	while (std::getline(is, line)) {
		++lineno;
		if (auto hash = line.find("//"); hash != std::string::npos) line.erase(hash);
		std::istringstream ls(line);
		std::string key;
		if (!(ls >> key) || key[0] == '%') continue;
		if (key == "graph") {
			std::string count;
			if (!(ls >> out.name >> count)) throw Error("line " + std::to_string(lineno) + ": malformed graph header");
			n = parse_uint(count, lineno);
			adj.assign(n, {});
			labels.assign(n, {});
			seen.assign(n, false);
			have_header = true;
		} else if (key == "v") {
			if (!have_header) throw Error("line " + std::to_string(lineno) + ": vertex before graph header");
			std::string tok;
			ls >> tok;
			const Vertex v = parse_uint(tok, lineno);
			if (v >= n) throw Error("line " + std::to_string(lineno) + ": vertex id out of range");
			if (seen[v]) throw Error("line " + std::to_string(lineno) + ": duplicate vertex " + tok);
			seen[v] = true;
			while (ls >> tok) {
				if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
					NeighborRef ref;
					if (auto at = tok.find('#'); at != std::string::npos) {
						ref.vertex = parse_uint(tok.substr(0, at), lineno);
						ref.dart = parse_uint(tok.substr(at + 1), lineno);
					} else {
						ref.vertex = parse_uint(tok, lineno);
					}
					adj[v].push_back(ref);
					continue;
				}
				if (tok == "circle") labels[v].color = Color::Circle;
				else if (tok == "cross") labels[v].color = Color::Cross;
				else {
					bool ok = false;
					for (const auto& f : kFlags)
						if (tok == f.name) {
							labels[v].flags |= f.bit;
							ok = true;
						}
					if (!ok) throw Error("line " + std::to_string(lineno) + ": unknown flag '" + tok + "'");
				}
			}
		} else {
			auto& rec = out.records[key];
			std::string tok;
			while (ls >> tok) rec.push_back(parse_uint(tok, lineno));
		}
	}
	if (!have_header) throw Error("missing graph header");
	for (std::size_t v = 0; v < n; ++v)
		if (!seen[v]) throw Error("vertex " + std::to_string(v) + " has no record");
	out.graph = build_graph(n, adj, std::move(labels));
	return out;
}

ParsedGraph parse_text(const std::string& text) {
	std::istringstream is(text);
	return read_text(is);
}

void write_dot(std::ostream& os, const RotationGraph& g, const std::string& name) {
	os << "graph \"" << name << "\" {\n  node [label=\"\", width=0.15, height=0.15];\n";
	for (Vertex v = 0; v < g.vertex_count(); ++v) {
		const auto& lab = g.label(v);
		os << "  " << v << " [";
		if (lab.flags & vflag::Lattice) os << "shape=point, color=gray";
		else if (lab.flags & vflag::Ideal) os << "shape=doublecircle";
		else if (lab.color == Color::Circle) os << "shape=circle";
		else if (lab.color == Color::Cross) os << "shape=box";
		else os << "shape=point";
		if (lab.flags & vflag::Ray) os << ", color=red";
		else if (lab.flags & vflag::Frontier) os << ", color=orange";
		os << "];\n";
	}
	for (Dart d = 0; d < g.dart_count(); d += 2) {
		os << "  " << g.origin(d) << " -- " << g.head(d);
		if (g.has_flag(g.origin(d), vflag::Lattice) || g.has_flag(g.head(d), vflag::Lattice))
			os << " [color=gray]";
		os << ";\n";
	}
	os << "}\n";
}

std::string to_dot(const RotationGraph& g, const std::string& name) {
	std::ostringstream os;
	write_dot(os, g, name);
	return os.str();
}

}  // namespace shabat
