#include "shabat/report.hpp"

#include "shabat/graph_io.hpp"
#include "shabat/quasi_isometry.hpp"
#include "shabat/speiser.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace shabat {

std::string format_number(double v) {
	if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

void RunReport::set(const std::string& key, const std::string& value) {
	for (auto& [k, v] : entries_)
		if (k == key) {
			v = value;
			return;
		}
	entries_.emplace_back(key, value);
}
void RunReport::set(const std::string& key, double value) { set(key, format_number(value)); }
void RunReport::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }

void RunReport::add_trace(const std::string& criterion, const std::vector<double>& scale,
                          const std::vector<double>& values) {
	for (std::size_t i = 0; i < values.size() && i < scale.size(); ++i) trace_.push_back({criterion, scale[i], values[i]});
}

bool RunReport::has(const std::string& key) const {
	return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

std::string RunReport::get(const std::string& key) const {
	for (const auto& [k, v] : entries_)
		if (k == key) return v;
	throw Error("report has no key " + key);
}

std::string RunReport::to_text() const {
	std::ostringstream os;
	for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
	return os.str();
}

std::string RunReport::to_json() const {
	nlohmann::ordered_json j;
	for (const auto& [k, v] : entries_) j[k] = v;
	nlohmann::ordered_json rows = nlohmann::ordered_json::array();
	for (const auto& r : trace_) rows.push_back({{"criterion", r.criterion}, {"scale", r.scale}, {"value", r.value}});
	j["trace"] = rows;
	return j.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
	std::ostringstream os;
	os << "criterion,scale,value\n";
	for (const auto& r : trace_) os << r.criterion << ',' << format_number(r.scale) << ',' << format_number(r.value) << '\n';
	return os.str();
}

namespace {

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
	std::ostringstream os;
	for (std::size_t i = 0; i < v.size(); ++i) {
		if (i) os << sep;
		if constexpr (std::is_floating_point_v<T>) os << format_number(v[i]);
		else os << v[i];
	}
	return os.str();
}

void put_verdict(RunReport& r, const std::string& prefix, const TypeVerdict& v) {
	r.set(prefix + ".verdict", std::string(verdict_name(v.verdict)));
	r.set(prefix + ".scale", join(v.scale));
	r.set(prefix + ".trace", join(v.trace));
	for (const auto& [k, val] : v.measured) r.set(prefix + "." + k, val);
	if (!v.note.empty()) r.set(prefix + ".note", v.note);
	r.add_trace(prefix, v.scale, v.trace);
}

SpeiserGraph deep_speiser(const TreeFamily& family, std::uint32_t radius) {
	for (std::uint32_t T = radius + 2; T <= 4 * radius + 8; T += std::max<std::uint32_t>(4, radius / 2)) {
		SpeiserGraph s = triangulate_and_dualize(family.generate(T));
		if (exact_radius_of(s.graph, s.root) > radius) return s;
	}
	throw Error("could not build a Speiser graph exact beyond radius " + std::to_string(radius));
}

std::string value_or(const RunReport& r, const std::string& key) { return r.has(key) ? r.get(key) : std::string(); }

std::string banner(const RunReport& r) {
	const std::string hyp = verdict_name(Verdict::Hyperbolic), par = verdict_name(Verdict::Parabolic);
	if (value_or(r, "ramified.verdict") == hyp) return "no true form (totally ramified value)";
	const bool tuc = value_or(r, "tuc.verdict") == "pass";
	const std::string dm = value_or(r, "dm.verdict");
	if (dm == hyp) return "no true form (hyperbolic evidence)";
	if (tuc && dm == par) return "true form exists";
	if (dm == par || value_or(r, "nw.verdict") == par) return "true form exists (parabolic evidence without the uniformness condition)";
	if (value_or(r, "thomassen.verdict") == hyp) return "no true form (isoperimetric evidence)";
	return "undetermined";
}

}  // namespace

std::vector<std::uint32_t> feasible_schedule(const TreeFamily& family, const std::vector<std::uint32_t>& depths,
                                             std::uint64_t budget) {
	if (depths.empty()) return depths;
	const std::uint32_t D = *std::max_element(depths.begin(), depths.end());
	if (family.count_vertices(D, budget + 1) <= budget) return depths;
	const std::uint32_t F = family.max_feasible_depth(D, budget);
	std::vector<std::uint32_t> out;
	for (std::uint32_t q = 1; q <= 4; ++q) {
		const std::uint32_t s = q == 4 ? F : F * q / 4;
		if (s > 0 && (out.empty() || s > out.back())) out.push_back(s);
	}
	return out;
}

RunReport analyze(const TreeFamily& family, const AnalysisConfig& cfg) {
	RunReport r;
	r.set("family", family.describe());
	r.set("seed", static_cast<std::int64_t>(cfg.seed));
	r.set("thresholds.delta", cfg.thresholds.delta);
	r.set("thresholds.tau", cfg.thresholds.tau);
	r.set("depths.requested", join(cfg.depths));
	const std::vector<std::uint32_t> sched = feasible_schedule(family, cfg.depths);
	const bool adjusted = sched != cfg.depths;
	r.set("depths", join(sched));
	if (adjusted) r.set("depths.adjusted", std::string("vertex budget"));
	const std::uint32_t D = sched.empty() ? 0 : sched.back();

	for (const std::string& crit : cfg.criteria) {
		const auto start = std::chrono::steady_clock::now();
		try {
			if (crit == "tuc") {
				const TucReport t = check_tuc(family, sched);
				r.set("tuc.B", static_cast<std::int64_t>(t.B));
				r.set("tuc.N", static_cast<std::int64_t>(t.N));
				r.set("tuc.M", static_cast<std::int64_t>(t.M));
				r.set("tuc.T1", std::string(t.bounded_valence ? "pass" : "fail"));
				r.set("tuc.T2", std::string(t.finite_components ? "pass" : "fail"));
				r.set("tuc.T3", std::string(t.bounded_distance ? "pass" : "fail"));
				r.set("tuc.valence_trace", join(t.valence_trace));
				r.set("tuc.component_trace", join(t.component_trace));
				r.set("tuc.distance_trace", join(t.distance_trace));
				r.set("tuc.valence_witness", static_cast<std::int64_t>(t.valence_witness));
				r.set("tuc.distance_witness", static_cast<std::int64_t>(t.distance_witness));
				if (t.stability_depth) r.set("tuc.stability_depth", static_cast<std::int64_t>(*t.stability_depth));
				r.set("tuc.verdict", std::string(t.passes() ? "pass" : "fail"));
			} else if (crit == "ramified") {
				const RamificationResult res = totally_ramified_test(tree_multiplicities(family.generate(D)));
				std::vector<std::string> ms;
				for (long m : res.multiplicities) ms.push_back(m == kInfiniteMultiplicity ? "inf" : std::to_string(m));
				r.set("ramified.multiplicities", join(ms));
				r.set("ramified.defect_sum", res.defect_sum.str());
				r.set("ramified.verdict", std::string(verdict_name(res.verdict)));
			} else if (crit == "dm") {
				if (adjusted) {
					const TypeVerdict v = resistance_to_infinity(
					    [&](std::uint32_t d) {
						    TreeTruncation t = family.generate(d);
						    return std::make_pair(std::move(t.graph), t.root);
					    },
					    sched, cfg.thresholds);
					r.set("dm.note", std::string("extension infeasible; resistance measured on the tree"));
					put_verdict(r, "dm.resistance", v);
					r.set("dm.verdict", std::string(verdict_name(v.verdict)));
				} else {
					const PipelineResult p = family.kind() == TreeFamily::Kind::StandardModelTree
					                             ? standard_model_pipeline(static_cast<int>(family.param()), sched, cfg.thresholds)
					                             : doyle_merenkov_pipeline(family, 0, sched, cfg.thresholds);
					r.set("dm.tree_depth", static_cast<std::int64_t>(p.tree_depth));
					r.set("dm.vertices", static_cast<std::int64_t>(p.vertex_count));
					r.set("dm.exact_radius", static_cast<std::int64_t>(p.exact_radius));
					put_verdict(r, "dm.resistance", p.resistance);
					put_verdict(r, "dm.annuli", p.annuli);
					r.set("dm.max_mod_over_n", p.max_modulus_ratio);
					r.set("dm.verdict", std::string(verdict_name(p.combined.verdict)));
				}
			} else if (crit == "nw") {
				const SpeiserGraph s = deep_speiser(family, D);
				const TypeVerdict v = nevanlinna_wittich(s, sched, cfg.thresholds);
				put_verdict(r, "nw", v);
			} else if (crit == "thomassen") {
				const ExtendedGraph x = build_exact_extension(family, cfg.n, D + 1);
				IsoperimetricOptions o;
				o.epsilon = cfg.epsilon;
				const TypeVerdict v = thomassen_isoperimetric(x.graph, x.root, sched, o);
				put_verdict(r, "thomassen", v);
			} else {
				throw Error("unknown criterion " + crit);
			}
		} catch (const Error& e) {
			r.set(crit + ".verdict", std::string("inapplicable"));
			r.set(crit + ".error", std::string(e.what()));
		}
		if (cfg.timing) {
			const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
			r.set("timing." + crit, secs);
		}
	}
	r.set("banner", banner(r));
	return r;
}

TreeFamily parse_family(const std::string& text) {
	std::istringstream is(text);
	std::string line;
	while (std::getline(is, line)) {
		if (auto c = line.find("//"); c != std::string::npos) line.erase(c);
		std::istringstream ls(line);
		std::string key;
		if (!(ls >> key) || key[0] == '%') continue;
		if (key != "family") break;
		std::string name;
		if (!(ls >> name)) throw Error("family record without a name");
		std::vector<long> params;
		std::string tok;
		while (ls >> tok) {
			try {
				std::size_t used = 0;
				params.push_back(std::stol(tok, &used));
				if (used != tok.size()) throw std::invalid_argument(tok);
			} catch (const std::exception&) {
				throw Error("family parameter '" + tok + "' is not an integer");
			}
		}
		return TreeFamily::from_name(name, params);
	}
	ParsedGraph pg = parse_text(text);
	GraphBuilder b(pg.graph);
	for (Vertex v : pg.records["frontier"]) {
		if (v >= pg.graph.vertex_count()) throw Error("frontier vertex out of range");
		b.label(v).flags |= vflag::Frontier;
	}
	for (Vertex v : pg.records["rays"]) {
		if (v >= pg.graph.vertex_count()) throw Error("ray vertex out of range");
		b.label(v).flags |= vflag::Frontier | vflag::Ray;
	}
	const auto& root = pg.records["root"];
	if (root.size() > 1) throw Error("more than one root");
	return TreeFamily::explicit_tree(TreeTruncation::from_graph(b.build(), root.empty() ? 0 : root[0]));
}

TreeFamily read_family(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw Error("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return parse_family(ss.str());
}

}  // namespace shabat
