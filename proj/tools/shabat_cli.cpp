#include "shabat/graph_io.hpp"
#include "shabat/report.hpp"
#include "shabat/speiser.hpp"
#include "shabat/trees.hpp"
#include "shabat/type_engine.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;
using namespace shabat;

namespace {

struct FamilyArgs {
	std::string name;
	std::string input;
	long valence = 3;
	long ends = 1;
	long teeth = 1;
	long base = 2;

	void add_to(CLI::App& app, bool positional_required) {
		auto* opt = app.add_option("family", name, "Builtin family (" + list() + ")");
		if (positional_required) opt->required();
		app.add_option("--valence", valence, "Valence for homogeneous and star");
		app.add_option("--ends", ends, "Number of ends for standard-model-tree");
		app.add_option("--teeth", teeth, "Tooth length for caterpillar");
		app.add_option("--base", base, "Branch growth base for fig12");
	}

	static std::string list() {
		std::string out;
		for (const auto& n : TreeFamily::builtin_names()) out += (out.empty() ? "" : ", ") + n;
		return out;
	}

	TreeFamily resolve() const {
		if (!input.empty()) return read_family(input);
		if (name.empty()) throw Error("no family given");
		std::vector<long> params;
		if (name == "homogeneous" || name == "star") params = {valence};
		else if (name == "standard-model" || name == "standard-model-tree") params = {ends};
		else if (name == "caterpillar") params = {teeth};
		else if (name == "fig12") params = {base};
		return TreeFamily::from_name(name, params);
	}
};

void write_file(const fs::path& path, const std::string& body) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw Error("cannot write " + path.string());
	out << body;
	std::cout << "wrote " << path.string() << '\n';
}

void emit_pair(const fs::path& dir, const std::string& stem, const RotationGraph& g) {
	write_file(dir / (stem + ".txt"), to_text(g, stem));
	write_file(dir / (stem + ".dot"), to_dot(g, stem));
}

std::vector<std::uint32_t> parse_schedule(const std::string& text) {
	std::vector<std::uint32_t> out;
	std::stringstream ss(text);
	std::string tok;
	while (std::getline(ss, tok, ',')) {
		std::size_t used = 0;
		unsigned long v = 0;
		try {
			v = std::stoul(tok, &used);
		} catch (const std::exception&) {
			used = 0;
		}
		if (used != tok.size() || v == 0) throw Error("bad depth '" + tok + "'");
		if (!out.empty() && v <= out.back()) throw Error("depth schedule must be strictly increasing");
		out.push_back(static_cast<std::uint32_t>(v));
	}
	if (out.empty()) throw Error("empty depth schedule");
	return out;
}

std::vector<std::string> parse_list(const std::string& text) {
	std::vector<std::string> out;
	std::stringstream ss(text);
	std::string tok;
	while (std::getline(ss, tok, ','))
		if (!tok.empty()) out.push_back(tok);
	return out;
}

int run_gallery(const FamilyArgs& fa, std::uint32_t depth, const std::string& out_dir) {
	const TreeFamily family = fa.resolve();
	fs::create_directories(out_dir);
	const fs::path dir(out_dir);
	std::string stem = family.name();
	if (family.param() != 0 && family.kind() != TreeFamily::Kind::Explicit) stem += "-" + std::to_string(family.param());

	const TreeTruncation t = family.generate(depth);
	emit_pair(dir, stem + ".tree", t.graph);
	std::cout << "tree: " << t.vertex_count() << " vertices, depth " << depth << '\n';

	if (family.kind() == TreeFamily::Kind::StandardModelTree) {
		const ExtendedGraph sigma = standard_model(static_cast<int>(family.param()), depth, depth);
		emit_pair(dir, stem + ".sigma", sigma.graph);
		std::cout << "standard model: " << sigma.graph.vertex_count() << " vertices\n";
	}

	const SpeiserGraph s = triangulate_and_dualize(t);
	emit_pair(dir, stem + ".speiser", s.graph);
	std::cout << "speiser graph: " << s.graph.vertex_count() << " vertices, " << s.bounded_face_count()
	          << " bounded faces, " << s.unbounded_face_count() << " unbounded faces\n";

	ExtendOptions opt;
	opt.height = depth;
	opt.pad = depth;
	const ExtendedGraph x = extend(s, opt);
	emit_pair(dir, stem + ".extension", x.graph);
	std::cout << "extension: " << x.graph.vertex_count() << " vertices, " << x.patches.size() << " patches\n";

	const RamificationResult ram = totally_ramified_test(tree_multiplicities(t));
	if (ram.verdict == Verdict::Hyperbolic)
		std::cout << "note: totally ramified values, defect sum " << ram.defect_sum.str() << " > 2: no true form\n";
	return 0;
}

int run_analyze(const FamilyArgs& fa, AnalysisConfig cfg, const std::string& dot_path, const std::string& csv_path,
                const std::string& json_path) {
	const TreeFamily family = fa.resolve();
	const RunReport r = analyze(family, cfg);
	std::cout << r.to_text();
	if (!csv_path.empty()) write_file(csv_path, r.to_csv());
	if (!json_path.empty()) write_file(json_path, r.to_json());
	if (!dot_path.empty()) {
		const TreeTruncation t = family.generate(feasible_schedule(family, cfg.depths).front());
		write_file(dot_path, to_dot(triangulate_and_dualize(t).graph, "speiser"));
	}
	return 0;
}

std::string read_all(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Error("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string trace_csv(const std::string& json_text) {
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(json_text);
	} catch (const nlohmann::json::exception& e) {
		throw Error(std::string("malformed report: ") + e.what());
	}
	if (!j.contains("trace") || !j["trace"].is_array()) throw Error("report has no trace array");
	std::ostringstream os;
	os << "criterion,scale,value\n";
	// non-finite values are written as null
	auto number = [](const nlohmann::json& v) {
		return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
	};
	try {
		for (const auto& row : j["trace"])
			os << row.at("criterion").get<std::string>() << ',' << format_number(number(row.at("scale"))) << ','
			   << format_number(number(row.at("value"))) << '\n';
	} catch (const nlohmann::json::exception& e) {
		throw Error(std::string("malformed trace row: ") + e.what());
	}
	return os.str();
}

int run_export(const FamilyArgs& fa, const std::string& input, const std::string& format, const std::string& object,
               std::uint32_t depth, std::uint32_t n, const std::string& out_path) {
	std::string body;
	if (format == "csv-trace") {
		if (input.empty()) throw Error("csv-trace needs a JSON report as input");
		body = trace_csv(read_all(input));
	} else {
		RotationGraph g;
		std::string name;
		if (!input.empty()) {
			ParsedGraph pg = parse_text(read_all(input));
			g = std::move(pg.graph);
			name = pg.name;
		} else {
			const TreeFamily family = fa.resolve();
			const TreeTruncation t = family.generate(depth);
			name = family.name() + "." + object;
			if (object == "tree") {
				g = t.graph;
			} else if (object == "speiser") {
				g = triangulate_and_dualize(t).graph;
			} else if (object == "extension") {
				ExtendOptions opt;
				opt.n = n;
				opt.height = depth;
				opt.pad = depth;
				g = extend(triangulate_and_dualize(t), opt).graph;
			} else {
				throw Error("unknown object '" + object + "'");
			}
		}
		if (format == "text") body = to_text(g, name);
		else if (format == "dot") body = to_dot(g, name);
		else throw Error("unknown format '" + format + "'");
	}
	if (out_path.empty()) std::cout << body;
	else write_file(out_path, body);
	return 0;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"Planar tree and Speiser graph analysis"};
	app.require_subcommand(1);

	FamilyArgs gallery_family;
	std::uint32_t gallery_depth = 6;
	std::string gallery_out = ".";
	auto* gallery = app.add_subcommand("gallery", "Emit tree, Speiser graph and extension files for a family");
	gallery_family.add_to(*gallery, true);
	gallery->add_option("--depth", gallery_depth, "Truncation depth")->check(CLI::PositiveNumber);
	gallery->add_option("--out", gallery_out, "Output directory");

	FamilyArgs analyze_family;
	AnalysisConfig cfg;
	std::string schedule = "16,32,64,128", criteria = "dm,nw,thomassen,ramified";
	std::string dot_path, csv_path, json_path;
	auto* an = app.add_subcommand("analyze", "Run the type criteria on a family");
	analyze_family.add_to(*an, false);
	an->add_option("--input", analyze_family.input, "Family file (family record or explicit truncation)");
	an->add_option("--depth-schedule", schedule, "Comma-separated increasing depths");
	an->add_option("--criteria", criteria, "Comma-separated criteria: dm, nw, thomassen, ramified, tuc");
	an->add_option("--delta", cfg.thresholds.delta, "Minimal growth per doubling")->check(CLI::PositiveNumber);
	an->add_option("--tau", cfg.thresholds.tau, "Maximal tail for convergence")->check(CLI::PositiveNumber);
	an->add_option("--epsilon", cfg.epsilon, "Isoperimetric constant")->check(CLI::PositiveNumber);
	an->add_option("--n", cfg.n, "Extension index for the isoperimetric test");
	an->add_option("--seed", cfg.seed, "Random seed");
	an->add_option("--emit-dot", dot_path, "Write the Speiser graph at the first depth as DOT");
	an->add_option("--emit-csv", csv_path, "Write criterion traces as CSV");
	an->add_option("--emit-json", json_path, "Write the report as JSON");
	an->add_flag("--timing", cfg.timing, "Append timing lines");

	FamilyArgs export_family;
	std::string export_input, format = "text", object = "speiser", export_out;
	std::uint32_t export_depth = 8, export_n = 0;
	auto* ex = app.add_subcommand("export", "Convert a graph or report, or export a generated object");
	ex->add_option("input", export_input, "Text graph file, or JSON report for csv-trace");
	ex->add_option("--format", format, "text, dot or csv-trace")->check(CLI::IsMember({"text", "dot", "csv-trace"}));
	ex->add_option("--family", export_family.name, "Generate from a builtin family instead of reading input");
	ex->add_option("--valence", export_family.valence, "Valence for homogeneous and star");
	ex->add_option("--ends", export_family.ends, "Number of ends for standard-model-tree");
	ex->add_option("--teeth", export_family.teeth, "Tooth length for caterpillar");
	ex->add_option("--base", export_family.base, "Branch growth base for fig12");
	ex->add_option("--object", object, "tree, speiser or extension")->check(CLI::IsMember({"tree", "speiser", "extension"}));
	ex->add_option("--depth", export_depth, "Truncation depth")->check(CLI::PositiveNumber);
	ex->add_option("--n", export_n, "Extension index (0 patches unbounded faces only)");
	ex->add_option("--out", export_out, "Output file (default stdout)");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*gallery) return run_gallery(gallery_family, gallery_depth, gallery_out);
		if (*an) {
			if (analyze_family.name.empty() && analyze_family.input.empty()) throw Error("give a family or --input");
			cfg.depths = parse_schedule(schedule);
			std::vector<std::string> crit{"tuc", "ramified"};
			for (const auto& c : parse_list(criteria))
				if (std::find(crit.begin(), crit.end(), c) == crit.end()) crit.push_back(c);
			cfg.criteria = crit;
			return run_analyze(analyze_family, cfg, dot_path, csv_path, json_path);
		}
		if (*ex) {
			if (export_input.empty() && export_family.name.empty()) throw Error("give an input file or --family");
			return run_export(export_family, export_input, format, object, export_depth, export_n, export_out);
		}
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
