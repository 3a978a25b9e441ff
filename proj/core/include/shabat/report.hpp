#pragma once

#include "shabat/trees.hpp"
#include "shabat/type_engine.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace shabat {

struct AnalysisConfig {
	std::vector<std::uint32_t> depths{16, 32, 64, 128};
	std::vector<std::string> criteria{"tuc", "dm", "nw", "thomassen", "ramified"};
	Thresholds thresholds;
	double epsilon = 0.25;
	std::uint32_t n = 4;  // extension index for the isoperimetric test
	std::uint64_t seed = 1;
	bool timing = false;  // append timing.* lines (not deterministic)
};

struct TraceRow {
	std::string criterion;
	double scale;
	double value;
};

/// Ordered key/value record of one analysis run.
class RunReport {
public:
	void set(const std::string& key, const std::string& value);
	void set(const std::string& key, double value);
	void set(const std::string& key, std::int64_t value);
	void add_trace(const std::string& criterion, const std::vector<double>& scale, const std::vector<double>& values);

	const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
	const std::vector<TraceRow>& trace() const { return trace_; }
	std::string get(const std::string& key) const;
	bool has(const std::string& key) const;

	std::string to_text() const;
	std::string to_json() const;
	std::string to_csv() const;

private:
	std::vector<std::pair<std::string, std::string>> entries_;
	std::vector<TraceRow> trace_;
};

/// Fixed-precision rendering used in reports.
std::string format_number(double v);

/// Depth schedule actually analyzed: the requested one, or quarters of the
/// largest depth within the vertex budget for fast-growing families.
std::vector<std::uint32_t> feasible_schedule(const TreeFamily& family, const std::vector<std::uint32_t>& depths,
                                             std::uint64_t budget = TreeFamily::kVertexBudget);

RunReport analyze(const TreeFamily& family, const AnalysisConfig& cfg);

/// Reads a tree family file: `family <name> <params...>` or an explicit
/// truncation in the text graph format with `root` and `frontier` records.
TreeFamily read_family(const std::string& path);
TreeFamily parse_family(const std::string& text);

}  // namespace shabat
