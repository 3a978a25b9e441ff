#pragma once

#include "shabat/rotation_graph.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace shabat {

/// A graph read from the line-oriented text format, plus any trailing
/// keyword records (`frontier`, `rays`, `root`, ...) keyed by keyword.
struct ParsedGraph {
	std::string name;
	RotationGraph graph;
	std::map<std::string, std::vector<std::uint32_t>> records;
};

/// Writes `graph <name> <V>` followed by one `v <id> <neighbours> <flags>` line
/// per vertex. With explicit_darts each neighbour is written as `<id>#<dart>`,
/// which makes parse(write(g)) reproduce g exactly.
void write_text(std::ostream& os, const RotationGraph& g, const std::string& name,
                bool explicit_darts = true);
std::string to_text(const RotationGraph& g, const std::string& name, bool explicit_darts = true);

ParsedGraph read_text(std::istream& is);
ParsedGraph parse_text(const std::string& text);

void write_dot(std::ostream& os, const RotationGraph& g, const std::string& name);
std::string to_dot(const RotationGraph& g, const std::string& name);

}  // namespace shabat
