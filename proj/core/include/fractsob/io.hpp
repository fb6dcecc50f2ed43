#pragma once

#include "fractsob/geometry.hpp"

#include <string>
#include <vector>

namespace fractsob {

// Floating-point serialization used by every artifact: 17 significant digits,
// '.' decimal, round-trips a double exactly.
std::string fmt17(double x);

// Exact fraction string "num/den" ("num" when den == 1).
std::string fraction_str(const Rational& x);

// One CSV table: comma delimiter, mandatory header row, one line per row.
// Fields containing commas, quotes, or newlines are quoted; callers format
// numbers with fmt17.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Sectioned graph export: VERTICES (id, exact fraction coordinates),
// EDGES (id, id), CELLS (word as a digit string over 1..J, corner ids).
void write_graph_csv(const std::string& path, const IfsSpec& spec,
                     const LevelGraph& g);

}  // namespace fractsob
