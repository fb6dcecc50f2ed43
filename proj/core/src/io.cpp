#include "fractsob/io.hpp"

#include "fractsob/errors.hpp"

#include <cstdio>
#include <fstream>

namespace fractsob {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

void write_field(std::ofstream& out, const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_row(std::ofstream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    write_field(out, row[i]);
  }
  out << '\n';
}

}  // namespace

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fraction_str(const Rational& x) { return x.str(); }

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  if (header.empty()) throw ParameterError("csv header row is mandatory");
  for (const auto& row : rows)
    if (row.size() != header.size())
      throw ParameterError("csv row width does not match the header: " + path);
  std::ofstream out = open_out(path);
  write_row(out, header);
  for (const auto& row : rows) write_row(out, row);
  if (!out.flush()) throw Error("write failed: " + path);
}

void write_graph_csv(const std::string& path, const IfsSpec& spec,
                     const LevelGraph& g) {
  std::ofstream out = open_out(path);

  out << "VERTICES\n";
  std::vector<std::string> header{"id"};
  for (int d = 0; d < g.ambient_dim; ++d) header.push_back("x" + std::to_string(d));
  write_row(out, header);
  for (int i = 0; i < g.vertex_count(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (const Rational& c : g.coords[i]) row.push_back(fraction_str(c));
    write_row(out, row);
  }

  out << "EDGES\n";
  write_row(out, {"a", "b"});
  for (const auto& [a, b] : g.edges)
    write_row(out, {std::to_string(a), std::to_string(b)});

  out << "CELLS\n";
  header = {"word"};
  for (int i = 0; i < spec.v0_size(); ++i) header.push_back("corner" + std::to_string(i));
  write_row(out, header);
  for (const Cell& cell : g.cells) {
    std::vector<std::string> row{word_string(cell.word, spec.J())};
    for (int id : cell.corners) row.push_back(std::to_string(id));
    write_row(out, row);
  }

  if (!out.flush()) throw Error("write failed: " + path);
}

}  // namespace fractsob
