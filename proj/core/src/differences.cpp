#include "fractsob/differences.hpp"

#include <set>

namespace fractsob {

CellSubgraph cell_subgraph(LevelStack& stack, int m, const Word& prefix) {
  if (static_cast<int>(prefix.size()) > m)
    throw ParameterError("cell subcomplex: prefix longer than the level");
  const LevelGraph& g = stack.graph(m);

  CellSubgraph sub;
  sub.prefix = prefix;
  sub.level = m;

  std::set<int> verts;
  std::set<std::pair<int, int>> edges;
  for (const Cell& cell : g.cells) {
    if (!word_has_prefix(cell.word, prefix)) continue;
    for (std::size_t a = 0; a < cell.corners.size(); ++a) {
      verts.insert(cell.corners[a]);
      for (std::size_t b = a + 1; b < cell.corners.size(); ++b) {
        const int x = std::min(cell.corners[a], cell.corners[b]);
        const int y = std::max(cell.corners[a], cell.corners[b]);
        edges.insert({x, y});
      }
    }
  }
  if (verts.empty()) throw ParameterError("cell subcomplex: no cell matches the prefix");
  sub.vertices.assign(verts.begin(), verts.end());
  sub.edges.assign(edges.begin(), edges.end());

  const AffineMap map = word_map(stack.spec(), prefix);
  for (const Coord& q : stack.spec().boundary) {
    const int id = g.index_of(map.apply(q));
    if (id < 0) throw PreconditionError("cell subcomplex: corner missing from the level");
    sub.corner_ids.push_back(id);
  }
  return sub;
}

}  // namespace fractsob
