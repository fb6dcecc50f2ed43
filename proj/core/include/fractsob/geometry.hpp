#pragma once

#include "fractsob/errors.hpp"
#include "fractsob/rational.hpp"

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fractsob {

// Exact affine contraction x -> A x + b.
struct AffineMap {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;

  Coord apply(const Coord& x) const;
  // (this ∘ other): apply other first, then this.
  AffineMap compose(const AffineMap& other) const;
  static AffineMap identity(int dim);
  static AffineMap scaling(const Rational& factor, const Coord& offset);
};

// Address word over the alphabet {1, ..., J}. The empty word is the whole space.
using Word = std::vector<int>;

// Digit string for J <= 9, dot-separated letters otherwise.
std::string word_string(const Word& w, int J);
Word parse_word(std::string_view text, int J);
bool word_has_prefix(const Word& w, const Word& prefix);

// Self-similar structure: maps, boundary set V_0, and the exact renormalization
// data (energy scaling r, measure weight mu) plus derived exponents.
struct IfsSpec {
  std::string family;           // "sg" | "vicsek"
  int ambient_dim = 0;
  std::vector<AffineMap> maps;  // letter j -> maps[j-1]
  std::vector<Coord> boundary;  // V_0; boundary[i] is fixed by maps[fixing_letter[i]-1]
  std::vector<int> fixing_letter;
  Rational r;                   // energy renormalization factor, 0 < r < 1
  Rational mu;                  // per-cell measure weight, mu * J == 1
  double dim_D = 0.0;           // log J / log(1/r)
  double gamma = 0.0;           // heat-kernel time exponent
  int vicsek_L = 0;
  int vicsek_N = 0;

  int J() const { return static_cast<int>(maps.size()); }
  int v0_size() const { return static_cast<int>(boundary.size()); }
  double d_plus_1() const { return dim_D + 1.0; }
};

IfsSpec make_sg();
IfsSpec make_vicsek(int L, int N);

struct Cell {
  Word word;
  std::vector<int> corners;  // corners[i] = vertex id of F_w(q_i)
};

// Graph approximation at one level: vertices carry exact coordinates and are
// indexed in lexicographic coordinate order; the edge set joins every pair of
// corners inside each cell.
struct LevelGraph {
  int level = 0;
  int ambient_dim = 0;
  std::vector<Coord> coords;
  std::vector<std::pair<int, int>> edges;  // a < b, sorted
  std::vector<std::vector<int>> adj;       // sorted neighbour lists
  std::vector<Cell> cells;                 // sorted by word
  std::vector<int> boundary_ids;           // images of V_0, in V_0 order
  std::vector<std::vector<int>> cells_at;  // vertex id -> indices into cells

  int vertex_count() const { return static_cast<int>(coords.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  // -1 when the coordinate is not a vertex of this level.
  int index_of(const Coord& c) const;
  int cell_index(const Word& w) const;
};

// 2e5 unless the FRACTSOB_MAX_VERTICES environment variable overrides it.
std::size_t max_vertices_from_env();

LevelGraph build_level(const IfsSpec& spec, int m,
                       std::size_t max_vertices = max_vertices_from_env());

// Exact lumped measure: each cell spreads mu^m evenly over its corners.
// Entries sum to 1 exactly.
std::vector<Rational> mass_vector(const IfsSpec& spec, const LevelGraph& g);

AffineMap word_map(const IfsSpec& spec, const Word& w);

// Builds and caches the level graphs of one spec, along with vertex-id
// injections between nested levels. Returned references stay valid while the
// stack lives (the deque never relocates already-built graphs).
class LevelStack {
 public:
  explicit LevelStack(IfsSpec spec,
                      std::size_t max_vertices = max_vertices_from_env());

  const IfsSpec& spec() const { return spec_; }
  const LevelGraph& graph(int m);
  // For level-m vertex id i, injection(m, M)[i] is its id in the level-M graph.
  const std::vector<int>& injection(int m, int M);

 private:
  IfsSpec spec_;
  std::size_t max_vertices_;
  std::deque<LevelGraph> graphs_;
  std::map<std::pair<int, int>, std::vector<int>> injections_;
};

}  // namespace fractsob
