#include "fractsob/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace fractsob {

Coord AffineMap::apply(const Coord& x) const {
  const std::size_t n = A.size();
  if (x.size() != n) throw PreconditionError("affine map applied to wrong dimension");
  Coord y(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rational acc = b[i];
    for (std::size_t j = 0; j < n; ++j) acc += A[i][j] * x[j];
    y[i] = acc;
  }
  return y;
}

AffineMap AffineMap::compose(const AffineMap& other) const {
  const std::size_t n = A.size();
  AffineMap out;
  out.A.assign(n, std::vector<Rational>(n, Rational(0)));
  out.b.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational acc(0);
      for (std::size_t k = 0; k < n; ++k) acc += A[i][k] * other.A[k][j];
      out.A[i][j] = acc;
    }
    Rational acc = b[i];
    for (std::size_t k = 0; k < n; ++k) acc += A[i][k] * other.b[k];
    out.b[i] = acc;
  }
  return out;
}

AffineMap AffineMap::identity(int dim) {
  AffineMap m;
  m.A.assign(dim, std::vector<Rational>(dim, Rational(0)));
  m.b.assign(dim, Rational(0));
  for (int i = 0; i < dim; ++i) m.A[i][i] = Rational(1);
  return m;
}

AffineMap AffineMap::scaling(const Rational& factor, const Coord& offset) {
  const int dim = static_cast<int>(offset.size());
  AffineMap m = identity(dim);
  for (int i = 0; i < dim; ++i) m.A[i][i] = factor;
  m.b = offset;
  return m;
}

std::string word_string(const Word& w, int J) {
  std::string out;
  if (J <= 9) {
    for (int letter : w) out.push_back(static_cast<char>('0' + letter));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text, int J) {
  Word w;
  if (text.empty()) return w;
  if (J <= 9) {
    for (char c : text) {
      if (c < '1' || c > '0' + J)
        throw ParameterError("word letter out of range: " + std::string(text));
      w.push_back(c - '0');
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (tok.empty()) throw ParameterError("malformed word: " + std::string(text));
    int letter = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw ParameterError("malformed word: " + std::string(text));
      letter = letter * 10 + (c - '0');
      if (letter > J) throw ParameterError("word letter out of range: " + std::string(text));
    }
    if (letter < 1 || letter > J)
      throw ParameterError("word letter out of range: " + std::string(text));
    w.push_back(letter);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return w;
}

bool word_has_prefix(const Word& w, const Word& prefix) {
  if (prefix.size() > w.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), w.begin());
}

IfsSpec make_sg() {
  IfsSpec s;
  s.family = "sg";
  s.ambient_dim = 2;
  const Rational half(1, 2);
  std::vector<Coord> p = {
      {Rational(0), Rational(0)},
      {Rational(1), Rational(0)},
      {Rational(1, 2), Rational(7, 8)},
  };
  for (const auto& pj : p) {
    Coord off = {pj[0] * half, pj[1] * half};
    s.maps.push_back(AffineMap::scaling(half, off));
  }
  s.boundary = p;
  s.fixing_letter = {1, 2, 3};
  s.r = Rational(3, 5);
  s.mu = Rational(1, 3);
  s.dim_D = std::log(3.0) / std::log(5.0 / 3.0);
  s.gamma = std::log(2.0) / std::log(5.0 / 3.0);
  return s;
}

IfsSpec make_vicsek(int L, int N) {
  if (L < 1) throw ParameterError("vicsek arm length L must be >= 1");
  if (N < 1) throw ParameterError("vicsek ambient dimension N must be >= 1");
  if (N > 20) throw ParameterError("vicsek ambient dimension N too large");
  const long long J_ll = (1LL << N) * L + 1;
  if (J_ll > 1000000) throw ParameterError("vicsek family has too many maps");

  IfsSpec s;
  s.family = "vicsek";
  s.ambient_dim = N;
  s.vicsek_L = L;
  s.vicsek_N = N;
  const int side = 2 * L + 1;
  const Rational scale(1, side);

  // Subcube indices: the center cube plus L cubes along each of the 2^N
  // diagonal directions. Maps are ordered by index lex order.
  std::vector<std::vector<int>> idx;
  idx.emplace_back(N, L);
  for (int sigma = 0; sigma < (1 << N); ++sigma) {
    for (int i = 1; i <= L; ++i) {
      std::vector<int> c(N);
      for (int k = 0; k < N; ++k) {
        const int dir = (sigma >> (N - 1 - k)) & 1;  // bit k of sigma, msb = axis 0
        c[k] = L + i * (2 * dir - 1);
      }
      idx.push_back(std::move(c));
    }
  }
  std::sort(idx.begin(), idx.end());

  for (const auto& c : idx) {
    Coord off(N);
    for (int k = 0; k < N; ++k) off[k] = Rational(c[k], side);
    s.maps.push_back(AffineMap::scaling(scale, off));
  }

  // V_0 = cube corners in lex order; corner sigma is fixed by subcube 2L*sigma.
  for (int sigma = 0; sigma < (1 << N); ++sigma) {
    Coord q(N);
    std::vector<int> fix(N);
    for (int k = 0; k < N; ++k) {
      const int bit = (sigma >> (N - 1 - k)) & 1;
      q[k] = Rational(bit);
      fix[k] = 2 * L * bit;
    }
    s.boundary.push_back(q);
    const auto it = std::lower_bound(idx.begin(), idx.end(), fix);
    s.fixing_letter.push_back(static_cast<int>(it - idx.begin()) + 1);
  }

  s.r = scale;
  s.mu = Rational(1, static_cast<long>(J_ll));
  s.dim_D = std::log(static_cast<double>(J_ll)) / std::log(static_cast<double>(side));
  s.gamma = 1.0;
  return s;
}

int LevelGraph::index_of(const Coord& c) const {
  const auto it = std::lower_bound(coords.begin(), coords.end(), c, lex_less);
  if (it == coords.end() || *it != c) return -1;
  return static_cast<int>(it - coords.begin());
}

int LevelGraph::cell_index(const Word& w) const {
  const auto it = std::lower_bound(
      cells.begin(), cells.end(), w,
      [](const Cell& cell, const Word& key) { return cell.word < key; });
  if (it == cells.end() || it->word != w) return -1;
  return static_cast<int>(it - cells.begin());
}

std::size_t max_vertices_from_env() {
  const char* env = std::getenv("FRACTSOB_MAX_VERTICES");
  if (env == nullptr || *env == '\0') return 200000;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return 200000;
  return static_cast<std::size_t>(v);
}

AffineMap word_map(const IfsSpec& spec, const Word& w) {
  AffineMap m = AffineMap::identity(spec.ambient_dim);
  for (int letter : w) {
    if (letter < 1 || letter > spec.J())
      throw ParameterError("word letter out of range");
    m = m.compose(spec.maps[letter - 1]);
  }
  return m;
}

namespace {

struct RawCell {
  Word word;
  std::vector<Coord> corners;
};

void enumerate_cells(const IfsSpec& spec, int m, const AffineMap& prefix,
                     Word& word, std::vector<RawCell>& out) {
  if (static_cast<int>(word.size()) == m) {
    RawCell cell;
    cell.word = word;
    cell.corners.reserve(spec.boundary.size());
    for (const auto& q : spec.boundary) cell.corners.push_back(prefix.apply(q));
    out.push_back(std::move(cell));
    return;
  }
  for (int letter = 1; letter <= spec.J(); ++letter) {
    word.push_back(letter);
    enumerate_cells(spec, m, prefix.compose(spec.maps[letter - 1]), word, out);
    word.pop_back();
  }
}

}  // namespace

LevelGraph build_level(const IfsSpec& spec, int m, std::size_t max_vertices) {
  if (m < 0) throw ParameterError("level must be >= 0");
  if (spec.J() < 1 || spec.boundary.empty())
    throw PreconditionError("ifs spec has no maps or no boundary");

  // Rough lower bound on vertex count: at least one cell corner per cell.
  double cell_estimate = 1.0;
  for (int i = 0; i < m; ++i) cell_estimate *= spec.J();
  if (cell_estimate > 4.0 * static_cast<double>(max_vertices))
    throw CapacityError("level graph would exceed the vertex budget");

  std::vector<RawCell> raw;
  {
    Word word;
    enumerate_cells(spec, m, AffineMap::identity(spec.ambient_dim), word, raw);
  }

  std::map<Coord, int, decltype(&lex_less)> vertex_ids(&lex_less);
  for (const auto& cell : raw) {
    for (const auto& c : cell.corners) {
      vertex_ids.emplace(c, 0);
      if (vertex_ids.size() > max_vertices)
        throw CapacityError("level graph exceeds the vertex budget");
    }
  }

  LevelGraph g;
  g.level = m;
  g.ambient_dim = spec.ambient_dim;
  g.coords.reserve(vertex_ids.size());
  int next_id = 0;
  for (auto& [coord, id] : vertex_ids) {
    id = next_id++;
    g.coords.push_back(coord);
  }

  g.cells.reserve(raw.size());
  std::vector<std::pair<int, int>> edges;
  for (auto& rc : raw) {
    Cell cell;
    cell.word = std::move(rc.word);
    cell.corners.reserve(rc.corners.size());
    for (const auto& c : rc.corners) cell.corners.push_back(vertex_ids.at(c));
    const int n = static_cast<int>(cell.corners.size());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int a = cell.corners[i];
        int b = cell.corners[j];
        if (a > b) std::swap(a, b);
        if (a != b) edges.emplace_back(a, b);
      }
    }
    g.cells.push_back(std::move(cell));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);

  g.adj.assign(g.coords.size(), {});
  for (const auto& [a, b] : g.edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());

  g.boundary_ids.reserve(spec.boundary.size());
  for (const auto& q : spec.boundary) {
    const auto it = vertex_ids.find(q);
    if (it == vertex_ids.end())
      throw PreconditionError("boundary point missing from level graph");
    g.boundary_ids.push_back(it->second);
  }

  g.cells_at.assign(g.coords.size(), {});
  for (std::size_t ci = 0; ci < g.cells.size(); ++ci)
    for (int v : g.cells[ci].corners) g.cells_at[v].push_back(static_cast<int>(ci));

  return g;
}

std::vector<Rational> mass_vector(const IfsSpec& spec, const LevelGraph& g) {
  const Rational cell_mass = rational_pow(spec.mu, g.level);
  const Rational share = cell_mass / spec.v0_size();
  std::vector<Rational> mass(g.coords.size(), Rational(0));
  for (const auto& cell : g.cells)
    for (int v : cell.corners) mass[v] += share;
  return mass;
}

LevelStack::LevelStack(IfsSpec spec, std::size_t max_vertices)
    : spec_(std::move(spec)), max_vertices_(max_vertices) {}

const LevelGraph& LevelStack::graph(int m) {
  if (m < 0) throw ParameterError("level must be >= 0");
  while (static_cast<int>(graphs_.size()) <= m)
    graphs_.push_back(build_level(spec_, static_cast<int>(graphs_.size()), max_vertices_));
  return graphs_[m];
}

const std::vector<int>& LevelStack::injection(int m, int M) {
  if (m > M) throw ParameterError("injection requires source level <= target level");
  const auto key = std::make_pair(m, M);
  const auto it = injections_.find(key);
  if (it != injections_.end()) return it->second;

  const LevelGraph& fine = graph(M);
  const LevelGraph& coarse = graph(m);
  std::vector<int> inj(coarse.coords.size(), -1);
  for (std::size_t i = 0; i < coarse.coords.size(); ++i) {
    const int j = fine.index_of(coarse.coords[i]);
    if (j < 0) throw PreconditionError("vertex nesting violated between levels");
    inj[i] = j;
  }
  return injections_.emplace(key, std::move(inj)).first->second;
}

}  // namespace fractsob
