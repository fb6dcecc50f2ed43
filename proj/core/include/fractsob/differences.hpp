#pragma once

#include "fractsob/errors.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/level_function.hpp"
#include "fractsob/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <type_traits>
#include <utility>
#include <vector>

namespace fractsob {

// Pointwise difference operators on a level graph. Both use the sign of the
// positive-semidefinite graph Laplacian: sums of u(x) - u(y).

// Sum of u(x) - u(y) over every level-m neighbor y of x.
template <typename Scalar>
Scalar graph_difference_at(const LevelGraph& g, const LevelFunction<Scalar>& u, int x) {
  if (u.level != g.level) throw LevelMismatchError("graph difference: level mismatch");
  if (x < 0 || x >= g.vertex_count())
    throw ParameterError("graph difference: vertex out of range");
  Scalar acc(0);
  for (int y : g.adj[x]) acc += u.values[x] - u.values[y];
  return acc;
}

// The same sum restricted to the neighbors inside the subcomplex spanned by a
// word prefix. At a corner of that subcomplex the neighbors inside it span
// exactly one level-m cell extending the prefix; it is an error if the prefix
// does not select exactly one (for instance at a junction with no prefix).
template <typename Scalar>
Scalar cell_difference_at(const LevelGraph& g, const LevelFunction<Scalar>& u, int x,
                          const Word& prefix = {}) {
  if (u.level != g.level) throw LevelMismatchError("cell difference: level mismatch");
  if (x < 0 || x >= g.vertex_count())
    throw ParameterError("cell difference: vertex out of range");
  int chosen = -1;
  for (int ci : g.cells_at[x]) {
    if (!word_has_prefix(g.cells[ci].word, prefix)) continue;
    if (chosen >= 0)
      throw ParameterError("cell difference: several cells match; extend the prefix");
    chosen = ci;
  }
  if (chosen < 0) throw ParameterError("cell difference: no cell at this vertex matches");
  Scalar acc(0);
  for (int y : g.cells[chosen].corners)
    if (y != x) acc += u.values[x] - u.values[y];
  return acc;
}

// Multi-level forms: u lives on a finer level and is read through the vertex
// injections, so the sums can be taken at any coarser scale m.
template <typename Scalar>
Scalar graph_difference_at(LevelStack& stack, const LevelFunction<Scalar>& u, int m,
                           int x) {
  if (m > u.level) throw LevelMismatchError("graph difference: level above the data");
  const LevelGraph& g = stack.graph(m);
  if (x < 0 || x >= g.vertex_count())
    throw ParameterError("graph difference: vertex out of range");
  const std::vector<int>& inj = stack.injection(m, u.level);
  Scalar acc(0);
  for (int y : g.adj[x]) acc += u.values[inj[x]] - u.values[inj[y]];
  return acc;
}

template <typename Scalar>
Scalar cell_difference_at(LevelStack& stack, const LevelFunction<Scalar>& u, int m,
                          int x, const Word& prefix = {}) {
  if (m > u.level) throw LevelMismatchError("cell difference: level above the data");
  const LevelGraph& g = stack.graph(m);
  if (x < 0 || x >= g.vertex_count())
    throw ParameterError("cell difference: vertex out of range");
  int chosen = -1;
  for (int ci : g.cells_at[x]) {
    if (!word_has_prefix(g.cells[ci].word, prefix)) continue;
    if (chosen >= 0)
      throw ParameterError("cell difference: several cells match; extend the prefix");
    chosen = ci;
  }
  if (chosen < 0) throw ParameterError("cell difference: no cell at this vertex matches");
  const std::vector<int>& inj = stack.injection(m, u.level);
  Scalar acc(0);
  for (int y : g.cells[chosen].corners)
    if (y != x) acc += u.values[inj[x]] - u.values[inj[y]];
  return acc;
}

// Per-level difference sums at a fixed point, rescaled by r^{-m}. The scaled
// column converges to the normal derivative for functions with one.
template <typename Scalar>
struct NormalDerivativeTable {
  std::vector<int> levels;
  std::vector<Scalar> raw;     // difference sum at the point, per level
  std::vector<Scalar> scaled;  // r^{-m} times raw
  Scalar value{};              // scaled entry at the finest level
  bool converged = false;      // last two successive gaps within 5 percent
};

// The point p must be a corner of the subcomplex selected by the prefix (a
// fractal boundary point when the prefix is empty); the difference sums are
// taken inside that subcomplex, u is read through the injections, and m_lo
// defaults to the prefix length. At least three levels are required.
template <typename Scalar>
NormalDerivativeTable<Scalar> normal_derivative(LevelStack& stack,
                                                const LevelFunction<Scalar>& u,
                                                const Coord& p, const Word& prefix = {},
                                                int m_lo = -1) {
  const int top = u.level;
  if (m_lo < 0) m_lo = static_cast<int>(prefix.size());
  if (m_lo < static_cast<int>(prefix.size()))
    throw ParameterError("normal derivative: start level earlier than the cell word");
  if (top - m_lo + 1 < 3)
    throw ParameterError("normal derivative needs at least three levels");
  if (stack.graph(top).vertex_count() != static_cast<int>(u.values.size()))
    throw LevelMismatchError("normal derivative: function size mismatch");

  NormalDerivativeTable<Scalar> table;
  const Rational r = stack.spec().r;
  for (int m = m_lo; m <= top; ++m) {
    const LevelGraph& g = stack.graph(m);
    const int x = g.index_of(p);
    if (x < 0) throw ParameterError("normal derivative: point is not a level vertex");
    const Scalar acc = cell_difference_at(stack, u, m, x, prefix);
    table.levels.push_back(m);
    table.raw.push_back(acc);
    Scalar scale;
    if constexpr (std::is_same_v<Scalar, Rational>)
      scale = rational_pow(r, -m);
    else
      scale = std::pow(to_double(r), -m);
    table.scaled.push_back(scale * acc);
  }
  table.value = table.scaled.back();

  const auto as_double = [](const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return to_double(s);
    else
      return s;
  };
  const int n = static_cast<int>(table.scaled.size());
  const double v2 = as_double(table.scaled[n - 1]);
  const double v1 = as_double(table.scaled[n - 2]);
  const double v0 = as_double(table.scaled[n - 3]);
  const double ref = std::max({std::abs(v2), std::abs(v1), 1e-12});
  table.converged =
      std::abs(v2 - v1) <= 0.05 * ref && std::abs(v1 - v0) <= 0.05 * ref;
  return table;
}

// Exact per-cell structure of the difference sums on a complete cell graph
// with n = |V_0| corners: writing S for the corner sum, the corner difference
// is n u_i - S, so differences of corner differences recover n (u_i - u_j),
// and the squared sums recover the cell energy times n.
template <typename Scalar>
struct CellIdentityReport {
  bool difference_identity = false;  // delta_i - delta_j = n (u_i - u_j), all cells
  bool energy_identity = false;      // cell energy = (sum of delta^2) / n
  Scalar raw_energy{};               // sum over cells and corner pairs
  Scalar delta_square_sum{};         // sum over cells and corners of delta^2
};

template <typename Scalar>
CellIdentityReport<Scalar> cell_identity_check(const LevelGraph& g,
                                               const LevelFunction<Scalar>& u) {
  if (u.level != g.level) throw LevelMismatchError("cell identity: level mismatch");
  // exact comparison in rational arithmetic, 1e-12 relative in floating point
  auto same = [](const Scalar& a, const Scalar& b) {
    if constexpr (std::is_floating_point_v<Scalar>) {
      using std::abs;
      return abs(a - b) <= 1e-12 * std::max({Scalar(1), abs(a), abs(b)});
    } else {
      return a == b;
    }
  };
  CellIdentityReport<Scalar> rep;
  rep.difference_identity = true;
  Scalar energy(0), dsq(0);
  int n = 0;
  for (const Cell& cell : g.cells) {
    n = static_cast<int>(cell.corners.size());
    Scalar sum(0);
    for (int i : cell.corners) sum += u.values[i];
    std::vector<Scalar> delta;
    delta.reserve(cell.corners.size());
    for (int i : cell.corners) delta.push_back(Scalar(n) * u.values[i] - sum);
    for (std::size_t a = 0; a < delta.size(); ++a) {
      dsq += delta[a] * delta[a];
      for (std::size_t b = a + 1; b < delta.size(); ++b) {
        const Scalar diff = u.values[cell.corners[a]] - u.values[cell.corners[b]];
        energy += diff * diff;
        if (!same(delta[a] - delta[b], Scalar(n) * diff))
          rep.difference_identity = false;
      }
    }
  }
  rep.raw_energy = energy;
  rep.delta_square_sum = dsq;
  if (n > 0) rep.energy_identity = same(Scalar(n) * energy, dsq);
  return rep;
}

// The level-m subcomplex spanned by cells whose word extends a prefix, with
// the images of the template boundary as its corners.
struct CellSubgraph {
  Word prefix;
  int level = 0;
  std::vector<int> vertices;    // sorted vertex ids covered by the subcomplex
  std::vector<int> corner_ids;  // images of the boundary under the prefix map
  std::vector<std::pair<int, int>> edges;
};

CellSubgraph cell_subgraph(LevelStack& stack, int m, const Word& prefix);

// Two-function summation by parts over a cell subcomplex: the interior sum of
// (Au) v - u (Av) equals the corner sum of u dv - du v, where A is the
// subcomplex Laplacian and d is its r^{-m}-scaled corner difference.
template <typename Scalar>
struct GaussGreenReport {
  Scalar interior_sum{};
  Scalar boundary_sum{};
  std::vector<int> corner_ids;
  std::vector<Scalar> du, dv;  // scaled corner differences of u and v
};

template <typename Scalar>
GaussGreenReport<Scalar> gauss_green_pair(LevelStack& stack,
                                          const LevelFunction<Scalar>& u,
                                          const LevelFunction<Scalar>& v,
                                          const Word& prefix = {}) {
  if (u.level != v.level) throw LevelMismatchError("summation by parts: level mismatch");
  const int m = u.level;
  const CellSubgraph sub = cell_subgraph(stack, m, prefix);

  Scalar scale;
  if constexpr (std::is_same_v<Scalar, Rational>)
    scale = rational_pow(stack.spec().r, -m);
  else
    scale = std::pow(to_double(stack.spec().r), -m);

  // Subcomplex Laplacian applied to u and v at every covered vertex.
  const int n_top = stack.graph(m).vertex_count();
  std::vector<Scalar> au(n_top, Scalar(0)), av(n_top, Scalar(0));
  for (const auto& [a, b] : sub.edges) {
    const Scalar du_ab = u.values[a] - u.values[b];
    const Scalar dv_ab = v.values[a] - v.values[b];
    au[a] += du_ab;
    au[b] -= du_ab;
    av[a] += dv_ab;
    av[b] -= dv_ab;
  }

  GaussGreenReport<Scalar> rep;
  rep.corner_ids = sub.corner_ids;
  std::vector<char> is_corner(n_top, 0);
  for (int p : sub.corner_ids) is_corner[p] = 1;

  Scalar interior(0);
  for (int x : sub.vertices)
    if (!is_corner[x]) interior += au[x] * v.values[x] - u.values[x] * av[x];
  rep.interior_sum = scale * interior;

  Scalar boundary(0);
  for (int p : sub.corner_ids) {
    const Scalar dup = scale * au[p];
    const Scalar dvp = scale * av[p];
    rep.du.push_back(dup);
    rep.dv.push_back(dvp);
    boundary += u.values[p] * dvp - dup * v.values[p];
  }
  rep.boundary_sum = boundary;
  return rep;
}

}  // namespace fractsob
