#pragma once

#include "fractsob/errors.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/level_function.hpp"
#include "fractsob/rational.hpp"

#include <Eigen/Dense>

#include <map>
#include <vector>

namespace fractsob {

// Unrenormalized graph energy: sum of squared differences over the edges.
template <typename Scalar>
Scalar raw_energy(const LevelGraph& g, const LevelFunction<Scalar>& u) {
  if (u.level != g.level || u.size() != g.vertex_count())
    throw LevelMismatchError("energy: function does not match the level graph");
  Scalar acc(0);
  for (const auto& [a, b] : g.edges) {
    const Scalar d = u[a] - u[b];
    acc += d * d;
  }
  return acc;
}

// r^{-m} times the raw energy; the renormalized forms increase in m and the
// harmonic extension keeps them constant.
Rational renormalized_energy(const IfsSpec& spec, const LevelGraph& g,
                             const RationalFunction& u);
double renormalized_energy(const IfsSpec& spec, const LevelGraph& g,
                           const RealFunction& u);

// Exact dense solve A X = B by Gaussian elimination with partial pivoting.
// A is square; B holds one right-hand side per column.
std::vector<std::vector<Rational>> solve_linear_rational(
    std::vector<std::vector<Rational>> A, std::vector<std::vector<Rational>> B);

// Harmonic extension through one subdivision and, by iteration, to any finer
// level. The one-step rule is solved exactly on the level-1 graph once.
class HarmonicExtender {
 public:
  // Level-1 interior systems beyond this size are refused rather than ground
  // through exact elimination.
  static constexpr int kMaxExactInterior = 512;

  explicit HarmonicExtender(LevelStack& stack);

  // |V_1| x |V_0| matrix: row v holds the boundary weights producing the
  // value at level-1 vertex v. Boundary rows are unit vectors.
  const std::vector<std::vector<Rational>>& rule() const { return rule_; }

  // Extends level u.level values to the target level, filling every new
  // vertex with the cell-by-cell harmonic rule.
  RationalFunction extend(const RationalFunction& u, int target);

  // Harmonic function with the given values on V_0 (in boundary order),
  // realised on the level-m graph.
  RationalFunction harmonic(const std::vector<Rational>& boundary_values, int m);

  // Piecewise-harmonic spline: 1 at one level-m vertex, 0 at the others,
  // extended harmonically to the target level.
  RationalFunction spline(int m, int vertex, int target);

  LevelStack& stack() { return stack_; }

 private:
  const std::vector<std::vector<int>>& table(int level);

  LevelStack& stack_;
  std::vector<std::vector<Rational>> rule_;
  // table_[m][cell][t] = id in graph(m+1) of template vertex t inside cell.
  std::map<int, std::vector<std::vector<int>>> tables_;
};

// Effective resistance between two level-m vertices in the renormalized
// network: 1 / min{ E_m(u) : u(x) = 1, u(y) = 0 }, computed exactly.
Rational effective_resistance(LevelStack& stack, int m, int x, int y);

// All-pairs resistance of the renormalized level-m network in floating point,
// through the Laplacian pseudoinverse. Matches the exact value to solver
// accuracy; used for resistance grids where per-pair exact solves would be
// too slow.
Eigen::MatrixXd resistance_matrix(LevelStack& stack, int m);

}  // namespace fractsob
