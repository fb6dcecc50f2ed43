#include "fractsob/energy.hpp"

#include <algorithm>
#include <cmath>

namespace fractsob {

Rational renormalized_energy(const IfsSpec& spec, const LevelGraph& g,
                             const RationalFunction& u) {
  return rational_pow(spec.r, -g.level) * raw_energy(g, u);
}

double renormalized_energy(const IfsSpec& spec, const LevelGraph& g,
                           const RealFunction& u) {
  return to_double(rational_pow(spec.r, -g.level)) * raw_energy(g, u);
}

std::vector<std::vector<Rational>> solve_linear_rational(
    std::vector<std::vector<Rational>> A, std::vector<std::vector<Rational>> B) {
  const std::size_t n = A.size();
  if (B.size() != n) throw PreconditionError("linear solve: size mismatch");
  const std::size_t k = n == 0 ? 0 : B[0].size();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && A[pivot][col] == 0) ++pivot;
    if (pivot == n) throw PreconditionError("linear solve: singular matrix");
    if (pivot != col) {
      std::swap(A[pivot], A[col]);
      std::swap(B[pivot], B[col]);
    }
    const Rational inv = Rational(1) / A[col][col];
    for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
    for (std::size_t j = 0; j < k; ++j) B[col][j] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || A[row][col] == 0) continue;
      const Rational f = A[row][col];
      for (std::size_t j = col; j < n; ++j) A[row][j] -= f * A[col][j];
      for (std::size_t j = 0; j < k; ++j) B[row][j] -= f * B[col][j];
    }
  }
  return B;
}

namespace {

// Graph Laplacian restricted to `rows` x `cols`.
std::vector<std::vector<Rational>> laplacian_block(const LevelGraph& g,
                                                   const std::vector<int>& rows,
                                                   const std::vector<int>& cols) {
  std::vector<int> col_pos(g.vertex_count(), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<int>(j);
  std::vector<std::vector<Rational>> M(rows.size(),
                                       std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int v = rows[i];
    const int self = col_pos[v];
    if (self >= 0) M[i][self] = Rational(static_cast<long>(g.adj[v].size()));
    for (int w : g.adj[v]) {
      const int j = col_pos[w];
      if (j >= 0) M[i][j] -= 1;
    }
  }
  return M;
}

}  // namespace

HarmonicExtender::HarmonicExtender(LevelStack& stack) : stack_(stack) {
  const LevelGraph& g1 = stack_.graph(1);
  const int n = g1.vertex_count();
  const int nb = static_cast<int>(g1.boundary_ids.size());

  std::vector<char> is_boundary(n, 0);
  std::vector<int> boundary_slot(n, -1);
  for (int i = 0; i < nb; ++i) {
    is_boundary[g1.boundary_ids[i]] = 1;
    boundary_slot[g1.boundary_ids[i]] = i;
  }
  std::vector<int> interior;
  for (int v = 0; v < n; ++v)
    if (!is_boundary[v]) interior.push_back(v);

  if (static_cast<int>(interior.size()) > kMaxExactInterior)
    throw CapacityError("harmonic rule: level-1 interior too large for exact solve");

  rule_.assign(n, std::vector<Rational>(nb, Rational(0)));
  for (int i = 0; i < nb; ++i) rule_[g1.boundary_ids[i]][i] = Rational(1);

  if (interior.empty()) return;

  auto A_II = laplacian_block(g1, interior, interior);
  const auto A_IB = laplacian_block(g1, interior, g1.boundary_ids);
  std::vector<std::vector<Rational>> rhs(interior.size(),
                                         std::vector<Rational>(nb, Rational(0)));
  for (std::size_t i = 0; i < interior.size(); ++i)
    for (int j = 0; j < nb; ++j) rhs[i][j] = -A_IB[i][j];
  const auto sol = solve_linear_rational(std::move(A_II), std::move(rhs));
  for (std::size_t i = 0; i < interior.size(); ++i) rule_[interior[i]] = sol[i];
}

const std::vector<std::vector<int>>& HarmonicExtender::table(int level) {
  const auto it = tables_.find(level);
  if (it != tables_.end()) return it->second;

  const IfsSpec& spec = stack_.spec();
  const LevelGraph& coarse = stack_.graph(level);
  const LevelGraph& fine = stack_.graph(level + 1);
  const LevelGraph& tmpl = stack_.graph(1);

  std::vector<std::vector<int>> tab(coarse.cells.size());
  for (std::size_t ci = 0; ci < coarse.cells.size(); ++ci) {
    const AffineMap F = word_map(spec, coarse.cells[ci].word);
    std::vector<int> ids(tmpl.vertex_count(), -1);
    for (int t = 0; t < tmpl.vertex_count(); ++t) {
      const int id = fine.index_of(F.apply(tmpl.coords[t]));
      if (id < 0) throw PreconditionError("subdivision image missing at the finer level");
      ids[t] = id;
    }
    tab[ci] = std::move(ids);
  }
  return tables_.emplace(level, std::move(tab)).first->second;
}

RationalFunction HarmonicExtender::extend(const RationalFunction& u, int target) {
  if (target < u.level) throw ParameterError("extension target is coarser than the input");
  const int nb = stack_.spec().v0_size();

  RationalFunction cur = u;
  for (int m = u.level; m < target; ++m) {
    const LevelGraph& coarse = stack_.graph(m);
    if (cur.size() != coarse.vertex_count())
      throw LevelMismatchError("extension input does not match its level graph");
    const LevelGraph& fine = stack_.graph(m + 1);
    const auto& tab = table(m);

    RationalFunction next = zero_function<Rational>(fine);
    for (std::size_t ci = 0; ci < coarse.cells.size(); ++ci) {
      const auto& corners = coarse.cells[ci].corners;
      for (std::size_t t = 0; t < tab[ci].size(); ++t) {
        Rational v(0);
        for (int k = 0; k < nb; ++k) {
          const Rational& w = rule_[t][k];
          if (w != 0) v += w * cur[corners[k]];
        }
        next[tab[ci][t]] = v;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

RationalFunction HarmonicExtender::harmonic(const std::vector<Rational>& boundary_values,
                                            int m) {
  const LevelGraph& g0 = stack_.graph(0);
  if (boundary_values.size() != g0.boundary_ids.size())
    throw ParameterError("harmonic: wrong number of boundary values");
  RationalFunction u0 = zero_function<Rational>(g0);
  for (std::size_t i = 0; i < boundary_values.size(); ++i)
    u0[g0.boundary_ids[i]] = boundary_values[i];
  return extend(u0, m);
}

RationalFunction HarmonicExtender::spline(int m, int vertex, int target) {
  const LevelGraph& g = stack_.graph(m);
  if (vertex < 0 || vertex >= g.vertex_count())
    throw ParameterError("spline: vertex id out of range");
  RationalFunction u = zero_function<Rational>(g);
  u[vertex] = Rational(1);
  return extend(u, target);
}

Rational effective_resistance(LevelStack& stack, int m, int x, int y) {
  const LevelGraph& g = stack.graph(m);
  const int n = g.vertex_count();
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw ParameterError("resistance: vertex id out of range");
  if (x == y) return Rational(0);
  if (n - 2 > HarmonicExtender::kMaxExactInterior)
    throw CapacityError("resistance: level graph too large for exact solve");

  std::vector<int> interior;
  interior.reserve(n - 2);
  for (int v = 0; v < n; ++v)
    if (v != x && v != y) interior.push_back(v);

  RationalFunction u = zero_function<Rational>(g);
  u[x] = Rational(1);
  if (!interior.empty()) {
    auto A_II = laplacian_block(g, interior, interior);
    const std::vector<int> pin = {x};
    const auto A_Ix = laplacian_block(g, interior, pin);
    std::vector<std::vector<Rational>> rhs(interior.size(),
                                           std::vector<Rational>(1, Rational(0)));
    for (std::size_t i = 0; i < interior.size(); ++i) rhs[i][0] = -A_Ix[i][0];
    const auto sol = solve_linear_rational(std::move(A_II), std::move(rhs));
    for (std::size_t i = 0; i < interior.size(); ++i) u[interior[i]] = sol[i][0];
  }

  const Rational energy = renormalized_energy(stack.spec(), g, u);
  if (energy == 0) throw PreconditionError("resistance: degenerate minimizer");
  return Rational(1) / energy;
}

Eigen::MatrixXd resistance_matrix(LevelStack& stack, int m) {
  const LevelGraph& g = stack.graph(m);
  const int n = g.vertex_count();
  const double scale = to_double(rational_pow(stack.spec().r, -m));

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : g.edges) {
    L(a, a) += scale;
    L(b, b) += scale;
    L(a, b) -= scale;
    L(b, a) -= scale;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
  if (solver.info() != Eigen::Success)
    throw EigensolveError("resistance matrix: eigensolve failed");
  const Eigen::VectorXd& kappa = solver.eigenvalues();
  const Eigen::MatrixXd& psi = solver.eigenvectors();
  const double cutoff = 1e-12 * kappa[n - 1];

  // Pseudoinverse Gram matrix; R(i,j) = G_ii + G_jj - 2 G_ij.
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k)
    if (kappa[k] > cutoff) inv[k] = 1.0 / kappa[k];
  const Eigen::MatrixXd G = psi * inv.asDiagonal() * psi.transpose();

  Eigen::MatrixXd R(n, n);
  const Eigen::VectorXd d = G.diagonal();
  R = d.replicate(1, n) + d.transpose().replicate(n, 1) - 2.0 * G;
  R.diagonal().setZero();
  return R;
}

}  // namespace fractsob
