#include "fractsob/operators.hpp"

#include "fractsob/errors.hpp"
#include "fractsob/rational.hpp"

#include <vector>

namespace fractsob {

const char* bc_name(BC bc) { return bc == BC::dirichlet ? "dirichlet" : "neumann"; }

OperatorAssembly assemble(const IfsSpec& spec, const LevelGraph& g, BC bc) {
  OperatorAssembly op;
  op.level = g.level;
  op.bc = bc;
  op.n_full = g.vertex_count();
  op.renorm = to_double(rational_pow(spec.r, -g.level));

  std::vector<char> dropped(g.vertex_count(), 0);
  if (bc == BC::dirichlet)
    for (int b : g.boundary_ids) dropped[b] = 1;

  op.pos.assign(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (dropped[v]) continue;
    op.pos[v] = static_cast<int>(op.idx.size());
    op.idx.push_back(v);
  }
  const int n = op.size();
  if (n == 0) throw PreconditionError("assembly has no active vertices");

  const auto mass_exact = mass_vector(spec, g);
  op.mass.resize(n);
  for (int i = 0; i < n; ++i) op.mass[i] = to_double(mass_exact[op.idx[i]]);

  // Laplacian block: diagonal keeps the full degree, off-diagonal entries only
  // between active vertices.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) + 2 * g.edges.size());
  for (int i = 0; i < n; ++i) {
    const int v = op.idx[i];
    trip.emplace_back(i, i, op.renorm * static_cast<double>(g.adj[v].size()));
    for (int w : g.adj[v]) {
      const int j = op.pos[w];
      if (j >= 0) trip.emplace_back(i, j, -op.renorm);
    }
  }
  op.stiffness.resize(n, n);
  op.stiffness.setFromTriplets(trip.begin(), trip.end());
  op.stiffness.makeCompressed();
  return op;
}

Eigen::VectorXd apply_operator(const OperatorAssembly& op, const Eigen::VectorXd& u) {
  if (u.size() != op.size())
    throw LevelMismatchError("operator applied to a vector of the wrong size");
  return (op.stiffness * u).cwiseQuotient(op.mass);
}

Eigen::VectorXd restrict_rows(const OperatorAssembly& op, const RealFunction& u) {
  if (u.level != op.level || u.size() != op.n_full)
    throw LevelMismatchError("restriction input does not match the assembly level");
  Eigen::VectorXd v(op.size());
  for (int i = 0; i < op.size(); ++i) v[i] = u[op.idx[i]];
  return v;
}

RealFunction scatter_rows(const OperatorAssembly& op, const Eigen::VectorXd& v) {
  if (v.size() != op.size())
    throw LevelMismatchError("scatter input does not match the assembly size");
  RealFunction u;
  u.level = op.level;
  u.values.assign(op.n_full, 0.0);
  for (int i = 0; i < op.size(); ++i) u[op.idx[i]] = v[i];
  return u;
}

}  // namespace fractsob
