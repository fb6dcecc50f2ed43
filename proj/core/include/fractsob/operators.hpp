#pragma once

#include "fractsob/geometry.hpp"
#include "fractsob/level_function.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace fractsob {

enum class BC { dirichlet, neumann };

const char* bc_name(BC bc);

// Renormalized stiffness r^{-m} A_m and lumped mass at one level, restricted
// to the active vertex set: everything for Neumann, the complement of V_0 for
// Dirichlet (diagonal entries keep the full vertex degree).
struct OperatorAssembly {
  int level = 0;
  BC bc = BC::dirichlet;
  int n_full = 0;                         // vertex count of the level graph
  std::vector<int> idx;                   // active row -> vertex id
  std::vector<int> pos;                   // vertex id -> active row, -1 dropped
  Eigen::SparseMatrix<double> stiffness;  // symmetric PSD; PD under Dirichlet
  Eigen::VectorXd mass;                   // positive diagonal weights
  double renorm = 1.0;                    // r^{-m}

  int size() const { return static_cast<int>(idx.size()); }
};

OperatorAssembly assemble(const IfsSpec& spec, const LevelGraph& g, BC bc);

// The operator action u -> M^{-1} (r^{-m} A) u on active rows.
Eigen::VectorXd apply_operator(const OperatorAssembly& op, const Eigen::VectorXd& u);

// Active rows of a full-graph function (Dirichlet drops the V_0 values).
Eigen::VectorXd restrict_rows(const OperatorAssembly& op, const RealFunction& u);

// Scatter active-row values back to the full graph, zero on dropped vertices.
RealFunction scatter_rows(const OperatorAssembly& op, const Eigen::VectorXd& v);

}  // namespace fractsob
