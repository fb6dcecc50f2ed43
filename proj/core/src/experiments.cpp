#include "fractsob/experiments.hpp"

#include "fractsob/energy.hpp"
#include "fractsob/errors.hpp"
#include "fractsob/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fractsob {

namespace {

double d_over(double dim_D, double p) {
  return std::isinf(p) ? 0.0 : dim_D / p;
}

int vertex_at(const LevelGraph& g, const Coord& p, const char* who) {
  const int x = g.index_of(p);
  if (x < 0) {
    std::ostringstream msg;
    msg << who << ": point is not a vertex of level " << g.level;
    throw ParameterError(msg.str());
  }
  return x;
}

Rational abs_rational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

BumpSpec default_bump(const IfsSpec& spec) {
  BumpSpec b;
  if (spec.family == "vicsek") {
    // Cube center.
    b.center.assign(spec.ambient_dim, Rational(1, 2));
  } else {
    b.center.resize(spec.ambient_dim);
    for (int k = 0; k < spec.ambient_dim; ++k)
      b.center[k] = (spec.boundary[0][k] + spec.boundary[1][k]) / 2;
  }
  // Taxicab diameter of the boundary set, scaled to a level-2 cell.
  Rational diam(0);
  for (std::size_t i = 0; i < spec.boundary.size(); ++i)
    for (std::size_t j = i + 1; j < spec.boundary.size(); ++j) {
      Rational d(0);
      for (int k = 0; k < spec.ambient_dim; ++k)
        d += abs_rational(spec.boundary[i][k] - spec.boundary[j][k]);
      if (d > diam) diam = d;
    }
  const Rational scale = spec.maps[0].A[0][0];
  b.rho = scale * scale * diam;
  return b;
}

RationalFunction bump_function(const LevelGraph& g, const BumpSpec& b) {
  if (static_cast<int>(b.center.size()) != g.ambient_dim)
    throw ParameterError("bump: center dimension does not match the graph");
  if (!(b.rho > 0)) throw ParameterError("bump: radius must be positive");
  RationalFunction f;
  f.level = g.level;
  f.values.reserve(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) {
    Rational d(0);
    for (int k = 0; k < g.ambient_dim; ++k)
      d += abs_rational(g.coords[i][k] - b.center[k]);
    const Rational v = 1 - d / b.rho;
    f.values.push_back(v > 0 ? v : Rational(0));
  }
  return f;
}

int chain_neighbor_bound(const LevelGraph& g) {
  int bound = 0;
  for (const Cell& cell : g.cells)
    bound = std::max(bound, static_cast<int>(cell.corners.size()) - 1);
  return bound;
}

namespace {

// u = L^{-s} f extended by zero over any dropped rows.
RealFunction inverse_power_solution(const EigenSystem& es, const RealFunction& f,
                                    double s) {
  const Eigen::VectorXd u = apply_spectral(es, fn_power(-s), restrict_rows(es, f));
  return scatter_rows(es, u);
}

}  // namespace

DifferenceDecayReport difference_decay_experiment(LevelStack& stack,
                                                  const EigenSystem& es,
                                                  const RealFunction& f, double s,
                                                  double p, double Q, int m_lo,
                                                  int m_hi, bool include_boundary) {
  const IfsSpec& spec = stack.spec();
  if (p < 1.0 || Q < 1.0)
    throw ParameterError("difference decay: p and Q must be at least 1");
  if (!(s > 0.0)) throw ParameterError("difference decay: s must be positive");
  if (m_lo < 0 || m_hi > es.level || m_hi - m_lo < 2)
    throw ParameterError("difference decay: need at least three levels up to the data");
  if (!(s * spec.d_plus_1() > d_over(spec.dim_D, p)))
    throw PreconditionError("difference decay: hypothesis s(D+1) > D/p fails");

  const RealFunction u = inverse_power_solution(es, f, s);

  DifferenceDecayReport rep;
  rep.s = s;
  rep.p = p;
  rep.Q = Q;
  rep.include_boundary = include_boundary;
  for (int m = m_lo; m <= m_hi; ++m) {
    const LevelGraph& g = stack.graph(m);
    std::vector<char> skip(g.vertex_count(), 0);
    if (!include_boundary)
      for (int b : g.boundary_ids) skip[b] = 1;
    std::vector<double> values;
    values.reserve(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x)
      if (!skip[x]) values.push_back(graph_difference_at(stack, u, m, x));
    rep.levels.push_back(m);
    rep.norms.push_back(lq_norm(values, Q));
  }
  rep.fit = fit_decay(rep.levels, rep.norms, to_double(spec.r));
  const double dq = Q <= p ? d_over(spec.dim_D, Q) : d_over(spec.dim_D, p);
  rep.theory = s * spec.d_plus_1() - dq;
  rep.pass = rep.fit.slope >= rep.theory - rep.tolerance;
  return rep;
}

DerivativeResidualReport derivative_residual_experiment(
    LevelStack& stack, const EigenSystem& es, const RealFunction& f, double s,
    double p, const Coord& q, const Word& w, int m_lo, double du_override) {
  const IfsSpec& spec = stack.spec();
  if (p < 1.0) throw ParameterError("derivative residual: p must be at least 1");
  if (!(s * spec.d_plus_1() > d_over(spec.dim_D, p) + 1.0))
    throw PreconditionError("derivative residual: hypothesis s(D+1) > D/p + 1 fails");

  const RealFunction u = inverse_power_solution(es, f, s);

  DerivativeResidualReport rep;
  rep.s = s;
  rep.p = p;
  rep.table = normal_derivative(stack, u, q, w, m_lo);
  rep.du_overridden = !std::isnan(du_override);
  rep.du_used = rep.du_overridden ? du_override : rep.table.value;

  double raw_max = 0.0;
  for (double v : rep.table.raw) raw_max = std::max(raw_max, std::abs(v));
  rep.degenerate = raw_max == 0.0;
  rep.inconclusive = rep.degenerate || (!rep.du_overridden && !rep.table.converged);

  const double r = to_double(spec.r);
  const int top = rep.table.levels.back();
  for (std::size_t i = 0; i < rep.table.levels.size(); ++i) {
    const int m = rep.table.levels[i];
    if (m == top && !rep.du_overridden) continue;  // residual zero by construction
    rep.levels.push_back(m);
    rep.residuals.push_back(std::abs(rep.table.raw[i] - std::pow(r, m) * rep.du_used));
  }

  rep.theory = s * spec.d_plus_1() - d_over(spec.dim_D, p);
  if (!rep.degenerate) {
    bool all_zero = true;
    for (double v : rep.residuals) all_zero = all_zero && v == 0.0;
    if (all_zero) {
      rep.pass = true;  // the derivative reproduces every level exactly
    } else {
      rep.fit = fit_decay(rep.levels, rep.residuals, r);
      rep.pass = rep.fit.slope >= rep.theory - rep.tolerance;
    }
  }

  // Kernel-column cross-check of the derivative functional, by linearity.
  const LevelGraph& g = stack.graph(es.level);
  const int xq = g.index_of(q);
  if (xq >= 0) {
    int chosen = -1;
    for (int ci : g.cells_at[xq]) {
      if (!word_has_prefix(g.cells[ci].word, w)) continue;
      if (chosen >= 0) { chosen = -1; break; }
      chosen = ci;
    }
    if (chosen >= 0) {
      bool active = es.pos[xq] >= 0;
      for (int y : g.cells[chosen].corners) active = active && es.pos[y] >= 0;
      if (active) {
        const SpectralFn gs = fn_power(-s);
        const Eigen::VectorXd f_act = restrict_rows(es, f);
        const Eigen::VectorXd weighted = es.mass.cwiseProduct(f_act);
        const Eigen::VectorXd col_q = kernel_column(es, gs, es.pos[xq]);
        double acc = 0.0;
        for (int y : g.cells[chosen].corners) {
          if (y == xq) continue;
          const Eigen::VectorXd col_y = kernel_column(es, gs, es.pos[y]);
          acc += (col_q - col_y).dot(weighted);
        }
        rep.kernel_checked = true;
        rep.kernel_du = std::pow(r, -es.level) * acc;
        rep.kernel_match =
            std::abs(rep.kernel_du - rep.table.value) <=
            1e-8 * std::max(1.0, std::abs(rep.table.value));
      }
    }
  }
  return rep;
}

HeatDiagonalReport heat_diagonal_experiment(const IfsSpec& spec, const EigenSystem& es,
                                            int vertex_full, int n_points) {
  if (!es.full)
    throw PreconditionError("heat diagonal: needs the full spectrum for small times");
  if (n_points < 3) throw ParameterError("heat diagonal: need at least three times");
  if (vertex_full < 0 || vertex_full >= es.n_full)
    throw ParameterError("heat diagonal: vertex out of range");
  const int a = es.pos[vertex_full];
  if (a < 0) throw ParameterError("heat diagonal: vertex is outside the active rows");

  HeatDiagonalReport rep;
  rep.vertex_full = vertex_full;
  rep.t_lo = 10.0 / es.lambda_max();
  rep.t_hi = 0.1 / es.lambda_min_positive();
  if (!(rep.t_lo < rep.t_hi))
    throw PreconditionError("heat diagonal: empty time window at this level");

  std::vector<double> lx, ly;
  for (int i = 0; i < n_points; ++i) {
    const double t =
        rep.t_lo * std::pow(rep.t_hi / rep.t_lo, double(i) / double(n_points - 1));
    const double h = kernel_eval(es, fn_heat(t), a, a);
    rep.t.push_back(t);
    rep.diag.push_back(h);
    if (h > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(h));
    }
  }
  rep.fit = fit_line(lx, ly);
  rep.target = -spec.dim_D / spec.d_plus_1();
  rep.pass = std::abs(rep.fit.slope - rep.target) <= rep.tolerance;
  return rep;
}

namespace {

// Realised probe function at one level, extended by zero over dropped rows
// for the spectral source. Harmonic data is exact before conversion.
RealFunction realize_u(LevelStack& stack, USource source,
                       const std::vector<Rational>& boundary, const BumpSpec& bump,
                       double s, int level, int dense_limit, BC bc) {
  if (source == USource::harmonic) {
    if (static_cast<int>(boundary.size()) != stack.spec().v0_size())
      throw ParameterError("probe function: boundary values must cover V_0");
    HarmonicExtender ext(stack);
    return to_real(ext.harmonic(boundary, level));
  }
  const LevelGraph& g = stack.graph(level);
  const OperatorAssembly op = assemble(stack.spec(), g, bc);
  EigensolveOptions opts;
  opts.dense_limit = dense_limit;
  const EigenSystem es = eigensolve(op, opts);
  const BumpSpec b = bump.center.empty() ? default_bump(stack.spec()) : bump;
  const RealFunction f = to_real(bump_function(g, b));
  return inverse_power_solution(es, f, s);
}

RealFunction square_pointwise(const RealFunction& u) {
  RealFunction v;
  v.level = u.level;
  v.values.reserve(u.values.size());
  for (double x : u.values) v.values.push_back(x * x);
  return v;
}

double sup_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

AlgebraFailureReport algebra_failure_experiment(LevelStack& stack,
                                                const AlgebraConfig& cfg) {
  const IfsSpec& spec = stack.spec();
  if (cfg.p < 1.0) throw ParameterError("algebra failure: p must be at least 1");
  if (cfg.slope_m_lo < static_cast<int>(cfg.w.size()) ||
      cfg.slope_m_hi - cfg.slope_m_lo < 2 || cfg.slope_m_hi > cfg.slope_level)
    throw ParameterError("algebra failure: bad slope level range");

  AlgebraFailureReport rep;
  rep.region_ok =
      cfg.s * spec.d_plus_1() > d_over(spec.dim_D, cfg.p) + 2.0;

  const BC bc = cfg.source == USource::harmonic ? BC::neumann : BC::dirichlet;
  const RealFunction u = realize_u(stack, cfg.source, cfg.boundary, cfg.bump, cfg.s,
                                   cfg.slope_level, cfg.dense_limit, bc);
  const RealFunction usq = square_pointwise(u);

  const double r = to_double(spec.r);
  double delta_top = 0.0;
  for (int m = cfg.slope_m_lo; m <= cfg.slope_m_hi; ++m) {
    const int x = vertex_at(stack.graph(m), cfg.q, "algebra failure");
    const double del = cell_difference_at(stack, u, m, x, cfg.w);
    if (m == cfg.slope_m_hi) delta_top = del;
    rep.slope_levels.push_back(m);
    rep.delta_values.push_back(std::abs(del));
    rep.square_values.push_back(std::abs(graph_difference_at(stack, usq, m, x)));
  }

  rep.du_value = delta_top * std::pow(r, -cfg.slope_m_hi);
  if (std::abs(rep.du_value) <= cfg.du_gate) {
    rep.inconclusive = true;
  } else {
    rep.delta_fit = fit_decay(rep.slope_levels, rep.delta_values, r);
    rep.square_fit = fit_decay(rep.slope_levels, rep.square_values, r);
    rep.delta_pass = std::abs(rep.delta_fit.slope - 1.0) <= rep.slope_tolerance;
    rep.square_pass = std::abs(rep.square_fit.slope - 2.0) <= rep.slope_tolerance;
  }

  if (cfg.sup_levels.empty()) return rep;
  for (std::size_t i = 1; i < cfg.sup_levels.size(); ++i)
    if (cfg.sup_levels[i] <= cfg.sup_levels[i - 1])
      throw ParameterError("algebra failure: growth levels must increase");

  for (int M : cfg.sup_levels) {
    RealFunction um;
    if (cfg.recompute_per_level) {
      um = realize_u(stack, cfg.source, cfg.boundary, cfg.bump, cfg.s, M,
                     cfg.dense_limit, bc);
    } else {
      if (M > cfg.slope_level)
        throw ParameterError("algebra failure: growth level above the realised u");
      const std::vector<int>& inj = stack.injection(M, cfg.slope_level);
      um.level = M;
      um.values.resize(stack.graph(M).vertex_count());
      for (std::size_t i = 0; i < um.values.size(); ++i)
        um.values[i] = u.values[inj[i]];
    }
    const OperatorAssembly op = assemble(spec, stack.graph(M), bc);
    EigensolveOptions opts;
    opts.dense_limit = cfg.dense_limit;
    const EigenSystem es = eigensolve(op, opts);
    const SpectralFn gs = fn_power(cfg.s);
    rep.sup_levels.push_back(M);
    rep.sup_u.push_back(sup_abs(apply_spectral(es, gs, restrict_rows(es, um))));
    rep.sup_usq.push_back(
        sup_abs(apply_spectral(es, gs, restrict_rows(es, square_pointwise(um)))));
  }
  rep.u_controlled = rep.sup_levels.size() > 1;
  rep.usq_diverges = rep.sup_levels.size() > 1;
  for (std::size_t i = 1; i < rep.sup_levels.size(); ++i) {
    const double ru = rep.sup_u[i] / rep.sup_u[i - 1];
    const double rq = rep.sup_usq[i] / rep.sup_usq[i - 1];
    rep.ratio_u.push_back(ru);
    rep.ratio_usq.push_back(rq);
    rep.u_controlled = rep.u_controlled && ru >= rep.ratio_low && ru <= rep.ratio_high;
    rep.usq_diverges = rep.usq_diverges && rq >= rep.ratio_high;
  }
  return rep;
}

CompositionReport composition_experiment(LevelStack& stack,
                                         const CompositionConfig& cfg) {
  const IfsSpec& spec = stack.spec();
  if (cfg.p < 1.0) throw ParameterError("composition: p must be at least 1");
  if (cfg.phi.kind == PhiKind::affine)
    throw ParameterError("composition: an affine map admits no convexity constant");
  const double required = cfg.s * spec.d_plus_1() - d_over(spec.dim_D, cfg.p);
  const double xi = cfg.phi.kind == PhiKind::square ? 2.0 : cfg.phi.xi;
  if (!(xi >= 1.0) || !(xi < required))
    throw ParameterError("composition: exponent must satisfy 1 <= xi < s(D+1) - D/p");
  if (!(cfg.phi.C > 0.0)) throw ParameterError("composition: constant must be positive");
  if (cfg.m_lo < static_cast<int>(cfg.w.size()) || cfg.m_hi - cfg.m_lo < 2 ||
      cfg.m_hi > cfg.level)
    throw ParameterError("composition: bad level range");

  const BC bc = cfg.source == USource::harmonic ? BC::neumann : BC::dirichlet;
  const RealFunction u = realize_u(stack, cfg.source, cfg.boundary, cfg.bump, cfg.s,
                                   cfg.level, cfg.dense_limit, bc);

  CompositionReport rep;
  rep.xi = xi;
  rep.C = cfg.phi.C;
  rep.phi_prime = 0.0;  // both built-in convex kinds are flat at the base value
  rep.chain_constant = chain_neighbor_bound(stack.graph(cfg.level));
  rep.required_exponent = required;
  rep.implied_delta_slope = required / xi;

  const int xq_top = vertex_at(stack.graph(cfg.level), cfg.q, "composition");
  rep.u_at_q = u.values[xq_top];

  RealFunction phiu;
  phiu.level = u.level;
  phiu.values.reserve(u.values.size());
  for (double y : u.values) {
    const double d = y - rep.u_at_q;
    phiu.values.push_back(cfg.phi.kind == PhiKind::square
                              ? d * d
                              : std::pow(std::abs(d), xi));
  }

  const double slack = 1e-9;
  const double bfac = std::pow(double(rep.chain_constant), xi - 1.0) / cfg.phi.C;
  rep.chain_all = true;
  for (int m = cfg.m_lo; m <= cfg.m_hi; ++m) {
    const int x = vertex_at(stack.graph(m), cfg.q, "composition");
    const double del = std::abs(cell_difference_at(stack, u, m, x, cfg.w));
    const double du_all = std::abs(graph_difference_at(stack, u, m, x));
    const double dphi = std::abs(graph_difference_at(stack, phiu, m, x));
    rep.levels.push_back(m);
    rep.delta_u.push_back(del);
    rep.diff_u.push_back(du_all);
    rep.diff_phi.push_back(dphi);
    const double lhs = std::pow(del, xi);
    const double rhs = bfac * (dphi + rep.phi_prime * du_all);
    const bool ok = lhs <= rhs * (1.0 + slack) + 1e-300;
    rep.chain_holds.push_back(ok);
    rep.chain_all = rep.chain_all && ok;
  }

  const double r = to_double(spec.r);
  rep.phi_fit = fit_decay(rep.levels, rep.diff_phi, r);
  rep.delta_fit = fit_decay(rep.levels, rep.delta_u, r);
  rep.contradiction =
      rep.chain_all && rep.delta_fit.slope < rep.implied_delta_slope - 0.05;
  return rep;
}

}  // namespace fractsob
