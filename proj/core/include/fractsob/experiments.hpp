#pragma once

#include "fractsob/decay.hpp"
#include "fractsob/differences.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/level_function.hpp"
#include "fractsob/spectral.hpp"

#include <limits>
#include <vector>

namespace fractsob {

// Piecewise-linear hat in the taxicab distance: 1 at the center, 0 outside
// radius rho. Exact at rational vertex coordinates.
struct BumpSpec {
  Coord center;
  Rational rho;
};

// Canonical bump: centered at a fixed interior point of the family, with
// radius one level-2 cell diameter (taxicab).
BumpSpec default_bump(const IfsSpec& spec);

RationalFunction bump_function(const LevelGraph& g, const BumpSpec& b);

// Largest number of neighbors a vertex has inside one cell; the constant in
// the composition inequality chain.
int chain_neighbor_bound(const LevelGraph& g);

// ---------------------------------------------------------------------------
// Difference-norm decay: u = L^{-s} f on the finest level, then the l^Q norm
// of the scale-m difference sums is fitted against r^m. The theoretical
// exponent is s(D+1) - D/Q for Q <= p and s(D+1) - D/p beyond; the bound is
// one-sided, so faster decay passes.
struct DifferenceDecayReport {
  double s = 0.0, p = 0.0, Q = 0.0;
  bool include_boundary = false;
  std::vector<int> levels;
  std::vector<double> norms;
  DecayFit fit;
  double theory = 0.0;
  double tolerance = 0.15;
  bool pass = false;
};

DifferenceDecayReport difference_decay_experiment(LevelStack& stack,
                                                  const EigenSystem& es,
                                                  const RealFunction& f, double s,
                                                  double p, double Q, int m_lo,
                                                  int m_hi,
                                                  bool include_boundary = false);

// ---------------------------------------------------------------------------
// Derivative-residual decay: extract the scaled corner derivative of
// u = L^{-s} f at q (corner of the cell word w), then fit the decay of
// |delta_m u - r^m du|. The level supplying du is excluded from the fit
// unless an override derivative is given.
struct DerivativeResidualReport {
  double s = 0.0, p = 0.0;
  NormalDerivativeTable<double> table;
  double du_used = 0.0;
  bool du_overridden = false;
  bool degenerate = false;     // all difference sums vanish
  bool inconclusive = false;   // degenerate input or non-convergent derivative
  std::vector<int> levels;
  std::vector<double> residuals;
  DecayFit fit;
  double theory = 0.0;  // s(D+1) - D/p
  double tolerance = 0.15;
  bool pass = false;
  // Cross-check of du against the same functional applied to the kernel
  // columns; skipped when a needed row is outside the active set.
  bool kernel_checked = false;
  double kernel_du = 0.0;
  bool kernel_match = false;
};

DerivativeResidualReport derivative_residual_experiment(
    LevelStack& stack, const EigenSystem& es, const RealFunction& f, double s,
    double p, const Coord& q, const Word& w, int m_lo = -1,
    double du_override = std::numeric_limits<double>::quiet_NaN());

// ---------------------------------------------------------------------------
// On-diagonal heat kernel: log h_t(x,x) against log t over the window
// [10/lambda_max, 0.1/lambda_1], fitted slope compared with -D/(D+1).
struct HeatDiagonalReport {
  int vertex_full = -1;
  double t_lo = 0.0, t_hi = 0.0;
  std::vector<double> t;
  std::vector<double> diag;
  LineFit fit;
  double target = 0.0;
  double tolerance = 0.1;
  bool pass = false;
};

HeatDiagonalReport heat_diagonal_experiment(const IfsSpec& spec, const EigenSystem& es,
                                            int vertex_full, int n_points = 12);

// ---------------------------------------------------------------------------
// Where the probed function u comes from.
enum class USource { harmonic, spectral };

// Squares leaving the Sobolev class: slopes of the corner difference of u and
// of the full difference sum of u^2 at a junction, plus the growth trend of
// sup |L_M^s(u^2)| against the stable sup |L_M^s u|.
struct AlgebraConfig {
  double s = 0.9;
  double p = std::numeric_limits<double>::infinity();
  Coord q;
  Word w;
  USource source = USource::harmonic;
  std::vector<Rational> boundary;  // harmonic boundary values
  BumpSpec bump;                   // spectral data (u = L^{-s} bump)
  int slope_level = 6;             // level realising u for the slope fits
  int slope_m_lo = 1;
  int slope_m_hi = 5;
  std::vector<int> sup_levels;     // growth-trend levels; empty skips the part
  bool recompute_per_level = true; // rebuild u at each level vs restrict fine u
  double du_gate = 1e-8;
  int dense_limit = 4000;
};

struct AlgebraFailureReport {
  bool region_ok = false;  // s(D+1) > D/p + 2
  double du_value = 0.0;
  bool inconclusive = false;
  std::vector<int> slope_levels;
  std::vector<double> delta_values;   // |delta_m u(q)|
  std::vector<double> square_values;  // |Delta_m(u^2)(q)|
  DecayFit delta_fit;
  DecayFit square_fit;
  double slope_tolerance = 0.05;
  bool delta_pass = false;   // slope within tolerance of 1
  bool square_pass = false;  // slope within tolerance of 2
  std::vector<int> sup_levels;
  std::vector<double> sup_u;
  std::vector<double> sup_usq;
  std::vector<double> ratio_u;    // successive sup ratios
  std::vector<double> ratio_usq;
  double ratio_low = 0.9, ratio_high = 1.1;
  bool u_controlled = false;   // every u ratio inside [ratio_low, ratio_high]
  bool usq_diverges = false;   // every u^2 ratio at least ratio_high
};

AlgebraFailureReport algebra_failure_experiment(LevelStack& stack,
                                                const AlgebraConfig& cfg);

// ---------------------------------------------------------------------------
// Convex composition: Phi applied to u, the inequality chain
// |delta_m u|^xi <= (B^{xi-1}/C) (|Delta_m(Phi o u)| + |Phi'(u(q))| |Delta_m u|)
// with B the in-cell neighbor bound, and the slope contradiction it forces.
enum class PhiKind { square, abs_power, affine };

struct PhiSpec {
  PhiKind kind = PhiKind::square;
  double xi = 2.0;  // convexity exponent (abs_power)
  double C = 1.0;   // convexity constant
  double affine_slope = 1.0, affine_offset = 0.0;
};

struct CompositionConfig {
  double s = 0.9;
  double p = std::numeric_limits<double>::infinity();
  Coord q;
  Word w;
  USource source = USource::harmonic;
  std::vector<Rational> boundary;
  BumpSpec bump;
  PhiSpec phi;
  int level = 6;
  int m_lo = 1;
  int m_hi = 5;
  int dense_limit = 4000;
};

struct CompositionReport {
  double xi = 0.0, C = 0.0;
  double phi_prime = 0.0;      // derivative of Phi at u(q)
  int chain_constant = 0;      // in-cell neighbor bound
  double u_at_q = 0.0;
  std::vector<int> levels;
  std::vector<double> delta_u;   // |delta_m u(q)|
  std::vector<double> diff_u;    // |Delta_m u(q)|
  std::vector<double> diff_phi;  // |Delta_m(Phi o u)(q)|
  std::vector<bool> chain_holds;
  bool chain_all = false;
  DecayFit phi_fit;
  DecayFit delta_fit;
  double required_exponent = 0.0;   // s(D+1) - D/p
  double implied_delta_slope = 0.0; // required / xi
  bool contradiction = false;  // measured delta slope undercuts the implied one
};

CompositionReport composition_experiment(LevelStack& stack,
                                         const CompositionConfig& cfg);

}  // namespace fractsob
