#include "fractsob/checks.hpp"

#include "fractsob/decay.hpp"
#include "fractsob/differences.hpp"
#include "fractsob/energy.hpp"
#include "fractsob/errors.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/operators.hpp"
#include "fractsob/spectral.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace fractsob {

namespace {

std::vector<double> rand_values(std::mt19937& gen, int n) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * (double(gen()) / 4294967296.0) - 1.0;
  return v;
}

Eigen::VectorXd rand_vector(std::mt19937& gen, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 2.0 * (double(gen()) / 4294967296.0) - 1.0;
  return v;
}

double sup_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

CheckResult check_nesting() {
  CheckResult res{"nesting", false, 0.0, 0.0,
                  "coordinate mismatches across level injections, both families"};
  int bad = 0;
  for (IfsSpec spec : {make_sg(), make_vicsek(1, 2)}) {
    const int top = spec.family == "sg" ? 4 : 3;
    LevelStack stack(spec);
    for (int m = 0; m < top; ++m) {
      const LevelGraph& g = stack.graph(m);
      const LevelGraph& gm = stack.graph(m + 1);
      const std::vector<int>& inj = stack.injection(m, m + 1);
      for (int i = 0; i < g.vertex_count(); ++i)
        if (g.coords[i] != gm.coords[inj[i]]) ++bad;
    }
  }
  res.observed = bad;
  res.pass = bad == 0;
  return res;
}

CheckResult check_determinism(const CheckOptions& opts) {
  CheckResult res{"determinism", false, 0.0, 0.0,
                  "max deviation between two independent rebuilds"};
  double worst = 0.0;
  EigenSystem first;
  for (int round = 0; round < 2; ++round) {
    IfsSpec spec = make_sg();
    LevelStack stack(spec);
    const OperatorAssembly op =
        assemble(spec, stack.graph(opts.spectral_level), BC::dirichlet);
    EigenSystem es = eigensolve(op, {});
    if (round == 0) {
      first = es;
      continue;
    }
    worst = std::max(worst, sup_diff(first.eigenvalues, es.eigenvalues));
    worst = std::max(
        worst, (first.modes - es.modes).cwiseAbs().maxCoeff());
    const double k0 = kernel_eval(first, fn_power(-0.8), 0, 1);
    const double k1 = kernel_eval(es, fn_power(-0.8), 0, 1);
    worst = std::max(worst, std::abs(k0 - k1));
    const auto emb0 = linf_embedding_check(first, spec.dim_D, 0.8, 4.0, 10, opts.seed);
    const auto emb1 = linf_embedding_check(es, spec.dim_D, 0.8, 4.0, 10, opts.seed);
    worst = std::max(worst, std::abs(emb0.max_ratio - emb1.max_ratio));
  }
  res.observed = worst;
  res.pass = worst == 0.0;
  return res;
}

CheckResult check_mass_conservation(const EigenSystem& neu) {
  CheckResult res{"mass-conservation", false, 0.0, 1e-10,
                  "max |e^{-tL} 1 - 1| under Neumann, t in {0.01, 0.1, 1}"};
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(neu.mass.size());
  double worst = 0.0;
  for (double t : {0.01, 0.1, 1.0}) {
    const Eigen::VectorXd v = apply_spectral(neu, fn_heat(t), ones);
    worst = std::max(worst, (v.array() - 1.0).abs().maxCoeff());
  }
  res.observed = worst;
  res.pass = worst <= res.tolerance;
  return res;
}

CheckResult check_spectral_mapping(const EigenSystem& dir, std::mt19937& gen,
                                   int trials) {
  CheckResult res{"spectral-mapping", false, 0.0, 1e-8,
                  "L^{-s} then L^{s} recovers f; product of symbols composes"};
  double worst = 0.0;
  const SpectralFn joint{[](double l) { return std::pow(l, 0.3) * std::exp(-0.5 * l); },
                         false, "l^0.3 e^(-0.5 l)"};
  for (int i = 0; i < trials; ++i) {
    const Eigen::VectorXd f = rand_vector(gen, int(dir.mass.size()));
    const Eigen::VectorXd back =
        apply_spectral(dir, fn_power(0.7), apply_spectral(dir, fn_power(-0.7), f));
    worst = std::max(worst, sup_diff(back, f));
    const Eigen::VectorXd composed =
        apply_spectral(dir, fn_heat(0.5), apply_spectral(dir, fn_power(0.3), f));
    worst = std::max(worst, sup_diff(composed, apply_spectral(dir, joint, f)));
  }
  res.observed = worst;
  res.pass = worst <= res.tolerance;
  return res;
}

CheckResult check_semigroup(const EigenSystem& dir, std::mt19937& gen, int trials) {
  CheckResult res{"semigroup", false, 0.0, 1e-8,
                  "e^{-0.9L} e^{-0.3L} f vs e^{-1.2L} f"};
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Eigen::VectorXd f = rand_vector(gen, int(dir.mass.size()));
    const Eigen::VectorXd two =
        apply_spectral(dir, fn_heat(0.9), apply_spectral(dir, fn_heat(0.3), f));
    worst = std::max(worst, sup_diff(two, apply_spectral(dir, fn_heat(1.2), f)));
  }
  res.observed = worst;
  res.pass = worst <= res.tolerance;
  return res;
}

CheckResult check_resolvent_identity(const EigenSystem& dir, std::mt19937& gen,
                                     int trials) {
  CheckResult res{"resolvent-identity", false, 0.0, 1e-8,
                  "G_1 f - G_3 f vs 2 G_1 G_3 f"};
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Eigen::VectorXd f = rand_vector(gen, int(dir.mass.size()));
    const Eigen::VectorXd lhs = apply_spectral(dir, fn_resolvent(1.0), f) -
                                apply_spectral(dir, fn_resolvent(3.0), f);
    const Eigen::VectorXd rhs =
        2.0 * apply_spectral(dir, fn_resolvent(1.0),
                             apply_spectral(dir, fn_resolvent(3.0), f));
    worst = std::max(worst, sup_diff(lhs, rhs));
  }
  res.observed = worst;
  res.pass = worst <= res.tolerance;
  return res;
}

CheckResult check_markov_positivity(const EigenSystem& dir, std::mt19937& gen,
                                    int trials) {
  CheckResult res{"markov-positivity", false, 0.0, 1e-10,
                  "worst negativity of e^{-tL} f for f >= 0, and sub-Markov excess"};
  double worst = 0.0;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(dir.mass.size());
  for (double t : {0.01, 0.1, 1.0}) {
    for (int i = 0; i < trials; ++i) {
      const Eigen::VectorXd f = rand_vector(gen, int(dir.mass.size())).cwiseAbs();
      const Eigen::VectorXd v = apply_spectral(dir, fn_heat(t), f);
      worst = std::max(worst, -v.minCoeff());
    }
    const Eigen::VectorXd mass = apply_spectral(dir, fn_heat(t), ones);
    worst = std::max(worst, mass.maxCoeff() - 1.0);
  }
  res.observed = std::max(worst, 0.0);
  res.pass = worst <= res.tolerance;
  return res;
}

CheckResult check_dirichlet_gap(LevelStack& stack) {
  CheckResult res{"dirichlet-gap", false, 0.0, 0.05,
                  "lambda_1 > 0 at levels 1..5; relative drift of the "
                  "renormalized lambda_1 over the last level pair"};
  const IfsSpec& spec = stack.spec();
  std::vector<double> lam;
  bool positive = true;
  for (int m = 1; m <= 5; ++m) {
    const EigenSystem es = eigensolve(assemble(spec, stack.graph(m), BC::dirichlet), {});
    lam.push_back(es.eigenvalues[0]);
    positive = positive && es.eigenvalues[0] > 0.0;
  }
  // the assembly already carries r^{-m} and mu^m, so lambda_1 itself converges
  res.observed = std::abs(lam[4] / lam[3] - 1.0);
  res.pass = positive && res.observed < res.tolerance;
  return res;
}

CheckResult check_eigen_residuals(const OperatorAssembly& op, const EigenSystem& es,
                                  CheckResult res) {
  double worst = 0.0;
  for (int k = 0; k < es.count(); ++k) {
    const Eigen::VectorXd r = op.stiffness * es.modes.col(k) -
                              es.eigenvalues[k] * es.mass.cwiseProduct(es.modes.col(k));
    worst = std::max(worst, r.norm() / std::max(es.lambda_scale, 1.0));
  }
  res.observed = std::max(res.observed, worst);
  res.pass = res.observed <= res.tolerance;
  return res;
}

CheckResult check_orthonormality(const EigenSystem& es, CheckResult res) {
  const Eigen::MatrixXd gram =
      es.modes.transpose() * es.mass.asDiagonal() * es.modes;
  const double dev =
      (gram - Eigen::MatrixXd::Identity(es.count(), es.count())).cwiseAbs().maxCoeff();
  res.observed = std::max(res.observed, dev);
  res.pass = res.observed <= res.tolerance;
  return res;
}

CheckResult check_harmonic_fixed_point(std::mt19937& gen) {
  CheckResult res{"harmonic-energy-fixed-point", false, 0.0, 0.0,
                  "renormalized energy level drift of harmonic extensions, "
                  "exact rational, both families"};
  int bad = 0;
  for (IfsSpec spec : {make_sg(), make_vicsek(1, 2)}) {
    LevelStack stack(spec);
    HarmonicExtender ext(stack);
    const int top = spec.family == "sg" ? 3 : 2;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> bvals;
      for (int i = 0; i < spec.v0_size(); ++i)
        bvals.push_back(Rational(int(gen() % 41) - 20, 7));
      const RationalFunction u = ext.harmonic(bvals, top);
      const Rational e_top = renormalized_energy(spec, stack.graph(top), u);
      for (int m = 0; m < top; ++m) {
        RationalFunction um;
        um.level = m;
        const std::vector<int>& inj = stack.injection(m, top);
        for (int i = 0; i < stack.graph(m).vertex_count(); ++i)
          um.values.push_back(u.values[inj[i]]);
        if (renormalized_energy(spec, stack.graph(m), um) != e_top) ++bad;
      }
    }
  }
  res.observed = bad;
  res.pass = bad == 0;
  return res;
}

CheckResult check_cell_rigidity(LevelStack& stack, std::mt19937& gen, int level) {
  CheckResult res{"cell-rigidity", false, 0.0, 1.0,
                  "min of ||delta_m u||^2 over (|V_0|/4) energy, 100 random u; "
                  "the exact identity makes the ratio 4"};
  const LevelGraph& g = stack.graph(level);
  const double quarter = double(stack.spec().v0_size()) / 4.0;
  double worst = std::numeric_limits<double>::infinity();
  bool identities = true;
  for (int trial = 0; trial < 100; ++trial) {
    RealFunction u;
    u.level = level;
    u.values = rand_values(gen, g.vertex_count());
    const auto rep = cell_identity_check(g, u);
    identities = identities && rep.difference_identity && rep.energy_identity;
    worst = std::min(worst, rep.delta_square_sum / (quarter * rep.raw_energy));
  }
  res.observed = worst;
  res.pass = identities && worst >= res.tolerance;
  return res;
}

CheckResult check_decay_fit() {
  CheckResult res{"decay-fit", false, 0.0, 1e-9,
                  "slope recovery from synthetic C r^{am}, a in {0.5, 1, 2, 3}"};
  double worst = 0.0;
  const std::vector<int> levels{1, 2, 3, 4, 5, 6};
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    std::vector<double> vals;
    for (int m : levels) vals.push_back(2.3 * std::pow(0.6, a * m));
    worst = std::max(worst, std::abs(fit_decay(levels, vals, 0.6).slope - a));
  }
  res.observed = worst;
  res.pass = worst <= res.tolerance;
  return res;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const CheckOptions& opts) {
  if (opts.spectral_level < 1 || opts.markov_level < 1 || opts.trials < 1)
    throw ParameterError("invariant suite: levels and trials must be positive");
  std::mt19937 gen(opts.seed);
  std::vector<CheckResult> out;

  out.push_back(check_nesting());
  out.push_back(check_determinism(opts));

  IfsSpec spec = make_sg();
  LevelStack stack(spec);
  const OperatorAssembly dir_op =
      assemble(spec, stack.graph(opts.spectral_level), BC::dirichlet);
  const EigenSystem dir = eigensolve(dir_op, {});
  const OperatorAssembly neu_op =
      assemble(spec, stack.graph(opts.spectral_level), BC::neumann);
  const EigenSystem neu = eigensolve(neu_op, {});

  out.push_back(check_mass_conservation(neu));
  out.push_back(check_spectral_mapping(dir, gen, opts.trials));
  out.push_back(check_semigroup(dir, gen, opts.trials));
  out.push_back(check_resolvent_identity(dir, gen, opts.trials));

  const EigenSystem markov =
      eigensolve(assemble(spec, stack.graph(opts.markov_level), BC::dirichlet), {});
  out.push_back(check_markov_positivity(markov, gen, opts.trials));
  out.push_back(check_dirichlet_gap(stack));

  CheckResult resid{"eigen-residuals", false, 0.0, 1e-8,
                    "generalized residual over the scale bound, both conditions"};
  resid = check_eigen_residuals(dir_op, dir, resid);
  resid = check_eigen_residuals(neu_op, neu, resid);
  out.push_back(resid);

  CheckResult gram{"orthonormality", false, 0.0, 1e-10,
                   "mass Gram matrix deviation from identity, both conditions"};
  gram = check_orthonormality(dir, gram);
  gram = check_orthonormality(neu, gram);
  out.push_back(gram);

  out.push_back(check_harmonic_fixed_point(gen));
  out.push_back(check_cell_rigidity(stack, gen, opts.markov_level));
  out.push_back(check_decay_fit());
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace fractsob
