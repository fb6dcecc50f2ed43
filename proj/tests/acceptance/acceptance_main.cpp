// Acceptance suite: one numbered criterion per line, every tolerance pinned
// in code. A failing line is reported with the measured values; the program
// exits with the number of failed criteria.

#include "fractsob/checks.hpp"
#include "fractsob/differences.hpp"
#include "fractsob/energy.hpp"
#include "fractsob/experiments.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/io.hpp"
#include "fractsob/operators.hpp"
#include "fractsob/region.hpp"
#include "fractsob/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace fractsob;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Verdict {
  bool pass = false;
  std::string detail;
};

double rand_unit(std::mt19937& gen) {
  return 2.0 * (double(gen()) / 4294967296.0) - 1.0;
}

std::vector<Rational> rand_rationals(std::mt19937& gen, int n) {
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.push_back(Rational(int(gen() % 41) - 20, 7));
  return v;
}

RealFunction rand_function(std::mt19937& gen, const LevelGraph& g) {
  RealFunction u;
  u.level = g.level;
  u.values.resize(g.vertex_count());
  for (double& x : u.values) x = rand_unit(gen);
  return u;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1. Harmonic extension on Vicsek crosses: for mean-zero boundary data the
// central-cube corner values are the boundary values shrunk by 1/(2L+1),
// exactly, on V(1,2) and V(2,3).
Verdict criterion_1() {
  std::mt19937 gen(11);
  int bad = 0;
  for (auto [L, N] : {std::pair<int, int>{1, 2}, {2, 3}}) {
    const IfsSpec spec = make_vicsek(L, N);
    LevelStack stack(spec);
    HarmonicExtender ext(stack);
    const LevelGraph& g1 = stack.graph(1);
    const Rational denom(2 * L + 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> a = rand_rationals(gen, spec.v0_size());
      Rational mean(0);
      for (const Rational& x : a) mean += x;
      mean /= spec.v0_size();
      for (Rational& x : a) x -= mean;

      const RationalFunction u = ext.harmonic(a, 1);
      for (int i = 0; i < spec.v0_size(); ++i) {
        Coord inner;
        for (const Rational& c : spec.boundary[i])
          inner.push_back((Rational(L) + c) / denom);
        const int id = g1.index_of(inner);
        if (id < 0 || u.values[id] != a[i] / denom) ++bad;
      }
    }
  }
  return {bad == 0, "V(1,2) and V(2,3), 20 mean-zero boundary vectors each, "
                    "central corner values a_i/(2L+1) exact; mismatches: " +
                        std::to_string(bad)};
}

// 2. The renormalized energy of the minimal one-level extension equals the
// boundary energy exactly, on SG, V(1,2), and V(2,3).
Verdict criterion_2() {
  std::mt19937 gen(12);
  int bad = 0;
  for (const IfsSpec& spec : {make_sg(), make_vicsek(1, 2), make_vicsek(2, 3)}) {
    LevelStack stack(spec);
    HarmonicExtender ext(stack);
    const LevelGraph& g0 = stack.graph(0);
    const LevelGraph& g1 = stack.graph(1);
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<Rational> a = rand_rationals(gen, spec.v0_size());
      RationalFunction u0;
      u0.level = 0;
      u0.values.resize(g0.vertex_count());
      for (int i = 0; i < spec.v0_size(); ++i) u0.values[g0.boundary_ids[i]] = a[i];
      const RationalFunction u1 = ext.extend(u0, 1);
      if (renormalized_energy(spec, g1, u1) != renormalized_energy(spec, g0, u0))
        ++bad;
    }
  }
  return {bad == 0,
          "renormalized level-1 energy of the minimal extension vs level-0 "
          "energy, exact rational, 3 families x 5 trials; mismatches: " +
              std::to_string(bad)};
}

// 3. Boundary normal derivatives of the SG harmonic function with boundary
// values (1,0,0): 2 at the first corner, -1 at the others, the scaled
// difference constant across m = 0..5 to 1e-9, and the three values sum to 0.
Verdict criterion_3() {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  HarmonicExtender ext(stack);
  const RationalFunction u = ext.harmonic({Rational(1), Rational(0), Rational(0)}, 5);

  const double expected[3] = {2.0, -1.0, -1.0};
  int bad = 0;
  Rational total(0);
  std::ostringstream ss;
  for (int i = 0; i < 3; ++i) {
    const auto table = normal_derivative(stack, u, spec.boundary[i]);
    if (static_cast<int>(table.levels.size()) != 6) ++bad;
    for (const Rational& sc : table.scaled)
      if (std::abs(to_double(sc) - expected[i]) > 1e-9) ++bad;
    total += table.value;
    ss << (i ? ", " : "") << "du(q" << i << ") = " << fmt(to_double(table.value));
  }
  if (total != 0) ++bad;
  return {bad == 0, ss.str() + "; scaled differences constant over m = 0..5 "
                              "to 1e-9, sum exactly 0; violations: " +
                        std::to_string(bad)};
}

// 4. Summation by parts: the interior sum of (Au)v - u(Av) equals the corner
// sum of u dv - du v, to 1e-9, for 50 random pairs on SG level 4 and V(1,2)
// level 3, over the whole space and over 5 random cells.
Verdict criterion_4() {
  std::mt19937 gen(14);
  double worst = 0.0;
  for (auto [family, level] : {std::pair<IfsSpec, int>{make_sg(), 4},
                               {make_vicsek(1, 2), 3}}) {
    LevelStack stack(family);
    const LevelGraph& g = stack.graph(level);
    std::vector<Word> prefixes{{}};
    for (int c = 0; c < 5; ++c) {
      Word w;
      const int len = 1 + int(gen() % unsigned(level - 1));
      for (int j = 0; j < len; ++j) w.push_back(1 + int(gen() % unsigned(family.J())));
      prefixes.push_back(w);
    }
    for (int trial = 0; trial < 50; ++trial) {
      const RealFunction u = rand_function(gen, g);
      const RealFunction v = rand_function(gen, g);
      for (const Word& w : prefixes) {
        const auto rep = gauss_green_pair(stack, u, v, w);
        worst = std::max(worst, std::abs(rep.interior_sum - rep.boundary_sum));
      }
    }
  }
  return {worst <= 1e-9, "max |interior - boundary| = " + fmt(worst) +
                             " over 2 families x 50 pairs x (whole space + 5 "
                             "cells), tolerance 1e-9"};
}

// 5. Cell difference identity: within every cell,
// delta_m u(x) - delta_m u(y) = |V_0| (u(x) - u(y)), exact in rational
// arithmetic, 20 random u per family and level, m = 1..4.
Verdict criterion_5() {
  std::mt19937 gen(15);
  int bad = 0;
  for (const IfsSpec& spec : {make_sg(), make_vicsek(1, 2)}) {
    LevelStack stack(spec);
    for (int m = 1; m <= 4; ++m) {
      const LevelGraph& g = stack.graph(m);
      for (int trial = 0; trial < 20; ++trial) {
        RationalFunction u;
        u.level = m;
        u.values = rand_rationals(gen, g.vertex_count());
        if (!cell_identity_check(g, u).difference_identity) ++bad;
      }
    }
  }
  return {bad == 0, "exact corner-pair identity, 2 families x levels 1..4 x "
                    "20 random u; violations: " +
                        std::to_string(bad)};
}

// 6. On-diagonal heat kernel scaling at an interior junction of SG level 6:
// log-log slope within 0.1 of -D/(D+1) over the spectral time window.
Verdict criterion_6(const IfsSpec& spec, LevelStack& stack, const EigenSystem& es6) {
  const LevelGraph& g = stack.graph(6);
  const int x = g.index_of({Rational(1, 2), Rational(0)});
  const auto rep = heat_diagonal_experiment(spec, es6, x, 12);
  return {rep.pass, "slope " + fmt(rep.fit.slope) + " vs -D/(D+1) = " +
                        fmt(rep.target) + " +/- 0.1, window [" + fmt(rep.t_lo) +
                        ", " + fmt(rep.t_hi) + "]"};
}

// 7. Difference-norm decay for u = L^{-s} 1, s = 0.8 on SG level 6, m = 1..5:
// sup-norm slope at least s(D+1) - 0.15, l^2-norm slope at least
// s(D+1) - D/2 - 0.15.
Verdict criterion_7(const IfsSpec& spec, LevelStack& stack, const EigenSystem& es6) {
  RealFunction f;
  f.level = 6;
  f.values.assign(stack.graph(6).vertex_count(), 1.0);
  const auto sup = difference_decay_experiment(stack, es6, f, 0.8, kInf, kInf, 1, 5);
  const auto l2 = difference_decay_experiment(stack, es6, f, 0.8, kInf, 2.0, 1, 5);
  return {sup.pass && l2.pass,
          "sup slope " + fmt(sup.fit.slope) + " >= " + fmt(sup.theory - 0.15) +
              "; l^2 slope " + fmt(l2.fit.slope) + " >= " + fmt(l2.theory - 0.15)};
}

// 8. Harmonic square at a junction: |delta_m u| slope 1.00 +/- 0.05 and
// |Delta_m(u^2)| slope 2.00 +/- 0.05 over m = 1..5 at level 6, with
// (s, p) = (0.9, inf) inside the failure region.
Verdict criterion_8(LevelStack& stack) {
  AlgebraConfig ac;
  ac.s = 0.9;
  ac.p = kInf;
  ac.q = {Rational(1, 2), Rational(0)};
  ac.w = {1};
  ac.source = USource::harmonic;
  ac.boundary = {Rational(1), Rational(0), Rational(0)};
  ac.slope_level = 6;
  ac.slope_m_lo = 1;
  ac.slope_m_hi = 5;
  const AlgebraFailureReport rep = algebra_failure_experiment(stack, ac);

  AlgebraConfig shifted = ac;
  shifted.slope_m_lo = 2;
  shifted.slope_m_hi = 6;
  const AlgebraFailureReport rep26 = algebra_failure_experiment(stack, shifted);

  const bool pass = rep.region_ok && !rep.inconclusive && rep.delta_pass &&
                    rep.square_pass;
  return {pass, "delta slope " + fmt(rep.delta_fit.slope) +
                    " (target 1.00 +/- 0.05), square slope " +
                    fmt(rep.square_fit.slope) +
                    " (target 2.00 +/- 0.05) over m = 1..5; over m = 2..6 the "
                    "square slope is " +
                    fmt(rep26.square_fit.slope) + "; region_ok " +
                    (rep.region_ok ? "yes" : "no")};
}

// 9. Spectral square divergence trend: u = L^{-s}(bump), s = 0.9, p = inf;
// sup|L_M^s(u^2)| must grow by a factor >= 1.1 at each step M = 3..6 while
// sup|L_M^s u| stays within +/- 10%. The function u is realized once at level
// 6 and restricted (the literal reading); the recomputed-per-level variant is
// reported alongside.
Verdict criterion_9(LevelStack& stack) {
  AlgebraConfig ac;
  ac.s = 0.9;
  ac.p = kInf;
  ac.q = {Rational(1, 2), Rational(0)};
  ac.w = {1};
  ac.source = USource::spectral;
  ac.bump = default_bump(stack.spec());
  ac.slope_level = 6;
  ac.slope_m_lo = 1;
  ac.slope_m_hi = 5;
  ac.sup_levels = {3, 4, 5, 6};
  ac.recompute_per_level = false;
  const AlgebraFailureReport fixed = algebra_failure_experiment(stack, ac);

  ac.recompute_per_level = true;
  const AlgebraFailureReport fresh = algebra_failure_experiment(stack, ac);

  auto ratios = [](const std::vector<double>& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " " : "") + fmt(r[i]);
    return s + "]";
  };
  const bool pass = fixed.u_controlled && fixed.usq_diverges;
  return {pass, "fixed u: sup(u^2) step ratios " + ratios(fixed.ratio_usq) +
                    " (need every >= 1.1), sup(u) step ratios " +
                    ratios(fixed.ratio_u) +
                    " (need every within [0.9, 1.1]); recomputed u: sup(u^2) " +
                    ratios(fresh.ratio_usq) + ", sup(u) " + ratios(fresh.ratio_u)};
}

// 10. Failure-region calculators: the SG nonemptiness threshold in p matches
// log3/(2 log3 - log5) and acts as the exact cutoff; the Vicsek branching
// search returns a finite N for the full (s, p) grid with sp > 1.
Verdict criterion_10() {
  int bad = 0;
  const double thr = sg_nonempty_p_threshold();
  const double expected = std::log(3.0) / (2.0 * std::log(3.0) - std::log(5.0));
  if (std::abs(thr - expected) > 1e-12) ++bad;

  const IfsSpec sg = make_sg();
  RegionParams params;
  params.s = 0.9;
  params.p = thr * 1.01;
  if (!(region_check(sg, params).s_star < 1.0)) ++bad;
  params.p = thr * 0.99;
  if (!(region_check(sg, params).s_star >= 1.0)) ++bad;

  const double ss[3] = {0.55, 0.7, 0.9};
  const double ps[3] = {2.0, 4.0, kInf};
  const int expected_n[3][3] = {{46, 8, 5}, {11, 5, 3}, {5, 3, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto res = vicsek_find_n(ss[i], ps[j]);
      if (!res.found || res.N != expected_n[i][j]) ++bad;
    }
  return {bad == 0, "threshold " + fmt(thr) + " matches and flips the cutoff; "
                    "branching search finite on all 9 grid points; "
                    "violations: " +
                        std::to_string(bad)};
}

// 11. Kernel bound trends on SG level 5: the Riesz ratio against
// R^{s(D+1)-D} and the diagonal resolvent ratio against (1+lambda)^{-1/(D+1)}
// both fit log-log slopes of magnitude at most 0.1.
Verdict criterion_11(const IfsSpec& spec, LevelStack& stack, const EigenSystem& es5) {
  const Eigen::MatrixXd R = resistance_matrix(stack, 5);
  const double r_min = std::pow(to_double(spec.r), 4);

  std::vector<std::pair<int, int>> pairs;
  std::vector<double> dist;
  for (int x = 3; x < es5.n_full && pairs.size() < 150; x += 17)
    for (int y = x + 5; y < es5.n_full && pairs.size() < 150; y += 23) {
      if (es5.pos[x] < 0 || es5.pos[y] < 0) continue;
      if (R(x, y) < r_min) continue;
      pairs.push_back({es5.pos[x], es5.pos[y]});
      dist.push_back(R(x, y));
    }
  const auto riesz = riesz_bound_trend(es5, 0.8, spec.dim_D, pairs, dist);

  std::vector<std::pair<int, int>> diag;
  std::vector<double> zero;
  for (int x = 3; x < es5.n_full && diag.size() < 40; x += 13) {
    if (es5.pos[x] < 0) continue;
    diag.push_back({es5.pos[x], es5.pos[x]});
    zero.push_back(0.0);
  }
  std::vector<double> lambdas;
  for (int i = 0; i <= 8; ++i) lambdas.push_back(std::pow(10.0, 0.5 * i));
  const auto res = resolvent_bound_trend(es5, spec.dim_D, spec.gamma, lambdas,
                                         diag, zero);

  const bool pass = riesz.flat(0.1) && res.flat(0.1);
  return {pass, "riesz ratio slope " + fmt(riesz.slope) + " over " +
                    std::to_string(pairs.size()) + " pairs, diagonal resolvent "
                    "ratio slope " +
                    fmt(res.slope) + " over lambda in [1, 1e4]; no-growth rule, "
                    "fitted slope <= 0.1"};
}

// 12. Sup-norm embedding inequality: sup|L^{-s} f| bounded by the kernel
// Hoelder bound with ratio <= 1 + 1e-9 for 100 random f on SG level 5, at
// (s, p) = (0.9, 4) and (0.8, inf).
Verdict criterion_12(const IfsSpec& spec, const EigenSystem& es5) {
  const auto a = linf_embedding_check(es5, spec.dim_D, 0.9, 4.0, 100, 0);
  const auto b = linf_embedding_check(es5, spec.dim_D, 0.8, kInf, 100, 0);
  return {a.pass && b.pass,
          "max Hoelder ratios " + fmt(a.max_ratio) + " at (0.9, 4) and " +
              fmt(b.max_ratio) + " at (0.8, inf); both need <= 1 + 1e-9"};
}

// 13. The full invariant suite passes, and covers the required checks.
Verdict criterion_13() {
  const std::vector<CheckResult> results = run_invariant_suite({});
  std::set<std::string> names;
  int failed = 0;
  for (const CheckResult& r : results) {
    names.insert(r.name);
    failed += r.pass ? 0 : 1;
  }
  bool covered = true;
  for (const char* needed :
       {"spectral-mapping", "semigroup", "resolvent-identity", "markov-positivity",
        "mass-conservation", "nesting", "determinism"})
    covered = covered && names.count(needed) == 1;
  return {failed == 0 && covered,
          std::to_string(results.size() - failed) + " of " +
              std::to_string(results.size()) +
              " invariants pass; required checks present: " +
              (covered ? "yes" : "no")};
}

}  // namespace

int main() {
  const IfsSpec sg = make_sg();
  LevelStack stack(sg);
  std::printf("building SG spectral systems (levels 5 and 6, Dirichlet)...\n");
  const EigenSystem es5 = eigensolve(assemble(sg, stack.graph(5), BC::dirichlet), {});
  const EigenSystem es6 = eigensolve(assemble(sg, stack.graph(6), BC::dirichlet), {});

  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"Vicsek central-corner harmonic rule", criterion_1},
      {"energy renormalization fixed point", criterion_2},
      {"SG boundary normal derivatives", criterion_3},
      {"summation-by-parts identity", criterion_4},
      {"cell difference identity", criterion_5},
      {"heat kernel diagonal scaling", [&] { return criterion_6(sg, stack, es6); }},
      {"difference-norm decay exponents", [&] { return criterion_7(sg, stack, es6); }},
      {"harmonic square slope pair", [&] { return criterion_8(stack); }},
      {"spectral square divergence trend", [&] { return criterion_9(stack); }},
      {"failure-region calculators", criterion_10},
      {"kernel bound trends", [&] { return criterion_11(sg, stack, es5); }},
      {"sup-norm embedding inequality", [&] { return criterion_12(sg, es5); }},
      {"invariant suite", criterion_13},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%2zu] %s  %-38s %s\n", i + 1, v.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), v.detail.c_str());
  }
  std::printf("%d of %zu criteria pass\n", int(criteria.size()) - failures,
              criteria.size());
  return failures;
}
