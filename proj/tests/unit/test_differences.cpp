#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fractsob/decay.hpp"
#include "fractsob/differences.hpp"
#include "fractsob/energy.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace fractsob;

namespace {

RationalFunction rand_rational(const LevelGraph& g, unsigned seed) {
  std::mt19937 gen(seed);
  RationalFunction u;
  u.level = g.level;
  u.values.reserve(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i)
    u.values.push_back(Rational(static_cast<int>(gen() % 41) - 20, 7));
  return u;
}

}  // namespace

TEST_CASE("pointwise difference sums") {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  const LevelGraph& g1 = stack.graph(1);

  RationalFunction c;
  c.level = 1;
  c.values.assign(g1.vertex_count(), Rational(5, 3));
  for (int x = 0; x < g1.vertex_count(); ++x)
    CHECK(graph_difference_at(g1, c, x) == Rational(0));

  HarmonicExtender ext(stack);
  const RationalFunction u = ext.harmonic({Rational(1), Rational(0), Rational(0)}, 1);

  // Harmonic: zero at every vertex off the fractal boundary.
  for (int x = 0; x < g1.vertex_count(); ++x) {
    const bool is_boundary =
        std::find(g1.boundary_ids.begin(), g1.boundary_ids.end(), x) !=
        g1.boundary_ids.end();
    if (!is_boundary) CHECK(graph_difference_at(g1, u, x) == Rational(0));
  }

  // At the corner carrying value 1 the sum is 2 after r^{-m} rescaling:
  // level 1 neighbors hold 2/5 twice, (1 - 2/5) * 2 * (5/3) = 2.
  const int q0 = g1.index_of({Rational(0), Rational(0)});
  CHECK(graph_difference_at(g1, u, q0) * Rational(5, 3) == Rational(2));

  CHECK_THROWS_AS(graph_difference_at(g1, u, -1), ParameterError);
  CHECK_THROWS_AS(graph_difference_at(g1, u, g1.vertex_count()), ParameterError);
  RationalFunction wrong = u;
  wrong.level = 2;
  CHECK_THROWS_AS(graph_difference_at(g1, wrong, 0), LevelMismatchError);
}

TEST_CASE("cell difference selects one cell") {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  const LevelGraph& g1 = stack.graph(1);
  const RationalFunction u = rand_rational(g1, 1);

  // A fractal corner lies on a single cell: no prefix needed, and the cell
  // sum equals the whole-graph sum.
  const int q0 = g1.index_of({Rational(0), Rational(0)});
  CHECK(cell_difference_at(g1, u, q0) == graph_difference_at(g1, u, q0));

  // A junction lies on two cells: ambiguous without a prefix, and the two
  // cell sums add up to the whole-graph sum.
  const int j01 = g1.index_of({Rational(1, 2), Rational(0)});
  CHECK(g1.cells_at[j01].size() == 2);
  CHECK_THROWS_AS(cell_difference_at(g1, u, j01), ParameterError);
  const Rational d1 = cell_difference_at(g1, u, j01, {1});
  const Rational d2 = cell_difference_at(g1, u, j01, {2});
  CHECK(d1 + d2 == graph_difference_at(g1, u, j01));
  CHECK_THROWS_AS(cell_difference_at(g1, u, j01, {3}), ParameterError);

  // On a complete cell graph the corner difference is |V_0| u_i - S.
  const Cell& cell = g1.cells[0];
  Rational s(0);
  for (int i : cell.corners) s += u.values[i];
  for (int i : cell.corners)
    CHECK(cell_difference_at(g1, u, i, cell.word) == Rational(3) * u.values[i] - s);
}

TEST_CASE("normal derivative table") {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  HarmonicExtender ext(stack);
  const RationalFunction u = ext.harmonic({Rational(1), Rational(0), Rational(0)}, 4);

  const Coord q0 = {Rational(0), Rational(0)};
  const Coord q1 = {Rational(1), Rational(0)};
  const Coord q2 = {Rational(1, 2), Rational(7, 8)};

  const auto t0 = normal_derivative(stack, u, q0);
  CHECK(t0.levels.size() == 5);
  for (const Rational& s : t0.scaled) CHECK(s == Rational(2));
  CHECK(t0.value == Rational(2));
  CHECK(t0.converged);

  const auto t1 = normal_derivative(stack, u, q1);
  const auto t2 = normal_derivative(stack, u, q2);
  CHECK(t1.value == Rational(-1));
  CHECK(t2.value == Rational(-1));
  CHECK(t0.value + t1.value + t2.value == Rational(0));

  // Same through the floating path.
  const RealFunction ud = to_real(u);
  const auto td = normal_derivative(stack, ud, q0);
  CHECK(td.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(td.converged);

  // Fewer than three levels, or a point missing from a level, is refused.
  CHECK_THROWS_AS(normal_derivative(stack, u, q0, {}, 3), ParameterError);
  const Coord off = {Rational(1, 3), Rational(0)};
  CHECK_THROWS_AS(normal_derivative(stack, u, off), ParameterError);
  // A junction needs its cell word; with it, the scaled column is constant.
  const Coord mid = {Rational(1, 2), Rational(0)};
  CHECK_THROWS_AS(normal_derivative(stack, u, mid, {}, 0), ParameterError);
  const auto tm = normal_derivative(stack, u, mid, {1});
  CHECK(tm.levels.front() == 1);
  for (const Rational& s : tm.scaled) CHECK(s == Rational(-1));
  CHECK(tm.converged);
  // Start level cannot precede the cell word.
  CHECK_THROWS_AS(normal_derivative(stack, u, mid, {1}, 0), ParameterError);
}

TEST_CASE("multi-level difference sums") {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  HarmonicExtender ext(stack);
  const RationalFunction u =
      ext.harmonic({Rational(2), Rational(-1), Rational(0)}, 4);

  // Harmonic vanishing at every off-boundary vertex, every scale m <= 4.
  for (int m = 1; m <= 4; ++m) {
    const LevelGraph& g = stack.graph(m);
    for (int x = 0; x < g.vertex_count(); ++x) {
      const bool is_boundary =
          std::find(g.boundary_ids.begin(), g.boundary_ids.end(), x) !=
          g.boundary_ids.end();
      if (!is_boundary) CHECK(graph_difference_at(stack, u, m, x) == Rational(0));
    }
  }

  // Whole-graph sum = sum of the one-cell sums over the cells at the vertex.
  const LevelGraph& g2 = stack.graph(2);
  const RationalFunction w = rand_rational(stack.graph(4), 17);
  for (int x = 0; x < g2.vertex_count(); ++x) {
    Rational total(0);
    for (int ci : g2.cells_at[x])
      total += cell_difference_at(stack, w, 2, x, g2.cells[ci].word);
    CHECK(total == graph_difference_at(stack, w, 2, x));
  }

  CHECK_THROWS_AS(graph_difference_at(stack, w, 5, 0), LevelMismatchError);
}

TEST_CASE("cell identities") {
  for (const IfsSpec& spec : {make_sg(), make_vicsek(1, 2)}) {
    LevelStack stack(spec);
    const LevelGraph& g = stack.graph(2);
    const RationalFunction u = rand_rational(g, 9);

    const auto rep = cell_identity_check(g, u);
    CHECK(rep.difference_identity);
    CHECK(rep.energy_identity);
    CHECK(rep.raw_energy == raw_energy(g, u));
    CHECK(Rational(spec.v0_size()) * rep.raw_energy == rep.delta_square_sum);
  }
}

TEST_CASE("summation by parts is exact") {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  const LevelGraph& g3 = stack.graph(3);
  const RationalFunction u = rand_rational(g3, 21);
  const RationalFunction v = rand_rational(g3, 22);

  for (const Word& prefix : {Word{}, Word{1}, Word{1, 2}, Word{3, 3, 3}}) {
    const auto rep = gauss_green_pair(stack, u, v, prefix);
    CHECK(rep.interior_sum == rep.boundary_sum);
    CHECK(rep.corner_ids.size() == 3);
  }

  // Both sides vanish when the functions coincide.
  const auto same = gauss_green_pair(stack, u, u, {1});
  CHECK(same.interior_sum == Rational(0));
  CHECK(same.boundary_sum == Rational(0));

  // A single cell has no interior.
  const auto leaf = gauss_green_pair(stack, u, v, {2, 1, 3});
  CHECK(leaf.interior_sum == Rational(0));
  CHECK(leaf.boundary_sum == Rational(0));

  CHECK_THROWS_AS(gauss_green_pair(stack, u, v, {1, 2, 3, 1}), ParameterError);
  RationalFunction w = u;
  w.level = 2;
  CHECK_THROWS_AS(gauss_green_pair(stack, u, w), LevelMismatchError);

  // Works on the other family too.
  LevelStack vs(make_vicsek(1, 2));
  const LevelGraph& vg = vs.graph(2);
  const RationalFunction vu = rand_rational(vg, 31);
  const RationalFunction vv = rand_rational(vg, 32);
  for (const Word& prefix : {Word{}, Word{3}}) {
    const auto rep = gauss_green_pair(vs, vu, vv, prefix);
    CHECK(rep.interior_sum == rep.boundary_sum);
    CHECK(rep.corner_ids.size() == 4);
  }
}

TEST_CASE("harmonic normal derivatives balance") {
  // With v = 1 the pairing reduces to: interior difference sums vanish for a
  // harmonic u, so the corner derivatives add to zero.
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  HarmonicExtender ext(stack);
  const RationalFunction u =
      ext.harmonic({Rational(1), Rational(0), Rational(0)}, 3);
  RationalFunction one;
  one.level = 3;
  one.values.assign(stack.graph(3).vertex_count(), Rational(1));

  const auto rep = gauss_green_pair(stack, u, one);
  CHECK(rep.interior_sum == Rational(0));
  for (const Rational& dv : rep.dv) CHECK(dv == Rational(0));
  CHECK(rep.du[0] == Rational(2));
  CHECK(rep.du[1] == Rational(-1));
  CHECK(rep.du[2] == Rational(-1));
  CHECK(rep.du[0] + rep.du[1] + rep.du[2] == Rational(0));
}

TEST_CASE("decay fitting") {
  const double r = 3.0 / 5.0;
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    std::vector<int> levels;
    std::vector<double> values;
    for (int m = 1; m <= 6; ++m) {
      levels.push_back(m);
      values.push_back(3.0 * std::pow(r, a * m));
    }
    const DecayFit fit = fit_decay(levels, values, r);
    CHECK(fit.slope == doctest::Approx(a).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    CHECK(fit.points_used == 6);
    CHECK(fit.zeros_dropped == 0);
  }

  // Zeros are dropped, not logged.
  const DecayFit fz =
      fit_decay({1, 2, 3, 4}, {r, 0.0, r * r * r, r * r * r * r}, r);
  CHECK(fz.zeros_dropped == 1);
  CHECK(fz.points_used == 3);

  CHECK_THROWS_AS(fit_decay({1, 2, 3}, {0.0, 0.0, 0.5}, r), ParameterError);
  CHECK_THROWS_AS(fit_decay({1, 2, 3}, {0.1, 0.2, 0.3}, 1.5), ParameterError);

  CHECK(lq_norm({3.0, -4.0}, 1.0) == doctest::Approx(7.0));
  CHECK(lq_norm({3.0, -4.0}, 2.0) == doctest::Approx(5.0));
  CHECK(lq_norm({3.0, -4.0}, std::numeric_limits<double>::infinity()) == 4.0);
  CHECK_THROWS_AS(lq_norm({1.0}, 0.5), ParameterError);
}
