#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fractsob/energy.hpp"

#include <vector>

using namespace fractsob;

TEST_CASE("rational linear solve") {
  // [2 1; 1 3] x = (5, 10) -> x = (1, 3)
  std::vector<std::vector<Rational>> A = {{Rational(2), Rational(1)},
                                          {Rational(1), Rational(3)}};
  std::vector<std::vector<Rational>> B = {{Rational(5)}, {Rational(10)}};
  const auto X = solve_linear_rational(A, B);
  CHECK(X[0][0] == Rational(1));
  CHECK(X[1][0] == Rational(3));

  std::vector<std::vector<Rational>> S = {{Rational(1), Rational(2)},
                                          {Rational(2), Rational(4)}};
  CHECK_THROWS_AS(solve_linear_rational(S, B), PreconditionError);
}

TEST_CASE("gasket one-step rule") {
  LevelStack stack(make_sg());
  HarmonicExtender ext(stack);
  const LevelGraph& g1 = stack.graph(1);

  // Boundary rows are unit vectors, all rows sum to 1.
  for (std::size_t i = 0; i < g1.boundary_ids.size(); ++i) {
    const auto& row = ext.rule()[g1.boundary_ids[i]];
    for (std::size_t j = 0; j < row.size(); ++j)
      CHECK(row[j] == (i == j ? Rational(1) : Rational(0)));
  }
  for (const auto& row : ext.rule()) {
    Rational s(0);
    for (const auto& w : row) s += w;
    CHECK(s == Rational(1));
  }

  // Boundary data (1, 0, 0): adjacent midpoints 2/5, opposite midpoint 1/5.
  const auto u = ext.harmonic({Rational(1), Rational(0), Rational(0)}, 1);
  const int m01 = g1.index_of(Coord{Rational(1, 2), Rational(0)});
  const int m02 = g1.index_of(Coord{Rational(1, 4), Rational(7, 16)});
  const int m12 = g1.index_of(Coord{Rational(3, 4), Rational(7, 16)});
  CHECK(u[m01] == Rational(2, 5));
  CHECK(u[m02] == Rational(2, 5));
  CHECK(u[m12] == Rational(1, 5));
}

TEST_CASE("energy renormalization fixed point") {
  for (const IfsSpec& spec : {make_sg(), make_vicsek(1, 2)}) {
    LevelStack stack(spec);
    HarmonicExtender ext(stack);
    const std::vector<Rational> a = [&] {
      std::vector<Rational> v = {Rational(1), Rational(0), Rational(0)};
      if (spec.v0_size() == 4) v = {Rational(3, 7), Rational(-2, 5), Rational(1, 3), Rational(2)};
      return v;
    }();

    const auto u0 = ext.harmonic(a, 0);
    const Rational e0 = renormalized_energy(spec, stack.graph(0), u0);
    CHECK(e0 > 0);
    for (int m = 1; m <= 4; ++m) {
      const auto um = ext.harmonic(a, m);
      CHECK(renormalized_energy(spec, stack.graph(m), um) == e0);
    }
  }
}

TEST_CASE("harmonic extension minimality and maximum principle") {
  LevelStack stack(make_sg());
  HarmonicExtender ext(stack);
  const std::vector<Rational> a = {Rational(3, 7), Rational(-2, 5), Rational(1, 3)};
  const auto u = ext.harmonic(a, 2);
  const LevelGraph& g2 = stack.graph(2);
  const Rational e = raw_energy(g2, u);

  // Any interior perturbation strictly increases the energy.
  for (int v : {1, 5, 9}) {
    bool boundary = false;
    for (int b : g2.boundary_ids) boundary |= (b == v);
    if (boundary) continue;
    RationalFunction w = u;
    w[v] += Rational(1, 100);
    CHECK(raw_energy(g2, w) > e);
  }

  Rational lo = a[0], hi = a[0];
  for (const auto& q : a) {
    if (q < lo) lo = q;
    if (hi < q) hi = q;
  }
  for (const auto& q : u.values) {
    CHECK(q >= lo);
    CHECK(q <= hi);
  }
}

TEST_CASE("gauss-seidel agrees with the exact rule") {
  LevelStack stack(make_sg());
  HarmonicExtender ext(stack);
  const auto u = ext.harmonic({Rational(3, 7), Rational(-2, 5), Rational(1, 3)}, 2);
  const LevelGraph& g2 = stack.graph(2);

  std::vector<char> fixed(g2.vertex_count(), 0);
  std::vector<double> v(g2.vertex_count(), 0.0);
  for (int b : g2.boundary_ids) {
    fixed[b] = 1;
    v[b] = to_double(u[b]);
  }
  for (int sweep = 0; sweep < 2000; ++sweep) {
    for (int i = 0; i < g2.vertex_count(); ++i) {
      if (fixed[i]) continue;
      double s = 0.0;
      for (int w : g2.adj[i]) s += v[w];
      v[i] = s / static_cast<double>(g2.adj[i].size());
    }
  }
  for (int i = 0; i < g2.vertex_count(); ++i)
    CHECK(v[i] == doctest::Approx(to_double(u[i])).epsilon(1e-9));
}

TEST_CASE("vicsek center values") {
  const IfsSpec spec = make_vicsek(1, 2);
  LevelStack stack(spec);
  HarmonicExtender ext(stack);
  const LevelGraph& g1 = stack.graph(1);
  const Rational third(1, 3);

  // Center corner aligned with boundary corner sigma is (sigma + (1,1)) / 3.
  const auto aligned = [&](int i) {
    const Coord& q = spec.boundary[i];
    return g1.index_of(Coord{(q[0] + 1) * third, (q[1] + 1) * third});
  };

  // Mean-zero boundary data: aligned center value is a_i / 3.
  const std::vector<Rational> a = {Rational(1), Rational(-1), Rational(-1), Rational(1)};
  const auto u = ext.harmonic(a, 1);
  for (int i = 0; i < 4; ++i) CHECK(u[aligned(i)] == a[i] * third);

  // General data adds the boundary sum spread evenly: b_i = a_i/3 + S/6.
  const auto e0 = ext.harmonic({Rational(1), Rational(0), Rational(0), Rational(0)}, 1);
  CHECK(e0[aligned(0)] == Rational(1, 2));
  for (int i = 1; i < 4; ++i) CHECK(e0[aligned(i)] == Rational(1, 6));
}

TEST_CASE("splines") {
  LevelStack stack(make_sg());
  HarmonicExtender ext(stack);
  const LevelGraph& g1 = stack.graph(1);
  const LevelGraph& g3 = stack.graph(3);

  // The level-1 splines sum to the constant 1 at every finer vertex.
  std::vector<Rational> total(g3.vertex_count(), Rational(0));
  for (int v = 0; v < g1.vertex_count(); ++v) {
    const auto psi = ext.spline(1, v, 3);
    for (int i = 0; i < g3.vertex_count(); ++i) total[i] += psi[i];
  }
  for (const auto& t : total) CHECK(t == Rational(1));

  // A spline vanishes outside the cells meeting its center.
  const int m01 = g1.index_of(Coord{Rational(1, 2), Rational(0)});
  const auto psi = ext.spline(1, m01, 2);
  const LevelGraph& g2 = stack.graph(2);
  const int top_inner = g2.index_of(Coord{Rational(1, 2), Rational(7, 16)});
  REQUIRE(top_inner >= 0);
  CHECK(psi[top_inner] == Rational(0));
  CHECK(psi[g2.index_of(Coord{Rational(1, 2), Rational(0)})] == Rational(1));
  CHECK(psi[g2.index_of(Coord{Rational(1, 4), Rational(0)})] > 0);
}

TEST_CASE("effective resistance") {
  LevelStack sg(make_sg());
  const int q0 = sg.graph(0).boundary_ids[0];
  const int q1 = sg.graph(0).boundary_ids[1];
  CHECK(effective_resistance(sg, 0, q0, q1) == Rational(2, 3));
  // Renormalization keeps boundary-to-boundary resistance fixed.
  for (int m = 1; m <= 2; ++m) {
    const auto& g = sg.graph(m);
    CHECK(effective_resistance(sg, m, g.boundary_ids[0], g.boundary_ids[1]) ==
          Rational(2, 3));
  }

  LevelStack vi(make_vicsek(1, 2));
  const auto& h0 = vi.graph(0);
  CHECK(effective_resistance(vi, 0, h0.boundary_ids[0], h0.boundary_ids[3]) ==
        Rational(1, 2));
  const auto& h1 = vi.graph(1);
  CHECK(effective_resistance(vi, 1, h1.boundary_ids[0], h1.boundary_ids[3]) ==
        Rational(1, 2));

  CHECK(effective_resistance(sg, 0, q0, q0) == Rational(0));
  CHECK_THROWS_AS(effective_resistance(sg, 0, q0, 99), ParameterError);

  // Symmetry and monotonicity in the level.
  CHECK(effective_resistance(sg, 1, 0, 2) == effective_resistance(sg, 1, 2, 0));
  const int j1 = sg.graph(1).index_of(Coord{Rational(1, 2), Rational(0)});
  const int j2 = sg.graph(2).index_of(Coord{Rational(1, 2), Rational(0)});
  const Rational R1 = effective_resistance(sg, 1, sg.graph(1).boundary_ids[0], j1);
  const Rational R2 = effective_resistance(sg, 2, sg.graph(2).boundary_ids[0], j2);
  CHECK(R1 <= R2);
}

TEST_CASE("resistance matrix matches the exact solve") {
  LevelStack stack(make_sg());
  const Eigen::MatrixXd R = resistance_matrix(stack, 2);
  const LevelGraph& g2 = stack.graph(2);
  CHECK(R.rows() == g2.vertex_count());
  for (int x : {0, 4}) {
    for (int y : {2, 9}) {
      const double exact = to_double(effective_resistance(stack, 2, x, y));
      CHECK(R(x, y) == doctest::Approx(exact).epsilon(1e-9));
    }
  }
  CHECK(R(3, 3) == 0.0);
}

TEST_CASE("resistance controls oscillation") {
  // |u(x) - u(y)|^2 <= E_m(u) R_m(x, y), exactly, for arbitrary data.
  LevelStack stack(make_sg());
  HarmonicExtender ext(stack);
  const auto u = ext.harmonic({Rational(3, 7), Rational(-2, 5), Rational(1, 3)}, 2);
  const LevelGraph& g2 = stack.graph(2);
  const Rational e = renormalized_energy(stack.spec(), g2, u);
  for (int x : {0, 3, 7}) {
    for (int y : {5, 11}) {
      if (x == y) continue;
      const Rational diff = u[x] - u[y];
      CHECK(diff * diff <= e * effective_resistance(stack, 2, x, y));
    }
  }
}

TEST_CASE("extension errors") {
  LevelStack stack(make_sg());
  HarmonicExtender ext(stack);
  const auto u = ext.harmonic({Rational(1), Rational(0), Rational(0)}, 2);
  CHECK_THROWS_AS(ext.extend(u, 1), ParameterError);
  CHECK_THROWS_AS(ext.harmonic({Rational(1)}, 1), ParameterError);
  CHECK_THROWS_AS(ext.spline(1, 99, 2), ParameterError);
}
