#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fractsob/region.hpp"
#include "fractsob/errors.hpp"

#include <cmath>
#include <limits>

using namespace fractsob;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

RegionParams at(double s, double p) {
  RegionParams rp;
  rp.s = s;
  rp.p = p;
  return rp;
}
}  // namespace

TEST_CASE("gasket failure region") {
  IfsSpec sg = make_sg();

  // p = inf: the threshold is s* = 2 log(5/3) / log5
  auto hi = region_check(sg, at(0.9, kInf), RegionForm::sg);
  CHECK(hi.in_region);
  CHECK(hi.s_star ==
        doctest::Approx(2.0 * std::log(5.0 / 3.0) / std::log(5.0)).epsilon(1e-12));
  auto lo = region_check(sg, at(0.5, kInf), RegionForm::sg);
  CHECK_FALSE(lo.in_region);
  CHECK(lo.s_star == doctest::Approx(hi.s_star).epsilon(1e-15));

  // the gasket form is the general inequality scaled by log(5/3)
  auto gen = region_check(sg, at(0.9, kInf), RegionForm::general);
  CHECK(gen.in_region == hi.in_region);
  CHECK(gen.s_star == doctest::Approx(hi.s_star).epsilon(1e-12));
  CHECK(hi.margin ==
        doctest::Approx(gen.margin * std::log(5.0 / 3.0)).epsilon(1e-12));

  // embedding holds strictly below the failure threshold too
  auto emb = region_check(sg, at(0.4, kInf));
  CHECK(emb.embedding_ok);
  CHECK_FALSE(emb.in_region);
  auto noemb = region_check(sg, at(0.3, 2.0));
  CHECK_FALSE(noemb.embedding_ok);  // 0.3 (D+1) < D/2 on the gasket

  // alpha = 2s names the same point
  RegionParams ap;
  ap.alpha = 1.8;
  ap.p = kInf;
  auto via_alpha = region_check(sg, ap);
  CHECK(via_alpha.s == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(via_alpha.in_region == gen.in_region);
  CHECK(via_alpha.margin == doctest::Approx(gen.margin).epsilon(1e-12));
}

TEST_CASE("region parameter validation") {
  IfsSpec sg = make_sg();
  IfsSpec vk = make_vicsek(1, 2);

  RegionParams both = at(0.9, 4.0);
  both.alpha = 1.8;
  CHECK_THROWS_AS(region_check(sg, both), ParameterError);
  CHECK_THROWS_AS(region_check(sg, RegionParams{}), ParameterError);
  CHECK_THROWS_AS(region_check(sg, at(1.2, 4.0)), ParameterError);
  CHECK_THROWS_AS(region_check(sg, at(0.9, 1.0)), ParameterError);
  RegionParams big;
  big.alpha = 2.5;
  CHECK_THROWS_AS(region_check(sg, big), ParameterError);
  CHECK_THROWS_AS(region_check(vk, at(0.9, 4.0), RegionForm::sg), ParameterError);
  CHECK_THROWS_AS(region_check(sg, at(0.9, 4.0), RegionForm::vicsek), ParameterError);
}

TEST_CASE("region grows with s") {
  IfsSpec sg = make_sg();
  bool inside = false;
  for (int i = 1; i < 20; ++i) {
    auto v = region_check(sg, at(0.05 * i, 4.0));
    if (inside) CHECK(v.in_region);  // once in, stays in
    inside = v.in_region;
    CHECK(v.in_region == (0.05 * i > v.s_star));
  }
  CHECK(inside);  // s = 0.95 is inside for p = 4
}

TEST_CASE("vicsek form matches the general inequality") {
  IfsSpec vk = make_vicsek(1, 2);
  auto gen = region_check(vk, at(0.9, 4.0));
  auto fam = region_check(vk, at(0.9, 4.0), RegionForm::vicsek);
  CHECK(fam.in_region == gen.in_region);
  CHECK(fam.s_star == doctest::Approx(gen.s_star).epsilon(1e-12));
  CHECK(fam.margin == doctest::Approx(gen.margin * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("nonempty interval threshold in p") {
  const double thr = sg_nonempty_p_threshold();
  CHECK(thr ==
        doctest::Approx(std::log(3.0) / (2.0 * std::log(3.0) - std::log(5.0)))
            .epsilon(1e-15));
  CHECK(thr == doctest::Approx(1.8691).epsilon(1e-4));

  IfsSpec sg = make_sg();
  // above the threshold some s < 1 is in the region; below, none is
  CHECK(region_check(sg, at(0.5, thr + 0.01)).s_star < 1.0);
  CHECK(region_check(sg, at(0.5, thr - 0.01)).s_star > 1.0);
}

TEST_CASE("branching exponent search") {
  // (s - 1/p) log(2^N + 1) > (2 - s) log 3, smallest N >= 2
  struct Row {
    double s, p;
    int n;
  };
  const Row table[] = {
      {0.9, kInf, 2}, {0.7, kInf, 3}, {0.55, kInf, 5},
      {0.9, 4.0, 3},  {0.7, 4.0, 5},  {0.55, 4.0, 8},
      {0.9, 2.0, 5},  {0.7, 2.0, 11}, {0.55, 2.0, 46},
  };
  for (const Row& row : table) {
    auto res = vicsek_find_n(row.s, row.p, 1);
    CHECK(res.found);
    CHECK(res.N == row.n);
    CHECK(res.margin > 0.0);
    // minimality: one step down fails the inequality
    const double coef = row.s - (std::isinf(row.p) ? 0.0 : 1.0 / row.p);
    const double rhs = (2.0 - row.s) * std::log(3.0);
    CHECK(coef * std::log(std::pow(2.0, res.N - 1) + 1.0) <= rhs);
  }

  // the hardest grid point in exact integers: 2^46 + 1 > 3^29 > 2^45 + 1
  const long long p46 = 1LL << 46, p45 = 1LL << 45;
  long long t29 = 1;
  for (int i = 0; i < 29; ++i) t29 *= 3;
  CHECK(p46 + 1 > t29);
  CHECK(p45 + 1 < t29);

  auto wider = vicsek_find_n(0.9, kInf, 2);
  CHECK(wider.found);
  CHECK(wider.N == 2);

  // sp <= 1 admits no N at all; a barely positive margin runs out of range
  CHECK_FALSE(vicsek_find_n(0.5, 2.0).found);
  CHECK_FALSE(vicsek_find_n(0.501, 2.0).found);
  auto res = vicsek_find_n(0.501, 2.0);
  CHECK(res.n_max == 64);

  CHECK_THROWS_AS(vicsek_find_n(1.0, 2.0), ParameterError);
  CHECK_THROWS_AS(vicsek_find_n(0.9, 1.0), ParameterError);
  CHECK_THROWS_AS(vicsek_find_n(0.9, 2.0, 0), ParameterError);
  CHECK_THROWS_AS(vicsek_find_n(0.9, 2.0, 1, 1), ParameterError);
}
