#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "leekh/invariants.hpp"

using namespace leekh;

namespace {
const FieldSpec kQ = FieldSpec::rationals();
using fixtures::as_module;
}  // namespace

TEST_SUITE_BEGIN("invariants");

TEST_CASE("extortion order") {
  CHECK(extortion_order(as_module(fixtures::frozen_unknot())) == 0);
  CHECK(extortion_order(as_module(fixtures::frozen_trefoil_rh())) == 1);
  CHECK(extortion_order(as_module(fixtures::frozen_819())) == 2);
  ModuleDecomposition m;
  m.torsion = {{0, 0, 1}, {0, 2, 1}, {1, 4, 3}};
  CHECK(extortion_order(m) == 3);
}

TEST_CASE("s invariant") {
  CHECK(s_invariant(as_module(fixtures::frozen_unknot())) == 0);
  CHECK(s_invariant(as_module(fixtures::frozen_trefoil_rh())) == 2);
  CHECK(s_invariant(as_module(fixtures::frozen_trefoil_lh())) == -2);
  CHECK(s_invariant(as_module(fixtures::frozen_819())) == 6);
  ModuleDecomposition link;
  link.towers = {{0, 1}, {0, 3}};
  CHECK_THROWS_AS(s_invariant(link), ValidationError);
}

TEST_CASE("ribbon lower bound and collapse page") {
  CHECK(ribbon_lower_bound(as_module(fixtures::frozen_unknot())) == 0);
  CHECK(ribbon_lower_bound(as_module(fixtures::frozen_819())) == 2);
  ModuleDecomposition m;
  m.torsion = {{0, 0, 1}, {0, 2, 1}, {1, 4, 3}};
  CHECK(ribbon_lower_bound(m) == 3);

  CHECK(collapse_page_bound(0) == 1);
  CHECK(collapse_page_bound(1) == 2);
  CHECK(collapse_page_bound(2) == 2);
  CHECK(collapse_page_bound(3) == 3);
  CHECK(collapse_page_bound(4) == 3);
}

TEST_CASE("connect sum with the unknot is the identity") {
  for (auto frozen : {fixtures::frozen_trefoil_rh(), fixtures::frozen_fig8(),
                      fixtures::frozen_819()}) {
    ModuleDecomposition m = as_module(frozen);
    CHECK(connect_sum_module(m, as_module(fixtures::frozen_unknot())) == m);
    CHECK(connect_sum_module(as_module(fixtures::frozen_unknot()), m) == m);
  }
}

TEST_CASE("connect sum module formula on the trefoils") {
  ModuleDecomposition rh = as_module(fixtures::frozen_trefoil_rh());
  ModuleDecomposition lh = as_module(fixtures::frozen_trefoil_lh());
  CHECK(connect_sum_module(rh, rh) == as_module(fixtures::frozen_granny()));
  CHECK(connect_sum_module(rh, lh) == as_module(fixtures::frozen_square()));
  CHECK(s_invariant(connect_sum_module(rh, lh)) == 0);
}

TEST_CASE("connect sum module is commutative and associative") {
  ModuleDecomposition a = as_module(fixtures::frozen_trefoil_rh());
  ModuleDecomposition b = as_module(fixtures::frozen_fig8());
  ModuleDecomposition c = as_module(fixtures::frozen_819_mirror());
  CHECK(connect_sum_module(a, b) == connect_sum_module(b, a));
  CHECK(connect_sum_module(connect_sum_module(a, b), c) ==
        connect_sum_module(a, connect_sum_module(b, c)));
}

TEST_CASE("extortion order of a connect sum is the max of the orders") {
  std::vector<ModuleDecomposition> fixture_modules{
      as_module(fixtures::frozen_unknot()), as_module(fixtures::frozen_trefoil_rh()),
      as_module(fixtures::frozen_trefoil_lh()), as_module(fixtures::frozen_fig8()),
      as_module(fixtures::frozen_819()), as_module(fixtures::frozen_819_mirror())};
  for (const auto& a : fixture_modules)
    for (const auto& b : fixture_modules)
      CHECK(extortion_order(connect_sum_module(a, b)) ==
            std::max(extortion_order(a), extortion_order(b)));

  std::mt19937_64 rng(333);
  std::uniform_int_distribution<int> count(0, 3), order(1, 5), grading(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    ModuleDecomposition a, b;
    a.towers = {{0, 2 * grading(rng) + 1}};
    b.towers = {{0, 2 * grading(rng) + 1}};
    for (int i = count(rng); i > 0; --i)
      a.torsion.push_back({grading(rng), 2 * grading(rng) + 1, order(rng)});
    for (int i = count(rng); i > 0; --i)
      b.torsion.push_back({grading(rng), 2 * grading(rng) + 1, order(rng)});
    a.normalize();
    b.normalize();
    CHECK(extortion_order(connect_sum_module(a, b)) ==
          std::max(extortion_order(a), extortion_order(b)));
  }
}

TEST_CASE("x power image sharpness at the extortion order") {
  for (auto frozen : {fixtures::frozen_trefoil_rh(), fixtures::frozen_819()}) {
    ModuleDecomposition m = as_module(frozen);
    int xo = extortion_order(m);
    REQUIRE(xo >= 1);
    CHECK(x_power_image(m, xo).torsion.empty());
    CHECK_FALSE(x_power_image(m, xo - 1).torsion.empty());
  }
}

TEST_CASE("full report") {
  KnotInvariantReport u = report<Rational>(parse_pd(fixtures::kUnknot0), kQ);
  CHECK(u.s == 0);
  CHECK(u.xo == 0);
  CHECK(u.ribbon_distance_lower_bound == 0);
  CHECK(u.collapse_page_upper_bound == 1);
  CHECK(u.bound_semantics() == "d(K, unknot) >= 0");

  KnotInvariantReport t = report<Rational>(parse_pd(fixtures::kTrefoilRH), kQ);
  CHECK(std::abs(t.s) == 2);
  CHECK(t.xo == 1);
  CHECK(t.ribbon_distance_lower_bound == 1);
  CHECK(t.collapse_page_upper_bound == 2);

  KnotInvariantReport k = report<Rational>(parse_pd(fixtures::k819), kQ);
  CHECK(k.xo == 2);
  CHECK(k.ribbon_distance_lower_bound == 2);
  CHECK(k.collapse_page_upper_bound == 2);

  CHECK_THROWS_AS(report<Rational>(parse_pd(fixtures::kHopfPos), kQ), ValidationError);
}

TEST_SUITE_END();
