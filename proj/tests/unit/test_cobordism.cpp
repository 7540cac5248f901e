#include "doctest.h"
#include "fixtures.hpp"
#include "leekh/cobordism.hpp"
#include "leekh/invariants.hpp"

using namespace leekh;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

ElementaryEvent dot_on(ArcId a, int sign = +1) {
  return {ElementaryEvent::Kind::dot, a, 0, 0, sign};
}

}  // namespace

TEST_SUITE_BEGIN("cobordism");

TEST_CASE("event parsing") {
  ElementaryEvent e = parse_event("dot arc=3 sign=+");
  CHECK(e.kind == ElementaryEvent::Kind::dot);
  CHECK(e.a == 3);
  CHECK(e.dot_sign == 1);
  CHECK(parse_event("dot arc=5 sign=-").dot_sign == -1);

  e = parse_event("saddle arcs=3,7");
  CHECK(e.kind == ElementaryEvent::Kind::saddle);
  CHECK(e.a == 3);
  CHECK(e.b == 7);

  e = parse_event("saddle arcs=3,3 new=9");
  CHECK(e.new_arc == 9);

  e = parse_event("death circle-of-arc=5");
  CHECK(e.kind == ElementaryEvent::Kind::death);
  CHECK(e.a == 5);

  CHECK(parse_event("birth arc=9").kind == ElementaryEvent::Kind::birth);
  CHECK_THROWS_AS(parse_event("saddle arcs=3,3"), ParseError);
  CHECK_THROWS_AS(parse_event("twist arc=1"), ParseError);

  auto list = parse_event_list("# a comment\ndot arc=3 sign=+\nsaddle arcs=3,7\n");
  CHECK(list.size() == 2);
}

TEST_CASE("event application rewrites the diagram") {
  LinkDiagram u = parse_pd(fixtures::kUnknot0);
  LinkDiagram born = apply_event(u, parse_event("birth arc=9"));
  CHECK(born.component_count() == 2);
  LinkDiagram dead = apply_event(born, parse_event("death circle-of-arc=9"));
  CHECK(dead.component_count() == 1);
  CHECK_THROWS_AS(apply_event(u, parse_event("death circle-of-arc=1")), ValidationError);

  LinkDiagram pinched = apply_event(u, parse_event("saddle arcs=1,1 new=2"));
  CHECK(pinched.component_count() == 2);
  LinkDiagram back = apply_event(pinched, parse_event("saddle arcs=1,2"));
  CHECK(back.component_count() == 1);

  LinkDiagram t = parse_pd(fixtures::kTrefoilRH);
  LinkDiagram sliced = apply_event(t, parse_event("saddle arcs=1,3"));
  CHECK(sliced.crossing_count() == 3);
  LinkDiagram again = apply_event(sliced, parse_event("saddle arcs=1,3"));
  CHECK(again.crossings == t.crossings);
  // Parallel strands cannot be joined by an oriented planar saddle.
  CHECK_THROWS_AS(apply_event(t, parse_event("saddle arcs=1,4")), ValidationError);
}

TEST_CASE("every event map is a chain map of the right bigrading") {
  LeeCube<Rational> cube =
      build_lee_cube<Rational>(parse_pd("X(1,3,4,2) X(3,5,6,4) X(5,1,2,6) O(9)"), kQ);
  std::vector<std::string> events{"dot arc=1 sign=+", "dot arc=9 sign=-",
                                  "death circle-of-arc=9", "birth arc=12",
                                  "saddle arcs=1,3", "saddle arcs=2,2 new=14",
                                  "saddle arcs=1,9"};
  std::map<std::string, Bigrading> want{
      {"dot", {0, -2}}, {"death", {0, 1}}, {"birth", {0, 1}}, {"saddle", {0, -1}}};
  for (const auto& line : events) {
    EventStep<Rational> step = event_chain_map(cube, parse_event(line));
    CHECK(commuting_sign(step.map) == 1);
    CHECK(step.map.shift == want.at(line.substr(0, line.find(' '))));
  }
}

TEST_CASE("dot on the unknot acts as X on the module") {
  LeeCube<Rational> cube = build_lee_cube<Rational>(parse_pd(fixtures::kUnknot0), kQ);
  ChainMap<Rational> x = x_action(cube);
  ChainMap<Rational> id = ChainMap<Rational>::identity(cube.complex);
  CHECK(x == id.scaled(Monomial<Rational>(Rational(1), 1)));
}

TEST_CASE("two dots equal the T action exactly") {
  for (const char* pd : {fixtures::kUnknot0, fixtures::kUnknotKinkPos,
                         fixtures::kTrefoilRH, fixtures::kTrefoilLH, fixtures::kFig8,
                         fixtures::kUnlink2, fixtures::k819}) {
    LeeCube<Rational> cube = build_lee_cube<Rational>(parse_pd(pd), kQ);
    ChainMap<Rational> x = x_action(cube);
    ChainMap<Rational> xx = compose(x, x);
    ChainMap<Rational> t_action =
        ChainMap<Rational>::identity(cube.complex).scaled(Monomial<Rational>(Rational(1), 2));
    CHECK(xx == t_action);
  }
}

TEST_CASE("dots on different arcs of a knot agree on homology up to sign") {
  LinkDiagram d = parse_pd(fixtures::kTrefoilRH);
  LeeCube<Rational> cube = build_lee_cube<Rational>(d, kQ);
  MinimalModel<Rational> mm = minimal_model(cube.complex, true);
  RegionColoring rc = checkerboard(d);

  ChainMap<Rational> ref = event_chain_map(cube, dot_on(d.basepoint)).map;
  for (ArcId a : d.arcs()) {
    ChainMap<Rational> other = event_chain_map(cube, dot_on(a)).map;
    bool plus = equal_on_homology(ref, other, mm, mm);
    ChainMap<Rational> neg = -other;
    bool minus = equal_on_homology(ref, neg, mm, mm);
    CHECK((plus || minus));
    // With checkerboard signs the maps agree on the nose.
    ChainMap<Rational> signed_ref =
        event_chain_map(cube, dot_on(d.basepoint, rc.dot_sign.at(d.basepoint))).map;
    ChainMap<Rational> signed_other = event_chain_map(cube, dot_on(a, rc.dot_sign.at(a))).map;
    CHECK(equal_on_homology(signed_ref, signed_other, mm, mm));
  }
}

TEST_CASE("birth then death is the zero map") {
  LeeCube<Rational> cube = build_lee_cube<Rational>(parse_pd(fixtures::kUnknot0), kQ);
  Movie<Rational> m(cube);
  m.apply(parse_event("birth arc=7"));
  m.apply(parse_event("death circle-of-arc=7"));
  CHECK(m.composite_endo().is_zero_map());
}

TEST_CASE("identity composes to identity") {
  LeeCube<Rational> cube = build_lee_cube<Rational>(parse_pd(fixtures::kTrefoilRH), kQ);
  ChainMap<Rational> id = ChainMap<Rational>::identity(cube.complex);
  ChainMap<Rational> f = x_action(cube);
  CHECK(compose(id, f) == f);
  CHECK(compose(f, id) == f);
  CHECK(compose(std::vector<ChainMap<Rational>>{id, f}) == f);
}

TEST_CASE("composite bigrading is chi minus two dots") {
  LeeCube<Rational> cube =
      build_lee_cube<Rational>(parse_pd("X(1,1,2,2) O(5)"), kQ);
  Movie<Rational> m(cube);
  m.apply(parse_event("dot arc=1 sign=+"));
  m.apply(parse_event("death circle-of-arc=5"));
  m.apply(parse_event("birth arc=5"));
  m.apply(parse_event("saddle arcs=1,5"));
  ChainMap<Rational> f = m.composite();
  CHECK(m.euler_characteristic() == 1);
  CHECK(m.dot_count() == 1);
  CHECK(f.shift == Bigrading{0, m.euler_characteristic() - 2 * m.dot_count()});
}

TEST_CASE("neck cutting on a round component") {
  // Two-component unlink, cutting the second circle.
  LeeCube<Rational> unlink = build_lee_cube<Rational>(parse_pd(fixtures::kUnlink2), kQ);
  NeckCutResult r = verify_neck_cutting_circle(unlink, 2);
  CHECK(r.holds_up_to_sign);
  CHECK(r.resolved_sign == 1);

  // Trefoil with a split round circle.
  LeeCube<Rational> t = build_lee_cube<Rational>(
      parse_pd("X(1,3,4,2) X(3,5,6,4) X(5,1,2,6) O(9)"), kQ);
  CHECK(verify_neck_cutting_circle(t, 9).holds_up_to_sign);

  // Signed dots only flip the overall sign.
  LinkDiagram ud = parse_pd(fixtures::kUnlink2);
  RegionColoring rc = checkerboard(ud);
  NeckCutResult rs = verify_neck_cutting_circle(unlink, 2, &rc);
  CHECK(rs.holds_up_to_sign);
  CHECK(std::abs(rs.resolved_sign) == 1);
}

TEST_CASE("neck cutting along a saddle") {
  // Pinch the round unknot: both strands lie on arc 1.
  LeeCube<Rational> u = build_lee_cube<Rational>(parse_pd(fixtures::kUnknot0), kQ);
  NeckCutResult r = verify_neck_cutting_saddle(u, 1, 1, 2);
  CHECK(r.holds_up_to_sign);

  // Merge the two unlink circles and come back.
  LeeCube<Rational> unlink = build_lee_cube<Rational>(parse_pd(fixtures::kUnlink2), kQ);
  CHECK(verify_neck_cutting_saddle(unlink, 1, 2).holds_up_to_sign);

  // Strand-to-strand saddles on the trefoil (anti-parallel pairs along the
  // outer and inner faces).
  LeeCube<Rational> t = build_lee_cube<Rational>(parse_pd(fixtures::kTrefoilRH), kQ);
  CHECK(verify_neck_cutting_saddle(t, 1, 3).holds_up_to_sign);
  CHECK(verify_neck_cutting_saddle(t, 2, 6).holds_up_to_sign);
}

TEST_CASE("homology image of elementary maps") {
  LeeCube<Rational> u = build_lee_cube<Rational>(parse_pd(fixtures::kUnknot0), kQ);
  ChainMap<Rational> id = ChainMap<Rational>::identity(u.complex);
  ModuleDecomposition full = homology_image(id);
  REQUIRE(full.towers.size() == 1);
  CHECK(full.towers[0] == Bigrading{0, 1});

  ChainMap<Rational> zero;
  zero.source = zero.target = &u.complex;
  ModuleDecomposition nothing = homology_image(zero);
  CHECK(nothing.towers.empty());
  CHECK(nothing.torsion.empty());
}

TEST_CASE("d-fold dot image equals the x power image of the module") {
  for (const char* pd : {fixtures::kTrefoilRH, fixtures::kFig8, fixtures::k819}) {
    LinkDiagram diagram = parse_pd(pd);
    LeeCube<Rational> cube = build_lee_cube<Rational>(diagram, kQ);
    ModuleDecomposition module = decompose_homology(cube.complex);
    ChainMap<Rational> x = x_action(cube);
    ChainMap<Rational> f = ChainMap<Rational>::identity(cube.complex);
    for (int d = 0; d <= 2; ++d) {
      CHECK(homology_image(f) == x_power_image(module, d));
      f = compose(f, x);
    }
  }
}

TEST_SUITE_END();
