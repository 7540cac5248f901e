#pragma once

#include <string>

#include "leekh/diagram.hpp"
#include "leekh/module.hpp"

// Shared diagram fixtures.  The braid-closure PD codes were produced by hand
// from positive/negative generator tuples and double-checked against arc
// multiplicity, orientation and sign counts in test_diagram.cpp.
namespace fixtures {

inline const char* kUnknot0 = "";                       // round unknot
inline const char* kUnknotKinkPos = "X(1,1,2,2)";       // one positive kink
inline const char* kUnknotKinkNeg = "X(2,1,1,2)";       // one negative kink
inline const char* kTrefoilRH = "X(1,3,4,2) X(3,5,6,4) X(5,1,2,6)";
inline const char* kTrefoilLH = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";  // table form
inline const char* kFig8 = "X(1,4,5,2) X(3,5,6,7) X(4,1,9,6) X(7,9,2,3)";
inline const char* k819 =
    "X(1,4,5,2) X(5,6,7,3) X(4,8,9,6) X(9,10,11,7) "
    "X(8,12,13,10) X(13,14,15,11) X(12,1,17,14) X(17,2,3,15)";
inline const char* k10_124 =
    "X(1,4,5,2) X(5,6,7,3) X(4,8,9,6) X(9,10,11,7) X(8,12,13,10) "
    "X(13,14,15,11) X(12,16,17,14) X(17,18,19,15) X(16,1,21,18) X(21,2,3,19)";
inline const char* kHopfPos = "X(1,3,4,2) X(3,1,2,4)";
inline const char* kUnlink2 = "O(1) O(2)";

inline leekh::LinkDiagram diagram(const char* pd) { return leekh::parse_pd(pd); }

// Frozen Lee modules over Q (towers / torsion as (t,q[,n])), matching the
// published Khovanov tables through the minimal-complex picture.
struct Frozen {
  std::vector<leekh::Bigrading> towers;
  std::vector<leekh::TorsionSummand> torsion;
};

inline Frozen frozen_unknot() { return {{{0, 1}}, {}}; }
inline Frozen frozen_trefoil_rh() { return {{{0, 3}}, {{3, 9, 1}}}; }
inline Frozen frozen_trefoil_lh() { return {{{0, -1}}, {{-2, -5, 1}}}; }
inline Frozen frozen_fig8() { return {{{0, 1}}, {{-1, -1, 1}, {2, 5, 1}}}; }
inline Frozen frozen_819() { return {{{0, 7}}, {{3, 13, 1}, {5, 17, 2}}}; }
inline Frozen frozen_819_mirror() { return {{{0, -5}}, {{-2, -9, 1}, {-4, -11, 2}}}; }
inline Frozen frozen_10_124() {
  return {{{0, 9}}, {{3, 15, 1}, {5, 19, 2}, {7, 21, 1}}};
}
// Connect sums, from the factor modules through the connect-sum identity.
inline Frozen frozen_granny() {
  return {{{0, 5}}, {{3, 11, 1}, {3, 11, 1}, {5, 15, 1}, {6, 17, 1}}};
}
inline Frozen frozen_square() {
  return {{{0, 1}}, {{-2, -3, 1}, {0, 1, 1}, {1, 3, 1}, {3, 7, 1}}};
}

inline leekh::ModuleDecomposition as_module(const Frozen& f,
                                            leekh::FieldSpec field = leekh::FieldSpec::rationals()) {
  leekh::ModuleDecomposition m;
  m.field = field;
  m.towers = f.towers;
  m.torsion = f.torsion;
  m.normalize();
  return m;
}

}  // namespace fixtures
