#pragma once

#include "leekh/khovanov.hpp"

namespace leekh {

// Smallest n with X^n annihilating the torsion part; 0 when torsion-free.
inline int extortion_order(const ModuleDecomposition& m) {
  if (!m.field.is_rationals() && m.field.characteristic() == 2)
    throw ValidationError("coefficient field must have 2 != 0");
  return max_torsion_order(m);
}

// A knot module is one free tower Sigma^{0,s+1} F[X] plus torsion; s is read
// off the tower's quantum grading.
inline int s_invariant(const ModuleDecomposition& m) {
  if (m.towers.size() != 1)
    throw ValidationError("not a knot module: tower count is " +
                          std::to_string(m.towers.size()));
  return m.towers.front().q - 1;
}

// Lower bound for the ribbon distance d(K, unknot).
inline int ribbon_lower_bound(const ModuleDecomposition& m) {
  return extortion_order(m);
}

// Smallest page k at which the Lee spectral sequence can collapse given the
// extortion order: xo lies in {2k-3, 2k-2}.
inline int collapse_page_bound(int xo) {
  if (xo < 0) throw ValidationError("extortion order must be >= 0");
  if (xo == 0) return 1;
  return (xo + 3) / 2;  // ceil((xo + 2) / 2)
}

// Module of a connect sum from the factors' modules:
//   one tower at (0, s + s' + 1), torsion
//   Sigma^{0,s'} T + Sigma^{0,s} T' + Sigma^{0,-1} Tor(T, T').
inline ModuleDecomposition connect_sum_module(const ModuleDecomposition& a,
                                              const ModuleDecomposition& b) {
  if (a.field != b.field)
    throw ValidationError("connect_sum_module: coefficient fields differ");
  int sa = s_invariant(a), sb = s_invariant(b);
  ModuleDecomposition out;
  out.field = a.field;
  out.towers.push_back({0, sa + sb + 1});
  for (auto t : a.torsion) {
    t.q += sb;
    out.torsion.push_back(t);
  }
  for (auto t : b.torsion) {
    t.q += sa;
    out.torsion.push_back(t);
  }
  for (auto t : tor_torsion(a.field, a.torsion, b.torsion)) {
    t.q -= 1;
    out.torsion.push_back(t);
  }
  out.normalize();
  return out;
}

struct KnotInvariantReport {
  ModuleDecomposition decomposition;
  int s = 0;
  int xo = 0;
  int ribbon_distance_lower_bound = 0;
  int collapse_page_upper_bound = 1;

  std::string bound_semantics() const {
    return "d(K, unknot) >= " + std::to_string(ribbon_distance_lower_bound);
  }
};

template <class F>
KnotInvariantReport report(const LinkDiagram& d, const FieldSpec& field,
                           BuildStrategy strategy = BuildStrategy::automatic,
                           int max_crossings = 16) {
  if (!d.is_knot())
    throw ValidationError("report needs a knot diagram; got " +
                          std::to_string(d.component_count()) + " components");
  KnotInvariantReport r;
  r.decomposition = lee_module<F>(d, field, strategy, max_crossings);
  r.s = s_invariant(r.decomposition);
  r.xo = extortion_order(r.decomposition);
  r.ribbon_distance_lower_bound = ribbon_lower_bound(r.decomposition);
  r.collapse_page_upper_bound = collapse_page_bound(r.xo);
  return r;
}

}  // namespace leekh
