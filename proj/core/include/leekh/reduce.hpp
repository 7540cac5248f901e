#pragma once

#include <optional>
#include <utility>

#include "leekh/complex.hpp"
#include "leekh/module.hpp"

namespace leekh {

// Change-of-basis record for a reduction: iota expresses each surviving basis
// vector in the original basis, pi is the projection the other way.  Both are
// chain maps; pi . iota = id, iota . pi is chain homotopic to id, which is
// all that transporting chain maps needs.
template <class F>
struct BasisTracking {
  std::map<GenId, std::map<GenId, Monomial<F>>> iota;  // current -> original coords
  std::map<GenId, std::map<GenId, Monomial<F>>> pi;    // current row over original

  void init(const GradedFreeComplex<F>& c, const F& one) {
    for (GenId g : c.generators()) {
      iota[g].emplace(g, Monomial<F>(one, 0));
      pi[g].emplace(g, Monomial<F>(one, 0));
    }
  }

  void on_source_sub(GenId s, GenId g, const Monomial<F>& alpha) {
    detail::column_axpy(iota[s], -alpha, iota[g]);
    detail::column_axpy(pi[g], alpha, pi[s]);
  }
  void on_target_absorb(GenId h, GenId u, const Monomial<F>& beta) {
    detail::column_axpy(iota[h], beta, iota[u]);
    detail::column_axpy(pi[u], -beta, pi[h]);
  }
  void on_erase(GenId g) {
    iota.erase(g);
    pi.erase(g);
  }
};

// 2-step direct summand F[X]<source> --X^order--> F[X]<target> split off a
// complex; contributes F[X]/X^order at the target's bigrading.
struct MinimalPair {
  GenId source;
  GenId target;
  int order;
};

template <class F>
struct MinimalModel {
  GradedFreeComplex<F> complex;
  std::vector<GenId> towers;
  std::vector<MinimalPair> pairs;
  std::optional<BasisTracking<F>> tracking;

  ModuleDecomposition decomposition() const {
    ModuleDecomposition out;
    out.field = complex.field();
    for (GenId g : towers) out.towers.push_back(complex.grading(g));
    for (const auto& p : pairs) {
      Bigrading bg = complex.grading(p.target);
      out.torsion.push_back({bg.t, bg.q, p.order});
    }
    out.normalize();
    return out;
  }
};

namespace detail {

// Isolate the pivot entry d(g) = c X^n h as a direct summand: clear the rest
// of h's column of sources, then fold the rest of g's row into h.  Requires
// n minimal among all current entry powers, so every quotient divides.
template <class F>
void isolate_pair(GradedFreeComplex<F>& c, BasisTracking<F>* track, GenId g, GenId h) {
  const Monomial<F> pivot = c.out(g).at(h);

  std::vector<GenId> sources(c.in(h).begin(), c.in(h).end());
  for (GenId s : sources) {
    if (s == g) continue;
    auto it = c.out(s).find(h);
    if (it == c.out(s).end()) continue;
    Monomial<F> alpha = it->second.divided_by(pivot);
    c.source_sub(s, g, alpha);
    if (track) track->on_source_sub(s, g, alpha);
  }

  typename GradedFreeComplex<F>::Row row = c.out(g);
  for (const auto& [dst, m] : row) {
    if (dst == h) continue;
    Monomial<F> beta = m.divided_by(pivot);
    c.target_absorb(h, dst, beta);
    if (track) track->on_target_absorb(h, dst, beta);
  }

  // d.d = 0 forces the rest to have cancelled on the nose.
  if (!c.in(g).empty() || !c.out(h).empty() || c.out(g).size() != 1 ||
      c.in(h).size() != 1)
    throw InvariantViolation("pair isolation left a non-split summand");
}

}  // namespace detail

// Cancel every invertible (power 0) entry.  Homotopy equivalence; the
// result has no unit entries.  Unit pivots are processed lexicographically
// smallest (source, target) first among those currently present.
template <class F>
GradedFreeComplex<F> gaussian_reduce(GradedFreeComplex<F> c,
                                     BasisTracking<F>* track = nullptr) {
  std::vector<std::pair<GenId, GenId>> log;
  c.set_write_log(&log);
  std::set<std::pair<GenId, GenId>> units;
  for (GenId g : c.generators())
    for (const auto& [dst, m] : c.out(g))
      if (m.power == 0) units.emplace(g, dst);

  auto drain = [&] {
    for (auto [s, t] : log) {
      if (!c.alive(s) || !c.alive(t)) continue;
      auto it = c.out(s).find(t);
      if (it != c.out(s).end() && it->second.power == 0) units.emplace(s, t);
    }
    log.clear();
  };

  while (!units.empty()) {
    auto [g, h] = *units.begin();
    units.erase(units.begin());
    if (!c.alive(g) || !c.alive(h)) continue;
    auto it = c.out(g).find(h);
    if (it == c.out(g).end() || it->second.power != 0) continue;
    detail::isolate_pair(c, track, g, h);
    c.erase_generator(g);
    c.erase_generator(h);
    if (track) {
      track->on_erase(g);
      track->on_erase(h);
    }
    drain();
  }
  c.set_write_log(nullptr);
  return c;
}

// Full graded Smith reduction: after unit cancellation, repeatedly isolate
// the globally minimal-power entry.  The complex ends up a direct sum of
// 2-step pairs and differential-free towers.
template <class F>
MinimalModel<F> minimal_model(GradedFreeComplex<F> c, bool track = false) {
  MinimalModel<F> mm{GradedFreeComplex<F>(c.field()), {}, {}, std::nullopt};
  BasisTracking<F>* tr = nullptr;
  if (track) {
    mm.tracking.emplace();
    mm.tracking->init(c, make_scalar<F>(c.field(), 1));
    tr = &*mm.tracking;
  }
  c = gaussian_reduce(std::move(c), tr);

  std::set<GenId> done;
  while (true) {
    GenId pg = -1, ph = -1;
    int best = -1;
    for (GenId g : c.generators()) {
      if (done.count(g)) continue;
      for (const auto& [dst, m] : c.out(g)) {
        if (best < 0 || m.power < best ||
            (m.power == best && std::pair(g, dst) < std::pair(pg, ph))) {
          best = m.power;
          pg = g;
          ph = dst;
        }
      }
    }
    if (pg < 0) break;
    detail::isolate_pair(c, tr, pg, ph);
    mm.pairs.push_back({pg, ph, best});
    done.insert(pg);
    done.insert(ph);
  }
  for (GenId g : c.generators())
    if (!done.count(g)) {
      if (!c.out(g).empty() || !c.in(g).empty())
        throw InvariantViolation("leftover generator with differential");
      mm.towers.push_back(g);
    }
  mm.complex = std::move(c);
  return mm;
}

// Homology of a free graded complex as an F[X]-module.
template <class F>
ModuleDecomposition decompose_homology(GradedFreeComplex<F> c) {
  return minimal_model(std::move(c)).decomposition();
}

// Torsion part of the derived tensor product of two torsion modules over
// F[X], computed from the chain-level tensor of their 2-step free
// resolutions.  Pinning the summand bigradings this way is what makes the
// connect-sum identities exact rather than up-to-regrading.
inline std::vector<TorsionSummand> tor_torsion(const FieldSpec& field,
                                               const std::vector<TorsionSummand>& a,
                                               const std::vector<TorsionSummand>& b) {
  std::vector<TorsionSummand> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      GradedFreeComplex<Rational> c(FieldSpec::rationals());
      int tt = x.t + y.t, qq = x.q + y.q;
      GenId q12 = c.add_generator({tt, qq});
      GenId p1 = c.add_generator({tt - 1, qq - 2 * x.n});
      GenId p2 = c.add_generator({tt - 1, qq - 2 * y.n});
      GenId p12 = c.add_generator({tt - 2, qq - 2 * x.n - 2 * y.n});
      c.add_entry(p1, q12, Rational(1));
      c.add_entry(p2, q12, Rational(1));
      c.add_entry(p12, p2, Rational(1));
      c.add_entry(p12, p1, Rational(-1));
      for (const auto& t : decompose_homology(std::move(c)).torsion) out.push_back(t);
    }
  // The pairing is field independent: resolutions and differentials only use
  // coefficients +-1, so record the requested field.
  (void)field;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace leekh
