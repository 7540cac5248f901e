#pragma once

#include <bit>

#include "leekh/diagram.hpp"
#include "leekh/reduce.hpp"

namespace leekh {

// ---------------------------------------------------------------------------
// The Frobenius algebra V = R[T][X]/{X^2 = T} on the basis {1, X}, with T
// rewritten as X^2 throughout:
//   m(1,1) = 1         m(1,X) = m(X,1) = X     m(X,X) = X^2 * 1
//   D(1) = 1(x)X + X(x)1                       D(X) = X(x)X + X^2 * 1(x)1
//   unit: 1            counit: 1 -> 0, X -> 1
// Labels are 0 for the basis vector 1 and 1 for X.

enum class FrobeniusKind { merge, split, unit, counit };

template <class F>
using LabelTerm = std::pair<std::vector<int>, Monomial<F>>;

template <class F>
std::vector<LabelTerm<F>> frobenius_eval(const FieldSpec& field, FrobeniusKind kind,
                                         const std::vector<int>& in) {
  F one = make_scalar<F>(field, 1);
  auto term = [&](std::vector<int> labels, int xpow) {
    return LabelTerm<F>{std::move(labels), Monomial<F>(one, xpow)};
  };
  switch (kind) {
    case FrobeniusKind::merge:
      if (in.size() != 2) throw ValidationError("merge takes two labels");
      if (in[0] && in[1]) return {term({0}, 2)};
      return {term({in[0] | in[1]}, 0)};
    case FrobeniusKind::split:
      if (in.size() != 1) throw ValidationError("split takes one label");
      if (in[0]) return {term({1, 1}, 0), term({0, 0}, 2)};
      return {term({0, 1}, 0), term({1, 0}, 0)};
    case FrobeniusKind::unit:
      if (!in.empty()) throw ValidationError("unit takes no labels");
      return {term({0}, 0)};
    case FrobeniusKind::counit:
      if (in.size() != 1) throw ValidationError("counit takes one label");
      if (in[0]) return {term({}, 0)};
      return {};
  }
  throw ValidationError("unknown Frobenius operation");
}

// ---------------------------------------------------------------------------
// Kauffman cube of a diagram over F[X].  The basepoint circle's tensor factor
// realizes the free F[X]-module structure: its label is frozen to 1 and an X
// landing there is absorbed into the coefficient.  A state with c circles
// carries 2^(c-1) generators.
//
// Gradings: i = |s| - n_minus,
//           j = (#1-labels - #X-labels) + |s| + n_plus - 2 n_minus,
// which puts the 0-crossing unknot at (0,1).

// Circles and labeling layout of one cube vertex.
struct CubeVertex {
  CircleSet circles;
  std::vector<int> labeled;   // circle indices carrying a label bit
  std::map<int, int> bit_of;  // circle index -> bit
  GenId base = -1;

  void index_circles() {
    for (int ci = 0; ci < static_cast<int>(circles.circles.size()); ++ci) {
      if (ci == circles.basepoint_circle) continue;
      bit_of[ci] = static_cast<int>(labeled.size());
      labeled.push_back(ci);
    }
  }
  unsigned labelings() const { return 1u << labeled.size(); }
};

template <class F>
struct LeeCube {
  LinkDiagram diagram;
  GradedFreeComplex<F> complex;
  std::vector<CubeVertex> states;

  GenId gen(State s, unsigned labelmask) const {
    return states[s].base + static_cast<GenId>(labelmask);
  }
};

namespace cube_detail {

// Cube edge sign: parity of the 1-bits before the flipped crossing.
inline int edge_sign(State s, int c) {
  State below = s & ((State{1} << c) - 1);
  return (std::popcount(below) % 2 == 0) ? +1 : -1;
}

// Emit the Frobenius edge map for flipping crossing cr on every labeling of
// the source vertex, skipping source generators the filter rejects.
template <class F, class Alive>
void emit_edge(GradedFreeComplex<F>& c, const LinkDiagram& d, const CubeVertex& src,
               const CubeVertex& dst, State s, int cr, Alive&& alive) {
  F sign = make_scalar<F>(c.field(), edge_sign(s, cr));

  std::set<int> site_src, site_dst;
  for (ArcId a : d.crossings[cr].arcs) {
    site_src.insert(src.circles.circle_of.at(a));
    site_dst.insert(dst.circles.circle_of.at(a));
  }
  // Non-site circles keep their arc sets; match them by least arc.
  std::map<int, int> carry;
  for (int ci = 0; ci < static_cast<int>(src.circles.circles.size()); ++ci) {
    if (site_src.count(ci)) continue;
    carry[ci] = dst.circles.circle_of.at(src.circles.circles[ci].front());
  }
  int bp_src = src.circles.basepoint_circle;
  int bp_dst = dst.circles.basepoint_circle;

  for (unsigned mask = 0; mask < src.labelings(); ++mask) {
    GenId from = src.base + static_cast<GenId>(mask);
    if (!alive(from)) continue;
    auto label_of = [&](int ci) -> int {
      if (ci == bp_src) return 0;
      return (mask >> src.bit_of.at(ci)) & 1;
    };
    unsigned base_mask = 0;
    for (const auto& [sc, dc] : carry)
      if (dc != bp_dst && label_of(sc)) base_mask |= 1u << dst.bit_of.at(dc);
    auto emit = [&](unsigned dmask, int xpow) {
      c.add_term(from, dst.base + static_cast<GenId>(dmask), Monomial<F>(sign, xpow));
    };

    if (site_src.size() == 2 && site_dst.size() == 1) {
      int g1 = *site_src.begin(), g2 = *std::next(site_src.begin());
      int gd = *site_dst.begin();
      int l1 = label_of(g1), l2 = label_of(g2);
      if (g1 == bp_src || g2 == bp_src) {
        // Merge with the basepoint factor: an X is absorbed as a coefficient.
        emit(base_mask, (g1 == bp_src) ? l2 : l1);
      } else if (l1 && l2) {
        emit(base_mask, 2);
      } else {
        emit((l1 | l2) ? base_mask | (1u << dst.bit_of.at(gd)) : base_mask, 0);
      }
    } else if (site_src.size() == 1 && site_dst.size() == 2) {
      int g = *site_src.begin();
      int d1 = *site_dst.begin(), d2 = *std::next(site_dst.begin());
      if (g == bp_src) {
        int other = (d1 == bp_dst) ? d2 : d1;
        emit(base_mask | (1u << dst.bit_of.at(other)), 0);  // 1 (x) X
        emit(base_mask, 1);                                 // X on basepoint, absorbed
      } else if (label_of(g)) {
        emit(base_mask | (1u << dst.bit_of.at(d1)) | (1u << dst.bit_of.at(d2)), 0);
        emit(base_mask, 2);
      } else {
        emit(base_mask | (1u << dst.bit_of.at(d1)), 0);
        emit(base_mask | (1u << dst.bit_of.at(d2)), 0);
      }
    } else {
      throw InvariantViolation("crossing flip changed circles by more than one");
    }
  }
}

template <class F>
CubeVertex make_vertex(GradedFreeComplex<F>& c, const LinkDiagram& d, State s) {
  CubeVertex v;
  v.circles = resolve_state(d, s);
  v.index_circles();
  int k = std::popcount(s);
  int nc = static_cast<int>(v.circles.circles.size());
  for (unsigned mask = 0; mask < v.labelings(); ++mask) {
    int j = (nc - 2 * std::popcount(mask)) + k + d.n_plus - 2 * d.n_minus;
    GenId id = c.add_generator({k - d.n_minus, j});
    if (v.base < 0) v.base = id - static_cast<GenId>(mask);
  }
  return v;
}

template <class F>
void check_cap(const LinkDiagram& d, const FieldSpec& field, int max_crossings) {
  if (d.crossing_count() > max_crossings)
    throw ResourceLimitError("diagram has " + std::to_string(d.crossing_count()) +
                             " crossings, cap is " + std::to_string(max_crossings));
  if (!field.is_rationals() && field.characteristic() == 2)
    throw ValidationError("coefficient field must have 2 != 0");
}

}  // namespace cube_detail

template <class F>
LeeCube<F> build_lee_cube(const LinkDiagram& d, const FieldSpec& field,
                          int max_crossings = 16) {
  cube_detail::check_cap<F>(d, field, max_crossings);
  LeeCube<F> cube{d, GradedFreeComplex<F>(field), {}};
  int n = d.crossing_count();
  State total = State{1} << n;
  cube.states.reserve(total);
  for (State s = 0; s < total; ++s)
    cube.states.push_back(cube_detail::make_vertex(cube.complex, d, s));
  for (State s = 0; s < total; ++s)
    for (int c = 0; c < n; ++c) {
      if ((s >> c) & 1) continue;
      cube_detail::emit_edge(cube.complex, d, cube.states[s],
                             cube.states[s | (State{1} << c)], s, c,
                             [](GenId) { return true; });
    }
  return cube;
}

// The Lee complex of a diagram (full cube, basepoint-framed F[X] basis).
template <class F>
GradedFreeComplex<F> build_lee_complex(const LinkDiagram& d, const FieldSpec& field,
                                       int max_crossings = 16) {
  return build_lee_cube<F>(d, field, max_crossings).complex;
}

enum class BuildStrategy { automatic, full, stream };

// Unit cancellation restricted to pairs whose target sits at homological
// degree <= max_target_degree; the streaming build uses this to keep the
// frontier layer in its original basis.
template <class F>
void eliminate_units_below(GradedFreeComplex<F>& c, int max_target_degree) {
  std::vector<std::pair<GenId, GenId>> log;
  c.set_write_log(&log);
  std::set<std::pair<GenId, GenId>> units;
  auto admit = [&](GenId g, GenId h) {
    if (!c.alive(g) || !c.alive(h)) return;
    if (c.grading(h).t > max_target_degree) return;
    auto it = c.out(g).find(h);
    if (it != c.out(g).end() && it->second.power == 0) units.emplace(g, h);
  };
  for (GenId g : c.generators())
    for (const auto& [dst, m] : c.out(g)) admit(g, dst);
  while (!units.empty()) {
    auto [g, h] = *units.begin();
    units.erase(units.begin());
    if (!c.alive(g) || !c.alive(h)) continue;
    auto it = c.out(g).find(h);
    if (it == c.out(g).end() || it->second.power != 0) continue;
    detail::isolate_pair<F>(c, nullptr, g, h);
    c.erase_generator(g);
    c.erase_generator(h);
    for (auto [a, b] : log) admit(a, b);
    log.clear();
  }
  c.set_write_log(nullptr);
}

// Layer-interleaved build: attach the cube one homological layer at a time,
// cancelling unit pairs as soon as both ends are complete.  Same
// decomposition as the full build, working set close to the reduced complex.
template <class F>
ModuleDecomposition stream_lee_module(const LinkDiagram& d, const FieldSpec& field,
                                      int max_crossings = 16) {
  cube_detail::check_cap<F>(d, field, max_crossings);
  int n = d.crossing_count();
  State total = State{1} << n;
  GradedFreeComplex<F> c(field);

  std::map<State, CubeVertex> prev, cur;
  for (int k = 0; k <= n; ++k) {
    cur.clear();
    for (State s = 0; s < total; ++s)
      if (std::popcount(s) == k) cur.emplace(s, cube_detail::make_vertex(c, d, s));
    for (const auto& [s, vertex] : prev)
      for (int cr = 0; cr < n; ++cr) {
        if ((s >> cr) & 1) continue;
        cube_detail::emit_edge(c, d, vertex, cur.at(s | (State{1} << cr)), s, cr,
                               [&](GenId g) { return c.alive(g); });
      }
    eliminate_units_below(c, (k - 1) - d.n_minus);
    prev = std::move(cur);
  }
  return decompose_homology(std::move(c));
}

template <class F>
ModuleDecomposition lee_module(const LinkDiagram& d, const FieldSpec& field,
                               BuildStrategy strategy = BuildStrategy::automatic,
                               int max_crossings = 16) {
  if (strategy == BuildStrategy::automatic)
    strategy = d.crossing_count() <= 14 ? BuildStrategy::full : BuildStrategy::stream;
  if (strategy == BuildStrategy::stream)
    return stream_lee_module<F>(d, field, max_crossings);
  return decompose_homology(build_lee_complex<F>(d, field, max_crossings));
}

// ---------------------------------------------------------------------------
// T = 0 specialization of a Lee complex: double every F[X] generator into
// {g, Xg} over F, keep power-0 entries on both copies and power-1 entries as
// g -> Xh, drop the rest, and take bigraded homology dimensions over F.

namespace cube_detail {

// Rank of a sparse matrix over F (columns as maps), by elimination.
template <class F>
int sparse_rank(std::vector<std::map<int, F>> cols) {
  int rank = 0;
  std::map<int, std::map<int, F>> pivots;  // pivot row -> column
  for (auto& col : cols) {
    while (!col.empty()) {
      int r = col.begin()->first;
      auto p = pivots.find(r);
      if (p == pivots.end()) break;
      F factor = col.begin()->second / p->second.begin()->second;
      for (const auto& [rr, vv] : p->second) {
        auto [it, fresh] = col.try_emplace(rr, -(factor * vv));
        if (!fresh) {
          it->second += -(factor * vv);
          if (is_zero(it->second)) col.erase(it);
        }
      }
    }
    if (!col.empty()) {
      pivots.emplace(col.begin()->first, col);
      ++rank;
    }
  }
  return rank;
}

}  // namespace cube_detail

template <class F>
std::map<Bigrading, int> t0_homology_of_complex(const GradedFreeComplex<F>& c) {
  // Doubled basis: (g, 0) at g's bigrading, (g, 1) = Xg two lower in q.
  std::map<Bigrading, std::vector<std::pair<GenId, int>>> basis;
  std::map<std::pair<GenId, int>, int> row;
  for (GenId g : c.generators())
    for (int x = 0; x < 2; ++x) {
      Bigrading bg = c.grading(g);
      bg.q -= 2 * x;
      row[{g, x}] = static_cast<int>(basis[bg].size());
      basis[bg].push_back({g, x});
    }

  // Differential blocks (t,q) -> (t+1,q).
  std::map<Bigrading, std::vector<std::map<int, F>>> blocks;
  auto add = [&](GenId g, int xg, GenId h, int xh, const F& v) {
    Bigrading from = c.grading(g);
    from.q -= 2 * xg;
    auto& cols = blocks[from];
    if (cols.size() < basis.at(from).size()) cols.resize(basis.at(from).size());
    auto& col = cols[row.at({g, xg})];
    auto [it, fresh] = col.try_emplace(row.at({h, xh}), v);
    if (!fresh) {
      it->second += v;
      if (is_zero(it->second)) col.erase(it);
    }
  };
  for (GenId g : c.generators())
    for (const auto& [h, m] : c.out(g)) {
      if (m.power == 0) {
        add(g, 0, h, 0, m.coeff);
        add(g, 1, h, 1, m.coeff);
      } else if (m.power == 1) {
        add(g, 0, h, 1, m.coeff);
      }
    }

  std::map<Bigrading, int> rank;
  for (auto& [bg, cols] : blocks) rank[bg] = cube_detail::sparse_rank(std::move(cols));

  std::map<Bigrading, int> dims;
  for (const auto& [bg, b] : basis) {
    int d = static_cast<int>(b.size());
    auto it = rank.find(bg);
    if (it != rank.end()) d -= it->second;
    auto prev = rank.find({bg.t - 1, bg.q});
    if (prev != rank.end()) d -= prev->second;
    if (d > 0) dims[bg] = d;
    if (d < 0) throw InvariantViolation("negative homology dimension");
  }
  return dims;
}

}  // namespace leekh
