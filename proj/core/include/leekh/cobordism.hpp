#pragma once

#include <deque>
#include <memory>
#include <sstream>

#include "leekh/chain_map.hpp"
#include "leekh/khovanov.hpp"

namespace leekh {

// Elementary cobordism event on a fixed diagram.  Saddles are given by two
// arcs; a saddle with both feet on one arc pinches off a new round circle
// and needs a fresh arc id for it.
struct ElementaryEvent {
  enum class Kind { birth, death, saddle, dot };
  Kind kind = Kind::dot;
  ArcId a = 0;        // dot arc / death circle-of-arc / birth arc / saddle arc 1
  ArcId b = 0;        // saddle arc 2
  ArcId new_arc = 0;  // pinch saddle: id of the circle split off
  int dot_sign = +1;  // +1 when no coloring is supplied

  int euler_delta() const {
    switch (kind) {
      case Kind::birth:
      case Kind::death: return +1;
      case Kind::saddle: return -1;
      case Kind::dot: return 0;
    }
    return 0;
  }
  int dot_delta() const { return kind == Kind::dot ? 1 : 0; }
};

// One event per line: `dot arc=3 sign=+`, `saddle arcs=3,7`,
// `saddle arcs=3,3 new=9`, `death circle-of-arc=5`, `birth arc=9`.
ElementaryEvent parse_event(const std::string& line);
std::vector<ElementaryEvent> parse_event_list(const std::string& text);

// Diagram after the event; crossings never change.
LinkDiagram apply_event(const LinkDiagram& d, const ElementaryEvent& e);

namespace cobordism_detail {

// Rebind a map between structurally equal complexes built from equal
// diagrams (deterministic builds give identical generator numbering).
template <class F>
ChainMap<F> rebased(ChainMap<F> f, const GradedFreeComplex<F>* src,
                    const GradedFreeComplex<F>* dst) {
  auto check = [](const GradedFreeComplex<F>& x, const GradedFreeComplex<F>& y) {
    if (x.generator_count() != y.generator_count())
      throw ValidationError("rebase between different complexes");
    for (GenId g : x.generators())
      if (!y.alive(g) || x.grading(g) != y.grading(g))
        throw ValidationError("rebase between different complexes");
  };
  if (src != f.source) check(*f.source, *src);
  if (dst != f.target) check(*f.target, *dst);
  f.source = src;
  f.target = dst;
  return f;
}

}  // namespace cobordism_detail

// Chain map of one elementary event, together with the target diagram's cube.
template <class F>
struct EventStep {
  ElementaryEvent event;
  std::unique_ptr<LeeCube<F>> cube;  // target cube; null for dots (endomorphism)
  ChainMap<F> map;

  const LinkDiagram& target_diagram(const LeeCube<F>& src) const {
    return cube ? cube->diagram : src.diagram;
  }
  const GradedFreeComplex<F>& target_complex(const LeeCube<F>& src) const {
    return cube ? cube->complex : src.complex;
  }
};

template <class F>
EventStep<F> event_chain_map(const LeeCube<F>& src, ElementaryEvent e,
                             int max_crossings = 16) {
  EventStep<F> step;
  step.event = e;
  const LinkDiagram& d = src.diagram;
  FieldSpec field = src.complex.field();
  F one = make_scalar<F>(field, 1);
  F sign = make_scalar<F>(field, e.dot_sign);

  if (e.kind != ElementaryEvent::Kind::dot) {
    LinkDiagram target = apply_event(d, e);
    step.cube = std::make_unique<LeeCube<F>>(
        build_lee_cube<F>(target, field, max_crossings));
  }
  const LeeCube<F>& dst = step.cube ? *step.cube : src;
  step.map.source = &src.complex;
  step.map.target = &dst.complex;

  int total = 1 << d.crossing_count();
  switch (e.kind) {
    case ElementaryEvent::Kind::birth: step.map.shift = {0, +1}; break;
    case ElementaryEvent::Kind::death: step.map.shift = {0, +1}; break;
    case ElementaryEvent::Kind::saddle: step.map.shift = {0, -1}; break;
    case ElementaryEvent::Kind::dot: step.map.shift = {0, -2}; break;
  }

  for (State s = 0; s < static_cast<State>(total); ++s) {
    const CubeVertex& sv = src.states[s];
    const CubeVertex& dv = dst.states[s];
    int bp_s = sv.circles.basepoint_circle;
    int bp_d = dv.circles.basepoint_circle;

    // Non-site circles of the source matched to target circles by least arc.
    auto carry_mask = [&](unsigned mask, const std::set<int>& site) {
      unsigned out = 0;
      for (int ci = 0; ci < static_cast<int>(sv.circles.circles.size()); ++ci) {
        if (site.count(ci) || ci == bp_s) continue;
        if (!((mask >> sv.bit_of.at(ci)) & 1)) continue;
        int dc = dv.circles.circle_of.at(sv.circles.circles[ci].front());
        if (dc == bp_d) throw InvariantViolation("carried label hit the basepoint");
        out |= 1u << dv.bit_of.at(dc);
      }
      return out;
    };

    for (unsigned mask = 0; mask < sv.labelings(); ++mask) {
      GenId from = src.gen(s, mask);
      auto emit = [&](unsigned dmask, int xpow, const F& c) {
        step.map.add_term(from, dst.gen(s, dmask), Monomial<F>(c, xpow));
      };

      switch (e.kind) {
        case ElementaryEvent::Kind::birth: {
          std::set<int> site;  // new circle exists only in the target
          emit(carry_mask(mask, site), 0, one);
          break;
        }
        case ElementaryEvent::Kind::death: {
          int ci = sv.circles.circle_of.at(e.a);
          if (ci == bp_s)
            throw ValidationError("death on the basepoint component");
          std::set<int> site{ci};
          if ((mask >> sv.bit_of.at(ci)) & 1) emit(carry_mask(mask, site), 0, one);
          break;
        }
        case ElementaryEvent::Kind::dot: {
          int ci = sv.circles.circle_of.at(e.a);
          std::set<int> site;  // identity layout, same cube
          if (ci == bp_s) {
            emit(mask, 1, sign);
          } else {
            int bit = sv.bit_of.at(ci);
            if ((mask >> bit) & 1)
              emit(mask & ~(1u << bit), 2, sign);
            else
              emit(mask | (1u << bit), 0, sign);
          }
          (void)site;
          break;
        }
        case ElementaryEvent::Kind::saddle: {
          ArcId a1 = e.a, a2 = (e.a == e.b) ? e.new_arc : e.b;
          bool pinch = (e.a == e.b);
          int ga = sv.circles.circle_of.at(e.a);
          int gb = pinch ? ga : sv.circles.circle_of.at(e.b);
          std::set<int> site{ga, gb};
          unsigned base = carry_mask(mask, site);
          auto label = [&](int ci) -> int {
            return ci == bp_s ? 0 : (mask >> sv.bit_of.at(ci)) & 1;
          };
          if (ga != gb) {
            // Merge; find the merged circle through whichever arc survives
            // in the target diagram (a round component's arc disappears).
            ArcId survivor =
                (src.diagram.is_free_circle_arc(e.a) && !src.diagram.is_free_circle_arc(e.b))
                    ? e.b
                    : e.a;
            int gd = dv.circles.circle_of.at(survivor);
            int l1 = label(ga), l2 = label(gb);
            if (ga == bp_s || gb == bp_s) {
              emit(base, (ga == bp_s) ? l2 : l1, one);
            } else if (l1 && l2) {
              emit(base, 2, one);
            } else if (l1 | l2) {
              if (gd == bp_d) throw InvariantViolation("merge lost the basepoint");
              emit(base | (1u << dv.bit_of.at(gd)), 0, one);
            } else {
              emit(base, 0, one);
            }
          } else {
            // Split into the circles holding a1 and a2 in the target.
            int d1 = dv.circles.circle_of.at(a1);
            int d2 = dv.circles.circle_of.at(a2);
            if (d1 == d2)
              throw ValidationError("saddle does not separate its circle");
            if (ga == bp_s) {
              int other = (d1 == bp_d) ? d2 : d1;
              emit(base | (1u << dv.bit_of.at(other)), 0, one);
              emit(base, 1, one);
            } else if (label(ga)) {
              emit(base | (1u << dv.bit_of.at(d1)) | (1u << dv.bit_of.at(d2)), 0, one);
              emit(base, 2, one);
            } else {
              emit(base | (1u << dv.bit_of.at(d1)), 0, one);
              emit(base | (1u << dv.bit_of.at(d2)), 0, one);
            }
          }
          break;
        }
      }
    }
  }
  return step;
}

// A sequence of events from a starting cube; owns the intermediate cubes so
// the composite stays valid.
template <class F>
class Movie {
 public:
  explicit Movie(const LeeCube<F>& start, int max_crossings = 16)
      : start_(&start), cap_(max_crossings) {}

  void apply(const ElementaryEvent& e) {
    const LeeCube<F>& cur = current();
    steps_.push_back(event_chain_map<F>(cur, e, cap_));
    chi_ += e.euler_delta();
    dots_ += e.dot_delta();
  }

  const LeeCube<F>& current() const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
      if (it->cube) return *it->cube;
    return *start_;
  }

  int euler_characteristic() const { return chi_; }
  int dot_count() const { return dots_; }

  ChainMap<F> composite() const {
    if (steps_.empty()) return ChainMap<F>::identity(start_->complex);
    ChainMap<F> f = steps_.front().map;
    for (std::size_t i = 1; i < steps_.size(); ++i) {
      // Dot steps reuse the preceding cube object, so endpoints line up by
      // construction; nothing to rebase.
      f = compose(f, steps_[i].map);
    }
    return f;
  }

  // Composite as an endomorphism of the starting complex; valid when the
  // final diagram equals the starting one.
  ChainMap<F> composite_endo() const {
    return cobordism_detail::rebased(composite(), &start_->complex, &start_->complex);
  }

 private:
  const LeeCube<F>* start_;
  int cap_;
  std::deque<EventStep<F>> steps_;
  int chi_ = 0;
  int dots_ = 0;
};

// The X-action: one dot on the basepoint component.
template <class F>
ChainMap<F> x_action(const LeeCube<F>& cube, int sign = +1) {
  ElementaryEvent e;
  e.kind = ElementaryEvent::Kind::dot;
  e.a = cube.diagram.basepoint;
  e.dot_sign = sign;
  return event_chain_map<F>(cube, e).map;
}

struct NeckCutResult {
  bool holds_up_to_sign = false;
  int resolved_sign = 0;
};

// Small-unknot form: up to one overall sign, Id = (dot, death, birth)
// + (death, birth, dot) on a round component.  Checked on the nose at the
// chain level.
template <class F>
NeckCutResult verify_neck_cutting_circle(const LeeCube<F>& cube, ArcId u,
                                         const RegionColoring* coloring = nullptr) {
  if (!cube.diagram.is_free_circle_arc(u))
    throw ValidationError("neck-cutting site must be a round component");
  int sign = coloring ? coloring->dot_sign.at(u) : +1;
  ElementaryEvent dot{ElementaryEvent::Kind::dot, u, 0, 0, sign};
  ElementaryEvent death{ElementaryEvent::Kind::death, u, 0, 0, +1};
  ElementaryEvent birth{ElementaryEvent::Kind::birth, u, 0, 0, +1};

  Movie<F> m1(cube);
  m1.apply(dot);
  m1.apply(death);
  m1.apply(birth);
  Movie<F> m2(cube);
  m2.apply(death);
  m2.apply(birth);
  m2.apply(dot);

  ChainMap<F> total = m1.composite_endo() + m2.composite_endo();
  ChainMap<F> id = ChainMap<F>::identity(cube.complex);
  if (total == id) return {true, +1};
  if (total == -id) return {true, -1};
  return {false, 0};
}

// Saddle form: up to one overall sign, (saddle, reverse saddle) = dot on one
// strand + dot on the other strand.
template <class F>
NeckCutResult verify_neck_cutting_saddle(const LeeCube<F>& cube, ArcId a, ArcId b,
                                         ArcId pinch_arc = 0,
                                         const RegionColoring* coloring = nullptr) {
  ElementaryEvent fwd;
  fwd.kind = ElementaryEvent::Kind::saddle;
  fwd.a = a;
  fwd.b = b;
  fwd.new_arc = pinch_arc;
  Movie<F> m(cube);
  m.apply(fwd);
  ElementaryEvent rev;
  rev.kind = ElementaryEvent::Kind::saddle;
  if (a == b) {  // pinch, then merge the pinched circle back
    rev.a = a;
    rev.b = pinch_arc;
  } else if (!m.current().diagram.is_free_circle_arc(b) &&
             !cube.diagram.is_free_circle_arc(b) &&
             !cube.diagram.is_free_circle_arc(a)) {
    rev.a = a;
    rev.b = b;
  } else {
    // The forward saddle absorbed a round component; the reverse pinches it
    // back off the surviving arc.
    auto arcs = m.current().diagram.arcs();
    ArcId survivor =
        std::binary_search(arcs.begin(), arcs.end(), a) ? a : b;
    ArcId dropped = survivor == a ? b : a;
    rev.a = rev.b = survivor;
    rev.new_arc = dropped;
  }
  m.apply(rev);
  ChainMap<F> round_trip = m.composite_endo();

  int sa = coloring ? coloring->dot_sign.at(a) : +1;
  int sb = coloring ? coloring->dot_sign.at(b) : +1;
  ElementaryEvent dot1{ElementaryEvent::Kind::dot, a, 0, 0, sa};
  ElementaryEvent dot2{ElementaryEvent::Kind::dot, a == b ? a : b, 0, 0, sb};
  ChainMap<F> dots = event_chain_map<F>(cube, dot1).map + event_chain_map<F>(cube, dot2).map;

  if (round_trip == dots) return {true, +1};
  if (round_trip == -dots) return {true, -1};
  return {false, 0};
}

// Image on homology of a chain map, as a module decomposition.
template <class F>
ModuleDecomposition homology_image(const ChainMap<F>& f) {
  MinimalModel<F> src = minimal_model(*f.source, true);
  if (f.source == f.target) return homology_image(f, src, src);
  MinimalModel<F> dst = minimal_model(*f.target, true);
  return homology_image(f, src, dst);
}

}  // namespace leekh
