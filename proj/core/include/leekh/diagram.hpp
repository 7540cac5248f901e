#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leekh/errors.hpp"

namespace leekh {

using ArcId = int;

// One PD tuple: arc labels counterclockwise from the incoming under-strand
// (KnotAtlas convention), plus the orientation-derived sign.
struct Crossing {
  std::array<ArcId, 4> arcs{};
  int sign = 0;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

// Crossingless round component.  PD codes cannot express these, so they are
// carried separately; ccw fixes the orientation (and hence the dot sign) of
// a component the face structure cannot see.
struct FreeCircle {
  ArcId arc = 0;
  bool ccw = true;
};

// Where an arc meets a crossing.
struct Slot {
  int crossing = -1;
  int position = -1;  // 0..3, tuple order
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

class LinkDiagram {
 public:
  std::vector<Crossing> crossings;
  std::vector<FreeCircle> free_circles;
  ArcId basepoint = 0;

  // Derived data, valid after finalize().
  std::vector<std::vector<ArcId>> components;  // arcs in traversal order
  int n_plus = 0;
  int n_minus = 0;

  void finalize();

  int crossing_count() const { return static_cast<int>(crossings.size()); }
  int writhe() const { return n_plus - n_minus; }
  int component_count() const { return static_cast<int>(components.size()); }
  int component_of(ArcId a) const;
  bool is_knot() const { return components.size() == 1; }
  bool is_free_circle_arc(ArcId a) const;

  std::vector<ArcId> arcs() const;
  // The two slots of a crossing arc: [tail, head].
  Slot tail_slot(ArcId a) const;
  Slot head_slot(ArcId a) const;

 private:
  std::map<ArcId, Slot> tail_;
  std::map<ArcId, Slot> head_;
  std::map<ArcId, int> component_of_;
};

// Parses whitespace/comma separated tuples `X(a,b,c,d)` (brackets accepted,
// optional `PD[...]` wrapper), round components `O(a)`, and an optional
// basepoint `bp=<arc>`.  Empty input is the round unknot.
LinkDiagram parse_pd(const std::string& text);

// A choice of 0/1 smoothing per crossing, packed in crossing order.
using State = std::uint32_t;

struct CircleSet {
  std::vector<std::vector<ArcId>> circles;  // sorted by smallest arc
  int basepoint_circle = -1;
  std::map<ArcId, int> circle_of;
};

// Circles of the complete resolution at state s.  The 0-smoothing of a tuple
// (a,b,c,d) joins a-b and c-d, the 1-smoothing joins a-d and b-c.
CircleSet resolve_state(const LinkDiagram& d, State s);

// All crossings switched (over/under exchanged); projection, components and
// basepoint kept.
LinkDiagram mirror(const LinkDiagram& d);

// Diagrammatic connect sum joining the basepoint arcs by splicing two
// parallel strands; no crossings are added.  The second diagram's arcs are
// relabeled past the first's.
LinkDiagram connect_sum_pd(const LinkDiagram& a, const LinkDiagram& b);

// Faces of the planar 4-valent graph from the PD rotation system, with a
// checkerboard coloring (chosen unbounded face white) and the induced dot
// sign per arc: +1 where the black region lies to the arc's left.
struct RegionColoring {
  // (arc, traversed forward) in walk order, one list per face.
  std::vector<std::vector<std::pair<ArcId, bool>>> faces;
  std::vector<bool> black;
  int unbounded = -1;
  std::map<ArcId, int> dot_sign;
};

RegionColoring checkerboard(const LinkDiagram& d,
                            std::optional<int> unbounded_face = std::nullopt);

}  // namespace leekh
