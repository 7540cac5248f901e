#include "leekh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace leekh {

namespace {

struct ArcUse {
  std::vector<Slot> slots;
};

std::map<ArcId, ArcUse> collect_uses(const LinkDiagram& d) {
  std::map<ArcId, ArcUse> uses;
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) uses[d.crossings[c].arcs[p]].slots.push_back({c, p});
  return uses;
}

int slot_key(const Slot& s) { return s.crossing * 4 + s.position; }

}  // namespace

void LinkDiagram::finalize() {
  tail_.clear();
  head_.clear();
  component_of_.clear();
  components.clear();
  n_plus = n_minus = 0;

  auto uses = collect_uses(*this);
  std::set<ArcId> free_arcs;
  for (const auto& fc : free_circles) {
    if (!free_arcs.insert(fc.arc).second)
      throw ParseError("arc multiplicity: repeated round component arc " +
                       std::to_string(fc.arc));
    if (uses.count(fc.arc))
      throw ParseError("arc multiplicity: arc " + std::to_string(fc.arc) +
                       " used both at a crossing and as a round component");
  }
  for (const auto& [a, use] : uses)
    if (use.slots.size() != 2)
      throw ParseError("arc multiplicity: arc " + std::to_string(a) + " appears " +
                       std::to_string(use.slots.size()) + " times");

  // Orient: per slot, is the arc incoming (its head) here?  Under-strand
  // slots are pinned by the PD convention; over pairs and the two ends of
  // each arc carry opposite values.  Propagate, then break any leftover
  // symmetry (components that are everywhere the over-strand)
  // deterministically at their smallest arc.
  std::map<int, int> incoming;  // slot key -> 0/1, parity-propagated
  auto set_slot = [&](const Slot& s, int v, auto&& self) -> void {
    auto [it, fresh] = incoming.emplace(slot_key(s), v);
    if (!fresh) {
      if (it->second != v) throw ParseError("no consistent orientation");
      return;
    }
    const Crossing& cr = crossings[s.crossing];
    if (s.position == 1 || s.position == 3) {
      Slot other{s.crossing, s.position == 1 ? 3 : 1};
      self(other, 1 - v, self);
    }
    // The other end of this arc has the opposite role.
    ArcId a = cr.arcs[s.position];
    for (const Slot& o : uses.at(a).slots)
      if (!(o == s)) self(o, 1 - v, self);
    // An arc with both ends at the same slot cannot happen; both ends at the
    // same crossing is fine and handled by the loop above.
  };

  for (int c = 0; c < crossing_count(); ++c) {
    set_slot({c, 0}, 1, set_slot);
    set_slot({c, 2}, 0, set_slot);
  }
  // Free components: orient so the smallest arc leaves its first slot.
  for (const auto& [a, use] : uses) {
    Slot first = *std::min_element(use.slots.begin(), use.slots.end());
    if (!incoming.count(slot_key(first))) set_slot(first, 0, set_slot);
  }

  for (const auto& [a, use] : uses) {
    int heads = 0;
    for (const Slot& s : use.slots) {
      if (incoming.at(slot_key(s))) {
        head_[a] = s;
        ++heads;
      } else {
        tail_[a] = s;
      }
    }
    if (heads != 1) throw ParseError("no consistent orientation");
  }

  for (auto& cr : crossings) {
    // Over-strand enters at position 3 for a positive crossing, 1 for a
    // negative one.
    bool in_at_3 = false, in_at_1 = false;
    for (int p : {1, 3}) {
      ArcId a = cr.arcs[p];
      Slot s{static_cast<int>(&cr - crossings.data()), p};
      bool is_head = (head_.at(a) == s);
      if (p == 3 && is_head) in_at_3 = true;
      if (p == 1 && is_head) in_at_1 = true;
    }
    if (in_at_3 == in_at_1) throw ParseError("no consistent orientation");
    cr.sign = in_at_3 ? +1 : -1;
    (cr.sign > 0 ? n_plus : n_minus)++;
  }

  // Components: follow head slots to successor arcs.
  std::set<ArcId> seen;
  for (const auto& [a0, use] : uses) {
    if (seen.count(a0)) continue;
    std::vector<ArcId> comp;
    ArcId a = a0;
    do {
      comp.push_back(a);
      seen.insert(a);
      Slot h = head_.at(a);
      const Crossing& cr = crossings[h.crossing];
      switch (h.position) {
        case 0: a = cr.arcs[2]; break;
        case 1: a = cr.arcs[3]; break;
        case 3: a = cr.arcs[1]; break;
        default: throw InvariantViolation("arc head at an outgoing slot");
      }
    } while (a != a0);
    components.push_back(std::move(comp));
  }
  for (const auto& fc : free_circles) components.push_back({fc.arc});
  std::sort(components.begin(), components.end(),
            [](const auto& x, const auto& y) {
              return *std::min_element(x.begin(), x.end()) <
                     *std::min_element(y.begin(), y.end());
            });
  for (int i = 0; i < static_cast<int>(components.size()); ++i)
    for (ArcId a : components[i]) component_of_[a] = i;

  if (components.empty()) throw ParseError("empty diagram");
  if (!component_of_.count(basepoint)) {
    if (basepoint != 0)
      throw ValidationError("basepoint arc " + std::to_string(basepoint) +
                            " is not an arc of the diagram");
    basepoint = arcs().front();
  }
}

int LinkDiagram::component_of(ArcId a) const {
  auto it = component_of_.find(a);
  if (it == component_of_.end())
    throw ValidationError("unknown arc " + std::to_string(a));
  return it->second;
}

bool LinkDiagram::is_free_circle_arc(ArcId a) const {
  for (const auto& fc : free_circles)
    if (fc.arc == a) return true;
  return false;
}

std::vector<ArcId> LinkDiagram::arcs() const {
  std::set<ArcId> all;
  for (const auto& cr : crossings)
    for (ArcId a : cr.arcs) all.insert(a);
  for (const auto& fc : free_circles) all.insert(fc.arc);
  return {all.begin(), all.end()};
}

Slot LinkDiagram::tail_slot(ArcId a) const {
  auto it = tail_.find(a);
  if (it == tail_.end()) throw ValidationError("arc has no crossing slots");
  return it->second;
}

Slot LinkDiagram::head_slot(ArcId a) const {
  auto it = head_.find(a);
  if (it == head_.end()) throw ValidationError("arc has no crossing slots");
  return it->second;
}

LinkDiagram parse_pd(const std::string& text) {
  LinkDiagram d;
  std::string s = text;
  // Strip an optional PD[ ... ] wrapper.
  auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s.compare(first, 3, "PD[") == 0) {
    auto last = s.find_last_of(']');
    if (last == std::string::npos) throw ParseError("unterminated PD[");
    s = s.substr(first + 3, last - first - 3);
  }

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto skip = [&] {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',' || s[i] == ';')) ++i;
  };
  auto read_int = [&]() -> ArcId {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("malformed tuple near '" + s.substr(start, 8) + "'");
    return std::stoi(s.substr(start, i - start));
  };
  auto read_tuple = [&](int arity) {
    skip_ws();
    if (i >= s.size() || (s[i] != '(' && s[i] != '[')) throw ParseError("malformed tuple");
    char close = s[i] == '(' ? ')' : ']';
    ++i;
    std::vector<ArcId> vals;
    for (int k = 0; k < arity; ++k) {
      skip_ws();
      vals.push_back(read_int());
      skip_ws();
      if (k + 1 < arity) {
        if (i >= s.size() || s[i] != ',') throw ParseError("malformed tuple");
        ++i;
      }
    }
    skip_ws();
    if (i >= s.size() || s[i] != close) throw ParseError("malformed tuple");
    ++i;
    return vals;
  };

  bool bp_given = false;
  while (true) {
    skip();
    if (i >= s.size()) break;
    char c = s[i];
    if (c == 'X' || c == 'x') {
      ++i;
      auto v = read_tuple(4);
      Crossing cr;
      std::copy(v.begin(), v.end(), cr.arcs.begin());
      d.crossings.push_back(cr);
    } else if (c == 'O' || c == 'o' || c == 'U' || c == 'u') {
      ++i;
      auto v = read_tuple(1);
      d.free_circles.push_back({v[0], true});
    } else if (s.compare(i, 3, "bp=") == 0) {
      i += 3;
      d.basepoint = read_int();
      bp_given = true;
    } else {
      throw ParseError(std::string("malformed tuple near '") + s.substr(i, 8) + "'");
    }
  }

  if (d.crossings.empty() && d.free_circles.empty())
    d.free_circles.push_back({bp_given ? d.basepoint : 1, true});
  d.finalize();
  return d;
}

CircleSet resolve_state(const LinkDiagram& d, State s) {
  if (d.crossing_count() > 0 && (s >> d.crossing_count()) != 0)
    throw ValidationError("state has bits beyond the crossing count");

  int n = d.crossing_count();
  int nodes = 4 * n + static_cast<int>(d.free_circles.size());
  std::vector<int> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  auto uses = collect_uses(d);
  for (const auto& [a, use] : uses)
    unite(slot_key(use.slots[0]), slot_key(use.slots[1]));
  for (int c = 0; c < n; ++c) {
    if ((s >> c) & 1) {
      unite(4 * c + 0, 4 * c + 3);
      unite(4 * c + 1, 4 * c + 2);
    } else {
      unite(4 * c + 0, 4 * c + 1);
      unite(4 * c + 2, 4 * c + 3);
    }
  }

  std::map<int, std::set<ArcId>> groups;
  for (const auto& [a, use] : uses) groups[find(slot_key(use.slots[0]))].insert(a);
  for (int f = 0; f < static_cast<int>(d.free_circles.size()); ++f)
    groups[find(4 * n + f)].insert(d.free_circles[f].arc);

  CircleSet out;
  for (auto& [root, arcs] : groups) out.circles.emplace_back(arcs.begin(), arcs.end());
  std::sort(out.circles.begin(), out.circles.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (int ci = 0; ci < static_cast<int>(out.circles.size()); ++ci)
    for (ArcId a : out.circles[ci]) out.circle_of[a] = ci;
  out.basepoint_circle = out.circle_of.at(d.basepoint);
  return out;
}

LinkDiagram mirror(const LinkDiagram& d) {
  LinkDiagram m;
  m.free_circles = d.free_circles;
  m.basepoint = d.basepoint;
  for (const auto& cr : d.crossings) {
    Crossing mc;
    const auto& a = cr.arcs;
    // The old over-strand becomes the under-strand; rotate the tuple so it
    // starts at the old over-incoming arc.
    if (cr.sign > 0)
      mc.arcs = {a[3], a[0], a[1], a[2]};
    else
      mc.arcs = {a[1], a[2], a[3], a[0]};
    m.crossings.push_back(mc);
  }
  m.finalize();
  return m;
}

LinkDiagram connect_sum_pd(const LinkDiagram& a, const LinkDiagram& b) {
  ArcId offset = 0;
  for (ArcId x : a.arcs()) offset = std::max(offset, x);

  LinkDiagram sum;
  sum.crossings = a.crossings;
  sum.free_circles = a.free_circles;
  for (const auto& cr : b.crossings) {
    Crossing c2 = cr;
    for (auto& x : c2.arcs) x += offset;
    sum.crossings.push_back(c2);
  }
  for (const auto& fc : b.free_circles)
    sum.free_circles.push_back({fc.arc + offset, fc.ccw});

  ArcId alpha = a.basepoint;
  ArcId beta = b.basepoint + offset;
  bool alpha_free = a.is_free_circle_arc(a.basepoint);
  bool beta_free = b.is_free_circle_arc(b.basepoint);

  auto drop_free = [&](ArcId arc) {
    std::erase_if(sum.free_circles, [&](const FreeCircle& f) { return f.arc == arc; });
  };

  if (alpha_free && beta_free) {
    // Unknot # unknot: fuse the two round circles.
    drop_free(beta);
    sum.basepoint = alpha;
  } else if (alpha_free) {
    drop_free(alpha);
    sum.basepoint = beta;
  } else if (beta_free) {
    drop_free(beta);
    sum.basepoint = alpha;
  } else {
    // Swap the head occurrences: alpha now runs into beta's old head, beta
    // into alpha's, splicing the two strands with no new crossings.
    Slot ha = a.head_slot(a.basepoint);
    Slot hb = b.head_slot(b.basepoint);
    sum.crossings[ha.crossing].arcs[ha.position] = beta;
    sum.crossings[a.crossing_count() + hb.crossing].arcs[hb.position] = alpha;
    sum.basepoint = alpha;
  }
  sum.finalize();
  return sum;
}

RegionColoring checkerboard(const LinkDiagram& d, std::optional<int> unbounded_face) {
  RegionColoring rc;
  auto uses = collect_uses(d);

  // Face orbits of the rotation system: leave each crossing one slot
  // counterclockwise from where the walk arrived, then cross that arc.
  std::map<int, int> face_of_dart;  // slot key (arrival dart) -> face
  std::vector<std::vector<Slot>> orbit_darts;
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) {
      if (face_of_dart.count(slot_key({c, p}))) continue;
      int face = static_cast<int>(rc.faces.size());
      rc.faces.emplace_back();
      orbit_darts.emplace_back();
      Slot cur{c, p};
      while (!face_of_dart.count(slot_key(cur))) {
        face_of_dart[slot_key(cur)] = face;
        orbit_darts[face].push_back(cur);
        Slot exit{cur.crossing, (cur.position + 1) % 4};
        ArcId arc = d.crossings[exit.crossing].arcs[exit.position];
        bool forward = (d.tail_slot(arc) == exit);
        rc.faces[face].emplace_back(arc, forward);
        const auto& slots = uses.at(arc).slots;
        cur = (slots[0] == exit) ? slots[1] : slots[0];
      }
    }

  // Every arc is traversed once per side, in opposite directions.
  std::map<ArcId, std::pair<int, int>> sides;  // arc -> (forward face, backward face)
  for (int f = 0; f < static_cast<int>(rc.faces.size()); ++f)
    for (const auto& [arc, fwd] : rc.faces[f]) {
      auto& s = sides.try_emplace(arc, -1, -1).first->second;
      (fwd ? s.first : s.second) = f;
    }
  for (const auto& [arc, s] : sides)
    if (s.first < 0 || s.second < 0)
      throw InvariantViolation("rotation system does not traverse an arc on both sides");

  // Planarity per crossing-connected component: V - E + F = 2.
  std::map<int, int> comp_of_face;
  {
    // Crossing components via arc adjacency.
    std::vector<int> cparent(d.crossing_count());
    std::iota(cparent.begin(), cparent.end(), 0);
    auto cfind = [&](int x) {
      while (cparent[x] != x) x = cparent[x] = cparent[cparent[x]];
      return x;
    };
    for (const auto& [a, use] : uses)
      cparent[cfind(use.slots[0].crossing)] = cfind(use.slots[1].crossing);
    std::map<int, std::array<int, 3>> vef;  // root -> V, E, F
    for (int c = 0; c < d.crossing_count(); ++c) vef[cfind(c)][0]++;
    for (const auto& [a, use] : uses) vef[cfind(use.slots[0].crossing)][1]++;
    for (int f = 0; f < static_cast<int>(rc.faces.size()); ++f) {
      int root = cfind(orbit_darts[f].front().crossing);
      comp_of_face[f] = root;
      vef[root][2]++;
    }
    for (const auto& [root, v] : vef)
      if (v[0] - v[1] + v[2] != 2)
        throw ValidationError("non-planar rotation system (V - E + F != 2)");
  }

  // Choose the white outer face in each crossing component: the supplied
  // index for the component that contains it, the face left of the smallest
  // arc's tail otherwise.  Split components all open onto the unbounded face.
  rc.black.assign(rc.faces.size(), false);
  std::map<int, int> outer_of_comp;
  if (unbounded_face) {
    if (*unbounded_face < 0 || *unbounded_face >= static_cast<int>(rc.faces.size()))
      throw ValidationError("outer face index out of range");
    outer_of_comp[comp_of_face[*unbounded_face]] = *unbounded_face;
    rc.unbounded = *unbounded_face;
  }
  std::map<int, ArcId> smallest_arc;  // crossing component -> least arc
  for (const auto& [a, use] : uses) {
    int comp = comp_of_face.at(face_of_dart.at(slot_key(use.slots[0])));
    auto [it, fresh] = smallest_arc.emplace(comp, a);
    if (!fresh) it->second = std::min(it->second, a);
  }
  for (const auto& [comp, a] : smallest_arc) {
    if (outer_of_comp.count(comp)) continue;
    int outer = sides.at(a).first;  // face left of its tail
    outer_of_comp[comp] = outer;
    if (rc.unbounded < 0) rc.unbounded = outer;
  }

  // 2-color faces per component: adjacent across an arc means opposite color.
  std::vector<int> color(rc.faces.size(), -1);
  for (const auto& [comp, outer] : outer_of_comp) {
    std::vector<int> stack{outer};
    color[outer] = 0;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (const auto& [arc, fwd] : rc.faces[f]) {
        int g = fwd ? sides.at(arc).second : sides.at(arc).first;
        if (color[g] < 0) {
          color[g] = 1 - color[f];
          stack.push_back(g);
        } else if (color[g] == color[f]) {
          throw InvariantViolation("checkerboard coloring failed");
        }
      }
    }
  }
  for (std::size_t f = 0; f < rc.faces.size(); ++f) rc.black[f] = (color[f] == 1);

  for (const auto& [arc, s] : sides)
    rc.dot_sign[arc] = rc.black[s.first] ? +1 : -1;
  // Round components: inside black; a ccw circle has its black side on the
  // left.
  for (const auto& fc : d.free_circles) rc.dot_sign[fc.arc] = fc.ccw ? +1 : -1;

  if (rc.unbounded < 0 && !rc.faces.empty()) rc.unbounded = 0;
  return rc;
}

}  // namespace leekh
