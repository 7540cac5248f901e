#include "leekh/cobordism.hpp"

#include <algorithm>
#include <sstream>

namespace leekh {

namespace {

std::pair<std::string, std::string> split_kv(const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos) throw ParseError("expected key=value in '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

ArcId to_arc(const std::string& s) {
  try {
    return std::stoi(s);
  } catch (...) {
    throw ParseError("bad arc id '" + s + "'");
  }
}

}  // namespace

ElementaryEvent parse_event(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  if (!(in >> word)) throw ParseError("empty event");
  ElementaryEvent e;
  if (word == "dot")
    e.kind = ElementaryEvent::Kind::dot;
  else if (word == "birth")
    e.kind = ElementaryEvent::Kind::birth;
  else if (word == "death")
    e.kind = ElementaryEvent::Kind::death;
  else if (word == "saddle")
    e.kind = ElementaryEvent::Kind::saddle;
  else
    throw ParseError("unknown event '" + word + "'");

  std::string tok;
  while (in >> tok) {
    auto [key, value] = split_kv(tok);
    if (key == "arc" && e.kind != ElementaryEvent::Kind::saddle) {
      e.a = to_arc(value);
    } else if (key == "circle-of-arc" && e.kind == ElementaryEvent::Kind::death) {
      e.a = to_arc(value);
    } else if (key == "arcs" && e.kind == ElementaryEvent::Kind::saddle) {
      auto comma = value.find(',');
      if (comma == std::string::npos) throw ParseError("saddle needs arcs=a,b");
      e.a = to_arc(value.substr(0, comma));
      e.b = to_arc(value.substr(comma + 1));
    } else if (key == "new" && e.kind == ElementaryEvent::Kind::saddle) {
      e.new_arc = to_arc(value);
    } else if (key == "sign" && e.kind == ElementaryEvent::Kind::dot) {
      if (value == "+" || value == "+1")
        e.dot_sign = +1;
      else if (value == "-" || value == "-1")
        e.dot_sign = -1;
      else
        throw ParseError("bad dot sign '" + value + "'");
    } else {
      throw ParseError("unexpected field '" + key + "' for event '" + word + "'");
    }
  }
  if (e.a == 0) throw ParseError("event is missing its site");
  if (e.kind == ElementaryEvent::Kind::saddle && e.b == 0)
    throw ParseError("saddle needs two arcs");
  if (e.kind == ElementaryEvent::Kind::saddle && e.a == e.b && e.new_arc == 0)
    throw ParseError("pinch saddle needs new=<arc>");
  return e;
}

std::vector<ElementaryEvent> parse_event_list(const std::string& text) {
  std::vector<ElementaryEvent> events;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    events.push_back(parse_event(line.substr(first)));
  }
  return events;
}

LinkDiagram apply_event(const LinkDiagram& d, const ElementaryEvent& e) {
  LinkDiagram out = d;
  auto arcs = d.arcs();
  auto has_arc = [&](ArcId a) { return std::binary_search(arcs.begin(), arcs.end(), a); };
  auto drop_free = [&](ArcId a) {
    std::erase_if(out.free_circles, [&](const FreeCircle& f) { return f.arc == a; });
  };

  switch (e.kind) {
    case ElementaryEvent::Kind::dot:
      if (!has_arc(e.a)) throw ValidationError("dot site not found");
      return out;  // product cobordism

    case ElementaryEvent::Kind::birth:
      if (e.a <= 0 || has_arc(e.a))
        throw ValidationError("birth needs a fresh positive arc id");
      out.free_circles.push_back({e.a, true});
      break;

    case ElementaryEvent::Kind::death:
      if (!d.is_free_circle_arc(e.a))
        throw ValidationError("death site must be a round component");
      if (e.a == d.basepoint)
        throw ValidationError("death on the basepoint component");
      drop_free(e.a);
      break;

    case ElementaryEvent::Kind::saddle: {
      if (!has_arc(e.a)) throw ValidationError("saddle site not found");
      if (e.a == e.b) {
        // Pinch a small loop off the arc.
        if (e.new_arc <= 0 || has_arc(e.new_arc))
          throw ValidationError("pinch saddle needs a fresh arc id");
        out.free_circles.push_back({e.new_arc, true});
        break;
      }
      if (!has_arc(e.b)) throw ValidationError("saddle site not found");
      bool fa = d.is_free_circle_arc(e.a), fb = d.is_free_circle_arc(e.b);
      if (!fa && !fb) {
        // A planar oriented saddle joins two strands that run anti-parallel
        // along a common face: with faces walked region-on-left, both arcs
        // must be traversed the same way there.  Round components float next
        // to their partner and skip this check.
        RegionColoring rc = checkerboard(d);
        bool compatible = false;
        for (const auto& face : rc.faces) {
          bool fwd_a = false, bwd_a = false, fwd_b = false, bwd_b = false;
          for (const auto& [arc, fwd] : face) {
            if (arc == e.a) (fwd ? fwd_a : bwd_a) = true;
            if (arc == e.b) (fwd ? fwd_b : bwd_b) = true;
          }
          if ((fwd_a && fwd_b) || (bwd_a && bwd_b)) compatible = true;
        }
        if (!compatible)
          throw ValidationError(
              "saddle arcs are not anti-parallel along a common face");
      }
      if (fa && fb) {
        if (e.b == d.basepoint)
          throw ValidationError("saddle would erase the basepoint arc");
        drop_free(e.b);
      } else if (fa) {
        if (e.a == d.basepoint)
          throw ValidationError("saddle would erase the basepoint arc");
        drop_free(e.a);
      } else if (fb) {
        if (e.b == d.basepoint)
          throw ValidationError("saddle would erase the basepoint arc");
        drop_free(e.b);
      } else {
        Slot ha = d.head_slot(e.a);
        Slot hb = d.head_slot(e.b);
        out.crossings[ha.crossing].arcs[ha.position] = e.b;
        out.crossings[hb.crossing].arcs[hb.position] = e.a;
      }
      break;
    }
  }
  out.finalize();
  return out;
}

}  // namespace leekh
