#include "leekh/json_io.hpp"

#include <sstream>

#include "json.hpp"

namespace leekh {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json decomposition_node(const ModuleDecomposition& m) {
  ModuleDecomposition s = m;
  s.normalize();
  ordered_json j;
  j["field"] = s.field.to_string();
  j["towers"] = ordered_json::array();
  for (const auto& t : s.towers) j["towers"].push_back({{"t", t.t}, {"q", t.q}});
  j["torsion"] = ordered_json::array();
  for (const auto& t : s.torsion)
    j["torsion"].push_back({{"t", t.t}, {"q", t.q}, {"n", t.n}});
  return j;
}

ordered_json oracle_node(const OracleBlock& o) {
  ordered_json j;
  j["khovanov_t0"] = ordered_json::array();
  for (const auto& [bg, d] : o.khovanov_t0.dims)
    j["khovanov_t0"].push_back({{"t", bg.t}, {"q", bg.q}, {"dim", d}});
  j["khovanov_t0_total"] = o.khovanov_t0.total();
  j["lee_rank_t1"] = o.lee_rank_t1;
  j["jones_euler"] = o.jones.str();
  j["jones_matches_euler"] = o.jones_matches_euler;
  j["t1_rank_is_expected"] = o.t1_rank_is_expected;
  j["t0_matches_module"] = o.t0_matches_module;
  return j;
}

std::string dump(const ordered_json& j, int indent) {
  return indent < 0 ? j.dump() : j.dump(indent);
}

}  // namespace

std::string decomposition_to_json(const ModuleDecomposition& m, int indent) {
  return dump(decomposition_node(m), indent);
}

ModuleDecomposition decomposition_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad decomposition JSON: ") + e.what());
  }
  ModuleDecomposition m;
  try {
    m.field = FieldSpec::parse(j.at("field").get<std::string>());
    for (const auto& t : j.at("towers"))
      m.towers.push_back({t.at("t").get<int>(), t.at("q").get<int>()});
    for (const auto& t : j.at("torsion")) {
      int n = t.at("n").get<int>();
      if (n < 1) throw ParseError("torsion order must be >= 1");
      m.torsion.push_back({t.at("t").get<int>(), t.at("q").get<int>(), n});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad decomposition JSON: ") + e.what());
  }
  m.normalize();
  return m;
}

std::string report_to_json(const KnotInvariantReport& r, const std::string& name,
                           const OracleBlock* oracles, int indent) {
  ordered_json j;
  if (!name.empty()) j["name"] = name;
  ordered_json d = decomposition_node(r.decomposition);
  for (auto& [k, v] : d.items()) j[k] = v;
  j["s"] = r.s;
  j["xo"] = r.xo;
  j["ribbon_distance_lower_bound"] = r.ribbon_distance_lower_bound;
  j["ribbon_distance_semantics"] = r.bound_semantics();
  j["collapse_page_upper_bound"] = r.collapse_page_upper_bound;
  if (oracles) j["oracles"] = oracle_node(*oracles);
  return dump(j, indent);
}

std::string link_report_to_json(const ModuleDecomposition& m, const std::string& name,
                                const OracleBlock* oracles, int indent) {
  ordered_json j;
  if (!name.empty()) j["name"] = name;
  ordered_json d = decomposition_node(m);
  for (auto& [k, v] : d.items()) j[k] = v;
  j["max_torsion_order"] = max_torsion_order(m);
  j["max_torsion_order_note"] = "non-canonical for links";
  if (oracles) j["oracles"] = oracle_node(*oracles);
  return dump(j, indent);
}

std::vector<TableEntry> parse_knot_table(const std::string& text) {
  std::vector<TableEntry> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("knot table line " + std::to_string(lineno) +
                       ": expected name<TAB>pdcode");
    TableEntry e;
    e.name = line.substr(first, tab - first);
    e.pd = line.substr(tab + 1);
    while (!e.name.empty() && (e.name.back() == ' ' || e.name.back() == '\t'))
      e.name.pop_back();
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace leekh
