#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leekh/invariants.hpp"
#include "leekh/laurent.hpp"
#include "leekh/oracle.hpp"

namespace leekh {

// Optional cross-check block attached to a report.
struct OracleBlock {
  SpecializedHomology khovanov_t0;
  int lee_rank_t1 = 0;
  LaurentPoly jones;
  bool jones_matches_euler = false;
  bool t1_rank_is_expected = false;
  bool t0_matches_module = false;
};

// Canonical decomposition JSON:
//   {"field":"Q","towers":[{"t":..,"q":..}],"torsion":[{"t":..,"q":..,"n":..}]}
// Key order is fixed and summands are sorted, so equal modules serialize to
// identical bytes.
std::string decomposition_to_json(const ModuleDecomposition& m, int indent = -1);
ModuleDecomposition decomposition_from_json(const std::string& text);

// Knot report: the decomposition keys plus s / xo / bounds.
std::string report_to_json(const KnotInvariantReport& r, const std::string& name = "",
                           const OracleBlock* oracles = nullptr, int indent = -1);

// Link report: no s-invariant; the torsion order is flagged non-canonical.
std::string link_report_to_json(const ModuleDecomposition& m, const std::string& name = "",
                                const OracleBlock* oracles = nullptr, int indent = -1);

// Knot table: one `name<TAB>pdcode` per line, '#' comments.
struct TableEntry {
  std::string name;
  std::string pd;
};
std::vector<TableEntry> parse_knot_table(const std::string& text);

}  // namespace leekh
