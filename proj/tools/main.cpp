// Command-line front end: exact Lee-deformation Khovanov modules over F[X],
// extortion orders, ribbon-distance lower bounds, connect sums, and
// chain-level cobordism checks.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "leekh/cobordism.hpp"
#include "leekh/invariants.hpp"
#include "leekh/json_io.hpp"

namespace {

using namespace leekh;

constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitInvariant = 3;

struct Options {
  std::string pd;
  bool pd_given = false;
  std::string pd_b;
  bool pd_b_given = false;
  std::string table_file;
  std::string name;
  std::string name_b;
  bool mirror_b = false;
  std::string field = "q";
  std::string format = "json";
  std::string strategy = "auto";
  bool with_oracles = false;
  int max_crossings = 16;
  int outer_face = -1;
  int power = 0;
  int jobs = 1;
  bool algebraic = false;
  bool diagrammatic = false;
  bool check = false;
  int circle_of_arc = 0;
  std::string saddle;
  int new_arc = 0;
  bool signed_dots = false;
  std::string events_file;
};

BuildStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return BuildStrategy::automatic;
  if (s == "full") return BuildStrategy::full;
  if (s == "stream") return BuildStrategy::stream;
  throw ParseError("bad --strategy '" + s + "' (auto|full|stream)");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LinkDiagram load_diagram(const Options& opt, bool second) {
  const bool pd_given = second ? opt.pd_b_given : opt.pd_given;
  const std::string& pd = second ? opt.pd_b : opt.pd;
  const std::string& name = second ? opt.name_b : opt.name;
  if (pd_given && !name.empty())
    throw ParseError("give exactly one PD source (inline or table)");
  if (pd_given) return parse_pd(pd);
  if (!name.empty()) {
    if (opt.table_file.empty()) throw ParseError("--name needs --table FILE");
    for (const auto& e : parse_knot_table(slurp(opt.table_file)))
      if (e.name == name) return parse_pd(e.pd);
    throw ParseError("knot '" + name + "' not found in " + opt.table_file);
  }
  throw ParseError("no PD source given (use --pd or --table/--name)");
}

// The heavy entry points, templated on the coefficient field.
template <class F>
struct Engine {
  FieldSpec field;
  BuildStrategy strategy;
  int cap;

  ModuleDecomposition module(const LinkDiagram& d) const {
    return lee_module<F>(d, field, strategy, cap);
  }

  void validate_complex(const LinkDiagram& d) const {
    if (d.crossing_count() > 14) return;  // full cube not materialized
    if (!build_lee_complex<F>(d, field, cap).differential_squares_to_zero())
      throw InvariantViolation("differential does not square to zero");
  }

  OracleBlock oracles(const LinkDiagram& d, const ModuleDecomposition& m) const {
    OracleBlock o;
    o.khovanov_t0 = khovanov_t0<F>(d, field);
    o.lee_rank_t1 = lee_rank_t1<F>(d, field);
    o.jones = jones_euler(d);
    o.jones_matches_euler = (o.jones == euler_from_dims(o.khovanov_t0.dims));
    o.t1_rank_is_expected = (o.lee_rank_t1 == (1 << d.component_count()));
    o.t0_matches_module = (o.khovanov_t0.dims == t0_dimension_table(m));
    return o;
  }
};

KnotInvariantReport make_report(const ModuleDecomposition& m) {
  KnotInvariantReport r;
  r.decomposition = m;
  r.s = s_invariant(m);
  r.xo = extortion_order(m);
  r.ribbon_distance_lower_bound = ribbon_lower_bound(m);
  r.collapse_page_upper_bound = collapse_page_bound(r.xo);
  return r;
}

void print_text_report(std::ostream& out, const std::string& name,
                       const KnotInvariantReport& r) {
  if (!name.empty()) out << name << "\n";
  out << "  field: " << r.decomposition.field.to_string() << "\n";
  out << "  towers:";
  for (const auto& t : r.decomposition.towers) out << " (" << t.t << "," << t.q << ")";
  out << "\n  torsion:";
  for (const auto& t : r.decomposition.torsion)
    out << " (" << t.t << "," << t.q << ")/X^" << t.n;
  if (r.decomposition.torsion.empty()) out << " none";
  out << "\n  s = " << r.s << "\n  xo = " << r.xo << "\n  "
      << r.bound_semantics() << "\n  spectral sequence collapse page <= "
      << r.collapse_page_upper_bound << "\n";
}

template <class F>
int cmd_compute(const Options& opt, std::ostream& out) {
  Engine<F> eng{FieldSpec::parse(opt.field), parse_strategy(opt.strategy),
                opt.max_crossings};
  LinkDiagram d = load_diagram(opt, false);
  eng.validate_complex(d);
  ModuleDecomposition m = eng.module(d);
  OracleBlock o;
  const OracleBlock* op = nullptr;
  if (opt.with_oracles) {
    o = eng.oracles(d, m);
    op = &o;
  }
  if (d.is_knot()) {
    KnotInvariantReport r = make_report(m);
    if (opt.format == "text" && !op)
      print_text_report(out, opt.name, r);
    else
      out << report_to_json(r, opt.name, op) << "\n";
  } else {
    out << link_report_to_json(m, opt.name, op) << "\n";
  }
  return 0;
}

template <class F>
int cmd_connect_sum(const Options& opt, std::ostream& out) {
  Engine<F> eng{FieldSpec::parse(opt.field), parse_strategy(opt.strategy),
                opt.max_crossings};
  LinkDiagram a = load_diagram(opt, false);
  LinkDiagram b = load_diagram(opt, true);
  if (opt.mirror_b) b = mirror(b);

  bool algebraic = opt.algebraic;
  bool diagrammatic = opt.diagrammatic;
  bool check = opt.check;
  if (!algebraic && !diagrammatic && !check)
    (a.crossing_count() + b.crossing_count() <= 10 ? check : algebraic) = true;
  if (check) algebraic = diagrammatic = true;

  std::optional<ModuleDecomposition> alg, dia;
  if (algebraic) alg = connect_sum_module(eng.module(a), eng.module(b));
  if (diagrammatic) dia = eng.module(connect_sum_pd(a, b));

  out << report_to_json(make_report(alg ? *alg : *dia)) << "\n";
  if (check) {
    bool agree = (*alg == *dia);
    out << "diagrammatic and algebraic decompositions agree: "
        << (agree ? "true" : "false") << "\n";
    if (!agree) return kExitInvariant;
  }
  return 0;
}

template <class F>
int cmd_x_image(const Options& opt, std::ostream& out) {
  Engine<F> eng{FieldSpec::parse(opt.field), parse_strategy(opt.strategy),
                opt.max_crossings};
  ModuleDecomposition m = x_power_image(eng.module(load_diagram(opt, false)), opt.power);
  out << decomposition_to_json(m) << "\n";
  return 0;
}

template <class F>
int cmd_verify_neck_cutting(const Options& opt, std::ostream& out) {
  FieldSpec field = FieldSpec::parse(opt.field);
  LinkDiagram d = load_diagram(opt, false);
  LeeCube<F> cube = build_lee_cube<F>(d, field, opt.max_crossings);
  RegionColoring rc;
  const RegionColoring* signs = nullptr;
  if (opt.signed_dots) {
    rc = checkerboard(d, opt.outer_face >= 0 ? std::optional<int>(opt.outer_face)
                                             : std::nullopt);
    signs = &rc;
  }
  NeckCutResult r;
  if (opt.circle_of_arc > 0) {
    r = verify_neck_cutting_circle<F>(cube, opt.circle_of_arc, signs);
  } else if (!opt.saddle.empty()) {
    auto comma = opt.saddle.find(',');
    if (comma == std::string::npos) throw ParseError("--saddle needs a,b");
    ArcId sa = std::stoi(opt.saddle.substr(0, comma));
    ArcId sb = std::stoi(opt.saddle.substr(comma + 1));
    r = verify_neck_cutting_saddle<F>(cube, sa, sb, opt.new_arc, signs);
  } else {
    throw ParseError("verify neck-cutting needs --circle-of-arc or --saddle");
  }
  if (!r.holds_up_to_sign) {
    out << "neck-cutting identity FAILED\n";
    return kExitInvariant;
  }
  out << "neck-cutting identity holds (resolved sign "
      << (r.resolved_sign > 0 ? "+1" : "-1") << ")\n";
  return 0;
}

template <class F>
int cmd_verify_events(const Options& opt, std::ostream& out) {
  FieldSpec field = FieldSpec::parse(opt.field);
  LinkDiagram d = load_diagram(opt, false);
  LeeCube<F> cube = build_lee_cube<F>(d, field, opt.max_crossings);
  auto events = parse_event_list(slurp(opt.events_file));
  Movie<F> movie(cube, opt.max_crossings);
  for (const auto& e : events) movie.apply(e);
  ChainMap<F> f = movie.composite();
  auto sign = commuting_sign(f);
  Bigrading want{0, movie.euler_characteristic() - 2 * movie.dot_count()};
  bool graded_ok = (f.shift == want);
  out << "events: " << events.size() << "\n"
      << "chain map: " << (sign.has_value() ? "yes" : "NO") << "\n"
      << "bigrading (0," << f.shift.q << ") matches chi - 2*dots = (0," << want.q
      << "): " << (graded_ok ? "yes" : "NO") << "\n";
  return (sign.has_value() && graded_ok) ? 0 : kExitInvariant;
}

template <class F>
int cmd_table(const Options& opt, std::ostream& out) {
  Engine<F> eng{FieldSpec::parse(opt.field), parse_strategy(opt.strategy),
                opt.max_crossings};
  auto entries = parse_knot_table(slurp(opt.table_file));
  auto one = [&](const TableEntry& e) -> std::string {
    LinkDiagram d = parse_pd(e.pd);
    ModuleDecomposition m = eng.module(d);
    OracleBlock o;
    const OracleBlock* op = nullptr;
    if (opt.with_oracles) {
      o = eng.oracles(d, m);
      op = &o;
    }
    if (d.is_knot()) return report_to_json(make_report(m), e.name, op);
    return link_report_to_json(m, e.name, op);
  };

  // Parallel per knot, output buffered and emitted in input order.
  int failures = 0;
  std::vector<std::future<std::string>> results;
  results.reserve(entries.size());
  std::launch mode = opt.jobs > 1 ? std::launch::async : std::launch::deferred;
  for (const auto& e : entries)
    results.push_back(std::async(mode, [one, e] { return one(e); }));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    try {
      out << results[i].get() << "\n";
    } catch (const std::exception& ex) {
      out << "{\"name\":\"" << entries[i].name << "\",\"error\":\"" << ex.what()
          << "\"}\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : kExitUsage;
}

int run(const std::string& cmd, const Options& opt, std::ostream& out) {
  auto go = [&](auto field_tag) {
    using F = decltype(field_tag);
    if (cmd == "compute") return cmd_compute<F>(opt, out);
    if (cmd == "connect-sum") return cmd_connect_sum<F>(opt, out);
    if (cmd == "x-image") return cmd_x_image<F>(opt, out);
    if (cmd == "verify-neck-cutting") return cmd_verify_neck_cutting<F>(opt, out);
    if (cmd == "verify-events") return cmd_verify_events<F>(opt, out);
    if (cmd == "table") return cmd_table<F>(opt, out);
    throw ParseError("unknown command " + cmd);
  };
  if (FieldSpec::parse(opt.field).is_rationals()) return go(Rational{});
  return go(Fp{});
}

void add_common(CLI::App* app, Options& opt) {
  app->add_option_function<std::string>(
         "--pd",
         [&opt](const std::string& v) {
           opt.pd = v;
           opt.pd_given = true;
         },
         "inline PD code: X(a,b,c,d) tuples, O(a) circles, optional bp=<arc>");
  app->add_option("--table", opt.table_file, "knot table file (name<TAB>pdcode)");
  app->add_option("--name", opt.name, "knot name inside --table");
  app->add_option("--field", opt.field, "coefficients: q or fp:P (odd prime)");
  app->add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app->add_option("--max-crossings", opt.max_crossings, "crossing cap (default 16)");
  app->add_option("--strategy", opt.strategy, "cube build: auto, full, stream")
      ->check(CLI::IsMember({"auto", "full", "stream"}));
  app->add_option("--outer-face", opt.outer_face, "unbounded face index override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Lee-deformation Khovanov module calculator"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* compute = app.add_subcommand("compute", "invariant report for one diagram");
  add_common(compute, opt);
  compute->add_flag("--with-oracles", opt.with_oracles, "attach brute-force cross-checks");

  CLI::App* csum = app.add_subcommand("connect-sum", "connect sum of two diagrams");
  add_common(csum, opt);
  csum->add_option_function<std::string>(
          "--pd-b",
          [&opt](const std::string& v) {
            opt.pd_b = v;
            opt.pd_b_given = true;
          },
          "second diagram PD");
  csum->add_option("--name-b", opt.name_b, "second knot name inside --table");
  csum->add_flag("--mirror-b", opt.mirror_b, "mirror the second diagram first");
  csum->add_flag("--algebraic", opt.algebraic, "module-level connect sum formula");
  csum->add_flag("--diagrammatic", opt.diagrammatic, "splice diagrams and recompute");
  csum->add_flag("--check", opt.check, "run both routes and compare");

  CLI::App* ximg = app.add_subcommand("x-image", "decomposition of X^d * module");
  add_common(ximg, opt);
  ximg->add_option("--power", opt.power, "d >= 0")->required();

  CLI::App* verify = app.add_subcommand("verify", "chain-level verifications");
  verify->require_subcommand(1);
  CLI::App* neck = verify->add_subcommand("neck-cutting", "neck-cutting identities");
  add_common(neck, opt);
  neck->add_option("--circle-of-arc", opt.circle_of_arc,
                   "round-component form at this arc");
  neck->add_option("--saddle", opt.saddle, "saddle form, two arcs a,b");
  neck->add_option("--new", opt.new_arc, "fresh arc id for a pinch (a,a)");
  neck->add_flag("--signed", opt.signed_dots, "use checkerboard dot signs");
  CLI::App* evs = verify->add_subcommand("events", "check an event list file");
  add_common(evs, opt);
  evs->add_option("--events", opt.events_file, "event list, one per line")->required();

  CLI::App* table = app.add_subcommand("table", "batch a knot table to JSON lines");
  add_common(table, opt);
  table->add_option("--file", opt.table_file, "knot table file")->required();
  table->add_flag("--with-oracles", opt.with_oracles, "attach brute-force cross-checks");
  table->add_option("--jobs", opt.jobs, "parallel workers (output stays ordered)");

  CLI11_PARSE(app, argc, argv);

  std::string cmd;
  if (compute->parsed()) cmd = "compute";
  if (csum->parsed()) cmd = "connect-sum";
  if (ximg->parsed()) cmd = "x-image";
  if (verify->parsed()) cmd = neck->parsed() ? "verify-neck-cutting" : "verify-events";
  if (table->parsed()) cmd = "table";

  try {
    return run(cmd, opt, std::cout);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
