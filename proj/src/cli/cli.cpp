#include "edgeprog/cli/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "edgeprog/codegen/render.hpp"
#include "edgeprog/dsl/parser.hpp"
#include "edgeprog/flowgraph/lower.hpp"
#include "edgeprog/partitioner/random_instance.hpp"
#include "edgeprog/partitioner/report.hpp"

namespace edgeprog::cli {

namespace {

using flowgraph::FlowGraph;
using partitioner::Objective;
using profiles::ProfileSet;

// Thrown for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string program;
  std::string bench;
  std::string profiles;
  std::string objective;
  std::size_t path_cap = partitioner::kDefaultPathCap;
  std::string solver = "bnb";
  std::string emit;
  std::string out_dir;
  std::string format = "text";
  double budget_ms = 128;
  bool dump_ast = false;
  bool stats = false;
  bool json = false;
  double sweep_step = 0.1;
  std::uint64_t seed = 1;
  int count = 200;
  int max_movable = 10;
  int max_devices = 4;
  bool csv = false;
  std::vector<double> heartbeats;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Objective objective(const Options& o) {
  if (o.objective == "latency") return Objective::Latency;
  if (o.objective == "energy") return Objective::Energy;
  throw UsageError("--objective must be latency or energy");
}

partitioner::Format format(const Options& o) {
  auto f = partitioner::format_from_name(o.format);
  if (!f) throw UsageError("--format must be text, csv or json-like");
  return *f;
}

std::optional<ProfileSet> profiles_of(const Options& o, bool required) {
  if (o.profiles.empty()) {
    if (required) throw UsageError("--profiles is required");
    return std::nullopt;
  }
  return profiles::load_profiles(o.profiles);
}

dsl::ProgramAst parse_checked(const Options& o, std::ostream& err) {
  auto ast = dsl::parse_program(read_file(o.program));
  auto diags = dsl::validate_ast(ast, dsl::AlgorithmCatalog::builtin());
  for (const auto& d : diags) {
    if (d.severity == dsl::Severity::Warning) err << dsl::render(d, o.program) << "\n";
  }
  if (dsl::has_errors(diags)) throw dsl::ProgramError(diags);
  return ast;
}

FlowGraph graph_of(const Options& o, const ProfileSet* p, std::ostream& err) {
  if (o.program.empty() == o.bench.empty()) throw UsageError("give exactly one of --program or --bench");
  if (!o.bench.empty()) {
    auto b = flowgraph::benchmark_from_name(o.bench);
    if (!b) throw UsageError("unknown benchmark '" + o.bench + "' (Sense, MNSVG, EEG, SHOW, Voice)");
    return flowgraph::benchmark_graph(*b);
  }
  auto ast = parse_checked(o, err);
  return flowgraph::lower(ast, p ? p->sizes() : profiles::TypeSizeTable{});
}

int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.program.empty()) throw UsageError("--program is required");
  auto ast = parse_checked(o, err);
  if (o.dump_ast) {
    out << dsl::ast_to_json(ast);
  } else {
    out << "program " << ast.name << ": " << ast.devices.size() << " devices, " << ast.vsensors.size()
        << " vsensors, " << ast.rules.size() << " rules\n";
  }
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = profiles_of(o, false);
  auto g = graph_of(o, p ? &*p : nullptr, err);
  if (p) partitioner::require_complete(g, *p);
  if (o.stats) {
    out << "graph " << g.name() << "\n";
    out << "devices " << g.devices().size() << "\n";
    out << "blocks " << g.blocks().size() << "\n";
    out << "edges " << g.edges().size() << "\n";
    out << "operational " << g.operational_count() << "\n";
    out << "movable " << g.movable_count() << "\n";
    out << "paths " << flowgraph::count_paths(g) << "\n";
    out << "search_space " << partitioner::search_space(g) << "\n";
  } else if (o.json) {
    out << flowgraph::to_json(g);
  } else {
    out << flowgraph::to_dot(g);
  }
  return kOk;
}

void verify(const FlowGraph& g, const ProfileSet& p, const partitioner::Partition& part) {
  const std::int64_t v = part.mode == Objective::Latency ? partitioner::evaluate_latency(g, part.assignment, p).us
                                                         : partitioner::evaluate_energy(g, part.assignment, p).pj;
  if (v != part.value) throw Error(ErrorKind::InternalInvariant, "reported value differs from evaluation");
}

int cmd_partition(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = *profiles_of(o, true);
  const auto mode = objective(o);
  const auto fmt = format(o);
  auto g = graph_of(o, &p, err);
  partitioner::require_complete(g, p);
  partitioner::Partition part;
  if (o.solver == "bnb") {
    part = partitioner::solve(g, p, mode, o.path_cap);
  } else if (o.solver == "brute-force") {
    part = partitioner::brute_force(g, p, mode);
  } else {
    throw UsageError("--solver must be bnb or brute-force");
  }
  verify(g, p, part);
  out << partitioner::format_partition(g, p, part, fmt);
  if (!o.emit.empty()) {
    codegen::Style style;
    if (o.emit == "contiki") {
      style = codegen::Style::ContikiLike;
    } else if (o.emit == "manifest") {
      style = codegen::Style::Manifest;
    } else {
      throw UsageError("--emit must be contiki or manifest");
    }
    if (o.out_dir.empty()) throw UsageError("--emit needs --out");
    if (o.budget_ms <= 0) throw UsageError("--budget-ms must be positive");
    codegen::FragmentOptions fo;
    fo.budget = Duration{static_cast<std::int64_t>(o.budget_ms * 1000 + 0.5)};
    auto schedule = codegen::fragment(g, part.assignment, p, fo);
    auto artifacts = codegen::render(schedule, g, style);
    codegen::write_artifacts(artifacts, o.out_dir);
    for (const auto& a : artifacts) err << "wrote " << a.path << "\n";
  }
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = *profiles_of(o, true);
  const auto mode = objective(o);
  const auto fmt = format(o);
  const auto step = static_cast<std::int64_t>(o.sweep_step * 1000 + 0.5);
  if (step <= 0 || step > 1000 || 1000 % step != 0) {
    throw UsageError("--wishbone-sweep must divide 1 into equal steps of at least 0.001");
  }
  auto g = graph_of(o, &p, err);
  partitioner::require_complete(g, p);
  auto report = partitioner::compare(g, p, mode, step);
  auto sweep = partitioner::wishbone_sweep(g, p, mode, step);
  out << partitioner::format_comparison(g, report, fmt, &sweep);
  return kOk;
}

struct FuzzLine {
  std::string text;
  bool skipped = false;
  int mismatches = 0;
};

std::string fuzz_check(const FlowGraph& g, const ProfileSet& p, Objective mode, int& mismatches) {
  auto a = partitioner::solve(g, p, mode);
  auto b = partitioner::brute_force(g, p, mode, 1);
  const bool same = a.value == b.value && a.assignment == b.assignment && a.cross_edges == b.cross_edges;
  if (!same) ++mismatches;
  return std::string(to_string(mode)) + "=" + partitioner::format_value(mode, a.value) +
         (same ? " ok" : " MISMATCH brute=" + partitioner::format_value(mode, b.value));
}

int cmd_fuzz(const Options& o, std::ostream& out, std::ostream&) {
  if (o.count < 0) throw UsageError("--count must be non-negative");
  if (o.max_movable < 1) throw UsageError("--max-movable must be at least 1");
  if (o.max_devices < 2) throw UsageError("--max-devices must be at least 2");
  partitioner::RandomSpec spec;
  spec.max_movable = o.max_movable;
  spec.max_devices = o.max_devices;
  spec.min_devices = std::min(spec.min_devices, spec.max_devices);
  std::vector<FuzzLine> lines(static_cast<std::size_t>(o.count));
  std::vector<std::string> failures(lines.size());

  // Instances are independent; each writes only its own slot.
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < o.count; ++i) {
    auto& line = lines[static_cast<std::size_t>(i)];
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    try {
      auto inst = partitioner::random_instance(seed, spec);
      std::ostringstream os;
      os << "instance " << i << " seed " << seed << " blocks " << inst.graph.blocks().size() << " movable "
         << inst.graph.movable_count() << " space " << partitioner::search_space(inst.graph);
      if (partitioner::search_space(inst.graph) > partitioner::kBruteForceLimit) {
        os << " skipped: search space exceeds the brute-force guard";
        line.skipped = true;
      } else {
        for (auto mode : {Objective::Latency, Objective::Energy}) {
          os << " " << fuzz_check(inst.graph, inst.profiles, mode, line.mismatches);
        }
      }
      line.text = os.str();
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(i)] = e.what();
    }
  }

  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) {
      throw Error(ErrorKind::InternalInvariant, "instance " + std::to_string(i) + ": " + failures[i]);
    }
  }
  int skipped = 0;
  int mismatches = 0;
  for (const auto& l : lines) {
    out << l.text << "\n";
    skipped += l.skipped;
    mismatches += l.mismatches;
  }
  out << "instances " << o.count << " checked " << (o.count - skipped) << " skipped " << skipped
      << " mismatches " << mismatches << "\n";
  return mismatches == 0 ? kOk : kInternalError;
}

int cmd_lifetime(const Options& o, std::ostream& out, std::ostream&) {
  auto p = profiles_of(o, false);
  const auto params = p ? p->lifetime() : profiles::LifetimeParams{};
  std::vector<double> hbs = o.heartbeats;
  if (hbs.empty()) hbs = {15, 30, 60, 120, 300, 600};
  for (double t : hbs) {
    if (!(t > 0)) throw UsageError("heartbeat periods must be positive");
  }
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  if (o.csv) {
    os << "t_hb_s,lifetime_days\n";
    for (double t : hbs) os << t << "," << profiles::lifetime_days(params, t) << "\n";
    os << "inf," << profiles::lifetime_days_without_heartbeat(params) << "\n";
  } else {
    os << "# t_hb_s lifetime_days\n";
    for (double t : hbs) os << t << " " << profiles::lifetime_days(params, t) << "\n";
    os << "inf " << profiles::lifetime_days_without_heartbeat(params) << "\n";
  }
  out << os.str();
  return kOk;
}

void add_input(CLI::App* c, Options& o) {
  c->add_option("--program", o.program, "EdgeProg source file (.eprog)");
  c->add_option("--bench", o.bench, "bundled benchmark: Sense, MNSVG, EEG, SHOW, Voice");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"EdgeProg compiler and placement optimizer", "edgeprog"};
  app.require_subcommand(1);

  auto* parse = app.add_subcommand("parse", "parse and validate a program");
  parse->add_option("--program", o.program, "EdgeProg source file")->required();
  parse->add_flag("--dump-ast", o.dump_ast, "print the AST as JSON");

  auto* graph = app.add_subcommand("graph", "lower to the logic-block graph");
  add_input(graph, o);
  graph->add_option("--profiles", o.profiles, "profile file; enables the completeness check");
  graph->add_flag("--stats", o.stats, "print block, edge and path counts instead of DOT");
  graph->add_flag("--json", o.json, "print the structured graph dump instead of DOT");

  auto* part = app.add_subcommand("partition", "compute the optimal placement");
  add_input(part, o);
  part->add_option("--profiles", o.profiles, "profile file")->required();
  part->add_option("--objective", o.objective, "latency or energy")->required();
  part->add_option("--path-cap", o.path_cap, "explicit path constraints up to this many paths");
  part->add_option("--solver", o.solver, "bnb or brute-force");
  part->add_option("--emit", o.emit, "contiki or manifest");
  part->add_option("--out", o.out_dir, "output directory for --emit");
  part->add_option("--budget-ms", o.budget_ms, "fragment time budget in ms");
  part->add_option("--format", o.format, "text, csv or json-like");

  auto* cmp = app.add_subcommand("compare", "compare against RT-IFTTT and Wishbone");
  add_input(cmp, o);
  cmp->add_option("--profiles", o.profiles, "profile file")->required();
  cmp->add_option("--objective", o.objective, "latency or energy")->required();
  cmp->add_option("--wishbone-sweep", o.sweep_step, "alpha step of the Wishbone sweep");
  cmp->add_option("--format", o.format, "text, csv or json-like");

  auto* fuzz = app.add_subcommand("fuzz", "check solve against brute force on random instances");
  fuzz->add_option("--seed", o.seed, "seed of the first instance");
  fuzz->add_option("--count", o.count, "number of instances");
  fuzz->add_option("--max-movable", o.max_movable, "movable blocks per instance, at most");
  fuzz->add_option("--max-devices", o.max_devices, "devices per instance including the edge, at most");

  auto* life = app.add_subcommand("lifetime", "node lifetime against heartbeat period");
  life->add_option("--profiles", o.profiles, "profile file with a [lifetime] section");
  life->add_flag("--csv", o.csv, "comma-separated output");
  life->add_option("t_hb", o.heartbeats, "heartbeat periods in seconds");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  }

  try {
    if (*parse) return cmd_parse(o, out, err);
    if (*graph) return cmd_graph(o, out, err);
    if (*part) return cmd_partition(o, out, err);
    if (*cmp) return cmd_compare(o, out, err);
    if (*fuzz) return cmd_fuzz(o, out, err);
    if (*life) return cmd_lifetime(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const dsl::ProgramError& e) {
    const std::string file = o.program.empty() ? "<input>" : o.program;
    for (const auto& d : e.diagnostics()) {
      if (d.severity == dsl::Severity::Error) err << dsl::render(d, file) << "\n";
    }
    return kUserError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::InternalInvariant ? kInternalError : kUserError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUserError;
}

}  // namespace edgeprog::cli
