#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "dtutte/boundary.hpp"
#include "dtutte/constructions.hpp"
#include "dtutte/cover.hpp"
#include "dtutte/export.hpp"
#include "dtutte/generate.hpp"
#include "dtutte/harmonizer.hpp"

namespace dtutte::cli {

namespace {

namespace fs = std::filesystem;

// Unreadable or unwritable files count as malformed input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::shared_ptr<const Triangulation> load_tri(const std::string& path) {
  return std::make_shared<const Triangulation>(parse_tri(read_file(path)));
}

Walk load_walk(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_walk(in);
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// validate

struct ValidateArgs {
  std::string tri;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  Triangulation t = parse_tri(read_file(a.tri));
  ValidationReport r = validate_reducing(t);
  out << "vertices=" << t.num_vertices() << " edges=" << t.num_edges() << " faces=" << t.num_faces()
      << " boundary_components=" << t.num_boundary_components() << " chi=" << t.euler_characteristic() << "\n";
  for (const auto& v : r.violations) out << "violation " << to_string(v.kind) << " " << v.location << "\n";
  out << (r.ok ? "reducing" : "not reducing") << "\n";
  return r.ok ? 0 : 1;
}

// harmonize

struct HarmonizeArgs {
  std::string tri;
  std::string drw;
  long long budget = -1;
  bool anchors = false;
  std::string output;
  std::string trace;
  int depth = -1;
  int window = -1;
};

void run_probe(const SimplicialMap& s, int depth, int window, std::ostream& out) {
  int blocked_left = 0, blocked_right = 0;
  for (int v = 0; v < s.num_vertices(); ++v) {
    for (Side side : {Side::Left, Side::Right}) {
      EscapeResult e = escape_probe(s, v, side, depth, window);
      if (e.escapes) continue;
      (side == Side::Left ? blocked_left : blocked_right)++;
      out << "# probe vertex=" << v << " side=" << (side == Side::Left ? "left" : "right")
          << " line=" << e.failing_line << " no witness\n";
    }
  }
  out << "# probe depth=" << depth << " window=" << window << " vertices=" << s.num_vertices()
      << " blocked_left=" << blocked_left << " blocked_right=" << blocked_right << "\n";
}

int cmd_harmonize(const HarmonizeArgs& a, std::ostream& out, std::ostream& err) {
  auto host = load_tri(a.tri);
  auto [f, anchor] = parse_drw(read_file(a.drw), host);
  HarmonizeOptions opt;
  opt.budget = a.budget;

  Drawing result;
  HarmonizeResult inner;
  bool ok = true;
  std::ostringstream summary;
  if (a.anchors) {
    RelAnchorResult r = harmonize_rel_anchor(f, anchor, opt, false);
    result = r.drawing;
    inner = std::move(r.inner);
    summary << "# anchored stem_rewrites=" << r.stem_rewrites << " guard_uses=" << r.guard_uses
            << " outside_moves=" << r.outside_moves << " anchors_fixed=" << (r.anchors_fixed ? 1 : 0) << "\n";
    for (const auto& v : r.violations) summary << "# violation " << v << "\n";
    ok = r.ok();
  } else {
    inner = harmonize(f, opt);
    result = inner.drawing;
    ok = inner.status == HarmonizeStatus::Stable;
  }
  if (inner.torus_host) err << "warning: torus host, termination is not guaranteed\n";
  summary << "# status=" << (inner.status == HarmonizeStatus::Stable ? "stable" : "budget-exhausted")
          << " moves=" << inner.moves << " budget=" << inner.budget
          << " flips=" << inner.trace.count(MoveKind::Flip) << " shortenings=" << inner.trace.count(MoveKind::Shortening)
          << " balancings=" << inner.trace.count(MoveKind::Balancing) << "\n";
  Lengths before = lengths(f), after = lengths(result);
  summary << "# length " << before.total << "->" << after.total << "\n";

  if (a.depth >= 0 || a.window >= 0) {
    if (!host->closed()) throw DomainError("escape probe needs a closed host");
    int depth = a.depth >= 0 ? a.depth : 2 * (f.graph.num_vertices + f.graph.num_edges());
    int window = a.window >= 0 ? a.window : 6;
    if (window < 1) throw DomainError("--window must be positive");
    run_probe(inner.map, depth, window, summary);
  }

  std::string drw = write_drw(result, anchor);
  if (a.output.empty()) {
    out << summary.str() << drw;
  } else {
    out << summary.str();
    write_file(a.output, drw);
  }
  if (!a.trace.empty()) write_file(a.trace, write_trc(inner.trace));
  if (!ok) err << "harmonization did not finish cleanly\n";
  return ok ? 0 : 1;
}

// reduce

struct ReduceArgs {
  std::string tri;
  std::string walk;
  bool closed = false;
  long long budget = -1;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  auto host = load_tri(a.tri);
  Walk w = load_walk(a.walk);
  check_walk(*host, w);
  if (a.closed && !w.closed) throw DomainError("--closed given but the walk is open");
  if (w.closed) {
    ClosedReduction r = reduce_closed(*host, w, a.budget < 0 ? 10000 : a.budget);
    if (r.stalled()) {
      out << "stalled steps=" << r.steps << " first_seen=" << r.first_seen << " budget_hit=" << (r.budget_hit ? 1 : 0)
          << "\n"
          << write_walk(r.walk) << "\n";
      return 1;
    }
    out << write_walk(r.walk) << "\n";
    return 0;
  }
  out << write_walk(reduce_open(*host, w, a.budget)) << "\n";
  return 0;
}

// fixtures

struct FixturesArgs {
  std::string name;
  std::string dir = ".";
};

const std::vector<std::string> kFixtureNames = {"torus", "doubled-crown4", "appendixA-C", "crowns",
                                                "gadgets", "degree5", "all"};

int cmd_fixtures(const FixturesArgs& a, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> files;
  auto want = [&](const std::string& n) { return a.name == n || a.name == "all"; };
  if (want("torus") || want("appendixA-C")) files.emplace_back("torus.tri", write_tri(build_torus()));
  if (want("appendixA-C")) {
    Triangulation t = build_torus();
    files.emplace_back("appendixA-C.walk", write_walk(torus_obstruction_walk(t)) + "\n");
  }
  if (want("doubled-crown4")) files.emplace_back("doubled-crown4.tri", write_tri(double_with_gadgets(crown(4))));
  if (want("crowns"))
    for (int k : {3, 4, 6, 8}) files.emplace_back("crown" + std::to_string(k) + ".tri", write_tri(crown(k)));
  if (want("gadgets")) {
    files.emplace_back("one-gadget.tri", write_tri(build_one_gadget()));
    files.emplace_back("three-gadget.tri", write_tri(build_three_gadget()));
  }
  if (want("degree5")) files.emplace_back("degree5.tri", write_tri(build_wheel(5)));
  if (files.empty()) throw InputError("unknown fixture '" + a.name + "'");
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  for (const auto& [name, text] : files) {
    fs::path p = fs::path(a.dir) / name;
    write_file(p, text);
    out << p.string() << "\n";
  }
  return 0;
}

// stress

struct StressArgs {
  uint64_t seed = 1;
  int count = 100;
  int threads = 0;
  int max_edges = 40;
  int max_walk = 10;
  long long budget = -1;
};

struct StressRow {
  int host = 0;
  int edges = 0;
  long long len_before = 0, len_after = 0;
  long long moves = 0, flips = 0, shortenings = 0, balancings = 0;
  long long budget_base = 0;
  bool monotone = true, stable = true, audit = true;
  long long rerun = 0;
  std::string error;

  bool violation() const { return !error.empty() || !monotone || !stable || !audit || rerun != 0; }
};

bool per_edge_monotone(const MoveTrace& tr) {
  std::vector<long long> prev = tr.initial_per_edge;
  for (const auto& e : tr.entries) {
    for (size_t i = 0; i < prev.size() && i < e.per_edge_after.size(); ++i)
      if (e.per_edge_after[i] > prev[i]) return false;
    if (e.kind != MoveKind::Flip && e.len_after >= e.len_before) return false;
    prev = e.per_edge_after;
  }
  return true;
}

int cmd_stress(const StressArgs& a, std::ostream& out) {
  if (a.count < 0) throw InputError("--count must be non-negative");
  std::vector<std::shared_ptr<const Triangulation>> hosts;
  hosts.push_back(std::make_shared<const Triangulation>(double_with_gadgets(crown(4))));
  hosts.push_back(std::make_shared<const Triangulation>(subdivide(*hosts[0])));

  std::vector<StressRow> rows(a.count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < a.count; i = next++) {
      StressRow& row = rows[i];
      row.host = i % 2;
      try {
        RandomDrawingOptions o;
        o.max_edges = a.max_edges;
        o.max_walk = a.max_walk;
        Drawing f = random_drawing(hosts[row.host], a.seed + static_cast<uint64_t>(i), o);
        row.edges = f.graph.num_edges();
        HarmonizeOptions ho;
        ho.budget = a.budget;
        HarmonizeResult r = harmonize(f, ho);
        row.len_before = lengths(f).total;
        row.len_after = lengths(r.drawing).total;
        row.moves = r.moves;
        row.flips = r.trace.count(MoveKind::Flip);
        row.shortenings = r.trace.count(MoveKind::Shortening);
        row.balancings = r.trace.count(MoveKind::Balancing);
        row.budget_base = move_budget_base(*hosts[row.host], factor_simplicial(f));
        row.monotone = per_edge_monotone(r.trace);
        row.audit = audit_trace(r.trace, *hosts[row.host]).ok();
        row.stable = r.status == HarmonizeStatus::Stable && is_locally_stable(r.drawing);
        row.rerun = harmonize(r.drawing).moves;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  int nthreads = a.threads > 0 ? a.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = std::max(1, std::min(nthreads, a.count));
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  out << "job seed host edges len_before len_after moves flips short bal budget_base ratio monotone stable audit rerun\n";
  int violations = 0;
  double max_ratio = 0;
  for (int i = 0; i < a.count; ++i) {
    const StressRow& r = rows[i];
    if (r.violation()) ++violations;
    out << i << ' ' << a.seed + static_cast<uint64_t>(i) << ' ' << r.host << ' ';
    if (!r.error.empty()) {
      out << "error " << r.error << "\n";
      continue;
    }
    double ratio = r.budget_base > 0 ? static_cast<double>(r.moves) / static_cast<double>(r.budget_base) : 0.0;
    max_ratio = std::max(max_ratio, ratio);
    out << r.edges << ' ' << r.len_before << ' ' << r.len_after << ' ' << r.moves << ' ' << r.flips << ' '
        << r.shortenings << ' ' << r.balancings << ' ' << r.budget_base << ' ' << fixed(ratio, 9) << ' '
        << r.monotone << ' ' << r.stable << ' ' << r.audit << ' ' << r.rerun << "\n";
  }
  out << "# runs=" << a.count << " violations=" << violations << " max_ratio=" << fixed(max_ratio, 9) << "\n";
  return violations == 0 ? 0 : 1;
}

// export

struct ExportArgs {
  std::string input;
  std::string format = "dot";
  std::string host;
  std::string drawing;
  std::string output;
  long long budget = -1;
};

void emit(const ExportArgs& a, const std::string& text, std::ostream& out) {
  if (a.output.empty())
    out << text;
  else
    write_file(a.output, text);
}

int cmd_export(const ExportArgs& a, std::ostream& out) {
  if (fs::path(a.input).extension() != ".trc") {
    auto t = load_tri(a.input);
    if (a.format == "dot") {
      if (!a.drawing.empty()) throw InputError("--drawing only applies to svg output");
      emit(a, export_dot(*t), out);
      return 0;
    }
    std::optional<Drawing> overlay;
    if (!a.drawing.empty()) overlay = parse_drw(read_file(a.drawing), t).first;
    emit(a, export_svg(*t, overlay ? &*overlay : nullptr), out);
    return 0;
  }

  if (a.format != "dot") throw DomainError("traces export as DOT frames only");
  if (a.host.empty() || a.drawing.empty()) throw InputError("trace export needs --host and --drawing");
  std::vector<TrcRecord> recorded = parse_trc(read_file(a.input));
  auto t = load_tri(a.host);
  Drawing f = parse_drw(read_file(a.drawing), t).first;
  HarmonizeOptions opt;
  opt.budget = a.budget;
  std::vector<TrcRecord> replayed = parse_trc(write_trc(harmonize(f, opt).trace));
  auto same = [](const TrcRecord& x, const TrcRecord& y) {
    return x.index == y.index && x.kind == y.kind && x.ids == y.ids && x.len_before == y.len_before &&
           x.len_after == y.len_after && x.phase == y.phase;
  };
  if (recorded.size() != replayed.size() || !std::equal(recorded.begin(), recorded.end(), replayed.begin(), same))
    throw DomainError("trace does not match a fresh harmonization of the drawing");
  std::vector<std::string> frames = trace_frames(f, opt);
  if (a.output.empty()) {
    for (const auto& fr : frames) out << fr;
  } else {
    for (size_t i = 0; i < frames.size(); ++i) {
      fs::path p = fs::path(a.output) / ("frame" + std::to_string(i) + ".dot");
      write_file(p, frames[i]);
    }
    out << frames.size() << " frames\n";
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Tutte embeddings: reducing triangulations, walk reduction and harmonization"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check that a TRI file is a reducing triangulation");
  validate->add_option("tri", va.tri, "Triangulation file")->required();

  HarmonizeArgs ha;
  auto* harm = app.add_subcommand("harmonize", "Harmonize a drawing by flips, shortenings and balancings");
  harm->add_option("tri", ha.tri, "Host triangulation")->required();
  harm->add_option("drw", ha.drw, "Drawing")->required();
  harm->add_option("--budget", ha.budget, "Move budget (default 8 (m+n) n^2)")->check(CLI::PositiveNumber);
  harm->add_flag("--anchors", ha.anchors, "Harmonize relative to the anchor lines of the drawing");
  harm->add_option("-o,--output", ha.output, "Write the harmonized drawing here instead of stdout");
  harm->add_option("--trace", ha.trace, "Write the move trace (TRC) here");
  harm->add_option("--depth", ha.depth, "Escape probe: walk depth")->check(CLI::NonNegativeNumber);
  harm->add_option("--window", ha.window, "Escape probe: half-length of the line window")->check(CLI::PositiveNumber);

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Reduce a walk");
  reduce->add_option("tri", ra.tri, "Host triangulation")->required();
  reduce->add_option("walk", ra.walk, "Walk file")->required();
  reduce->add_flag("--closed", ra.closed, "Require a closed walk and reduce it cyclically");
  reduce->add_option("--budget", ra.budget, "Rewrite budget")->check(CLI::PositiveNumber);

  FixturesArgs fa;
  auto* fixtures = app.add_subcommand("fixtures", "Write fixture files");
  fixtures->add_option("name", fa.name, "Fixture name")->required()->check(CLI::IsMember(kFixtureNames));
  fixtures->add_option("-o,--dir", fa.dir, "Output directory");

  StressArgs sa;
  auto* stress = app.add_subcommand("stress", "Harmonize seeded random drawings and tabulate the runs");
  stress->add_option("--seed", sa.seed, "First seed");
  stress->add_option("--count", sa.count, "Number of drawings")->check(CLI::NonNegativeNumber);
  stress->add_option("--threads", sa.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  stress->add_option("--max-edges", sa.max_edges, "Edges per drawing")->check(CLI::PositiveNumber);
  stress->add_option("--max-walk", sa.max_walk, "Walk length per edge")->check(CLI::PositiveNumber);
  stress->add_option("--budget", sa.budget, "Move budget per run")->check(CLI::PositiveNumber);

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "Export a triangulation (DOT/SVG) or a trace (DOT frames)");
  exp->add_option("input", ea.input, "TRI or TRC file")->required();
  exp->add_option("--format", ea.format, "svg or dot")->check(CLI::IsMember({"svg", "dot"}));
  exp->add_option("--host", ea.host, "Host triangulation (traces)");
  exp->add_option("--drawing", ea.drawing, "Drawing: overlay for svg, start of the trace for TRC");
  exp->add_option("-o,--output", ea.output, "Output file (directory for trace frames)");
  exp->add_option("--budget", ea.budget, "Move budget used when replaying a trace")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(va, out);
    if (*harm) return cmd_harmonize(ha, out, err);
    if (*reduce) return cmd_reduce(ra, out);
    if (*fixtures) return cmd_fixtures(fa, out);
    if (*stress) return cmd_stress(sa, out);
    if (*exp) return cmd_export(ea, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    err << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dtutte"};
  for (const auto& s : args) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dtutte::cli
