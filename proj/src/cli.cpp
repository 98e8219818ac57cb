#include "collatz/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace collatz {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kDescription =
    "Collatz-family maps, ruler-function identities and inverse-tree enumeration.\n"
    "Exit status: 0 success, 1 a theorem check found violations, 2 usage or domain error.\n"
    "Tree DOT output draws edges child -> parent, i.e. toward the root 1.";

std::string str(const Natural& n) { return to_string(n); }
std::string str(std::uint64_t n) { return std::to_string(n); }

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "dot") return Format::Dot;
  if (text == "text") return Format::Text;
  throw ConfigError("unknown format '" + text + "'");
}

void require_format(Format format, std::initializer_list<Format> allowed, std::string_view command) {
  for (Format f : allowed)
    if (f == format) return;
  throw ConfigError("format '" + std::string(format_name(format)) + "' is not available for " +
                    std::string(command));
}

unsigned parse_workers(const std::string& text) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || value == 0)
    throw ConfigError("COLLATZ_LAB_WORKERS must be a positive integer, got '" + text + "'");
  return value;
}

ordered_json optional_json(const std::optional<std::uint64_t>& value) {
  return value ? ordered_json(str(*value)) : ordered_json(nullptr);
}

std::string optional_csv(const std::optional<std::uint64_t>& value) {
  return value ? str(*value) : std::string{};
}

}  // namespace

std::string_view format_name(Format format) {
  switch (format) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Dot: return "dot";
    case Format::Text: return "text";
  }
  return "unknown";
}

RunConfig parse_cli(std::span<const std::string> argv, std::optional<std::string> worker_env) {
  CLI::App app{std::string(kDescription), "collatz_lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  RunConfig cfg;
  std::string kind = "C";
  std::string start;
  std::string format;
  std::uint64_t target = 0;
  std::uint64_t a = 3;
  std::uint64_t b = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    sub->add_option("--output,-o", cfg.output_path, "Write output to this file instead of stdout");
  };
  auto add_range = [&](CLI::App* sub, bool required) {
    sub->add_option("--lo", cfg.lo, "First input of the range")->required(required);
    sub->add_option("--hi", cfg.hi, "Last input of the range")->required(required);
    sub->add_option("--workers,-j", cfg.workers, "Worker threads (COLLATZ_LAB_WORKERS overrides)")
        ->check(CLI::PositiveNumber);
  };

  auto* trace_cmd = app.add_subcommand("trace", "Iterate one map from a start value");
  trace_cmd->add_option("--kind,-k", kind, "Map: C T G H A U V X")->required();
  trace_cmd->add_option("--start,-s", start, "Start value (decimal, unbounded)")->required();
  trace_cmd->add_option("--budget", cfg.budget, "Maximum number of steps");
  auto* target_opt = trace_cmd->add_option("--target", target, "Override the kind's target");
  auto* a_opt = trace_cmd->add_option("--a", a, "Multiplier a for G/H (odd, >= 3)");
  auto* b_opt = trace_cmd->add_option("--b", b, "Offset b for G/H (odd, divisible by a-2)");
  add_common(trace_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check one identity over a range");
  verify_cmd->add_option("--theorem,-t", cfg.theorem, "Checker id (see --list)");
  bool list = false;
  verify_cmd->add_flag("--list", list, "List checker ids and exit");
  add_range(verify_cmd, false);
  verify_cmd->add_option("--budget", cfg.budget, "Step budget per trace");
  verify_cmd->add_option("--cap", cfg.violation_cap, "Maximum listed violations");
  verify_cmd->add_flag("--timing", cfg.timing, "Include elapsed time in the report");
  add_common(verify_cmd);

  auto* tree_cmd = app.add_subcommand("tree", "Enumerate the bounded inverse tree");
  tree_cmd->add_option("--candidates,-c", cfg.candidates, "Number of candidate w values")
      ->check(CLI::PositiveNumber);
  tree_cmd->add_option("--depth,-d", cfg.depth, "Maximum depth below the root")
      ->check(CLI::PositiveNumber);
  tree_cmd->add_option("--workers,-j", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_common(tree_cmd);

  auto* stats_cmd = app.add_subcommand("stats", "|C_1(n)|, |T_1(n)|, |A_1(n)| per n");
  add_range(stats_cmd, true);
  stats_cmd->add_option("--budget", cfg.budget, "Step budget per trace");
  add_common(stats_cmd);

  auto* oeis_cmd = app.add_subcommand("oeis-check", "Compare a generator with an OEIS b-file");
  oeis_cmd->add_option("--bfile", cfg.bfile_path, "Path to the b-file")->required();
  oeis_cmd->add_option("--sequence", cfg.sequence, "A001511, A025480 or A007310")->required();
  oeis_cmd->add_option("--count,-n", cfg.count, "Number of leading terms to compare");
  add_common(oeis_cmd);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, help);
    throw UsageError(e.what(), code == 0 ? kExitOk : kExitUsage, help.str());
  }

  auto usage = [](const std::string& message) { return UsageError(message, kExitUsage, {}); };

  try {
    if (trace_cmd->parsed()) {
      cfg.command = Command::Trace;
      cfg.kind = parse_map_kind(kind);
      cfg.start = parse_natural(start);
      if (target_opt->count() > 0) cfg.target = target;
      const bool generalized = cfg.kind == MapKind::Generalized || cfg.kind == MapKind::Gapt;
      if (!generalized && (a_opt->count() > 0 || b_opt->count() > 0))
        throw usage("--a/--b only apply to kinds G and H");
      cfg.a = a;
      cfg.b = b;
      if (generalized) GParams::make(a, b);
      cfg.format = format.empty() ? Format::Text : parse_format(format);
      require_format(cfg.format, {Format::Json, Format::Csv, Format::Text}, "trace");
    } else if (verify_cmd->parsed()) {
      cfg.command = Command::Verify;
      if (list) {
        cfg.theorem = "--list";
      } else if (cfg.theorem.empty()) {
        throw usage("verify needs --theorem (or --list)");
      } else if (verify_cmd->count("--lo") == 0 || verify_cmd->count("--hi") == 0) {
        throw usage("verify needs --lo and --hi");
      }
      cfg.format = format.empty() ? Format::Json : parse_format(format);
      require_format(cfg.format, {Format::Json, Format::Text}, "verify");
    } else if (tree_cmd->parsed()) {
      cfg.command = Command::Tree;
      cfg.format = format.empty() ? Format::Text : parse_format(format);
      require_format(cfg.format, {Format::Json, Format::Dot, Format::Text}, "tree");
    } else if (stats_cmd->parsed()) {
      cfg.command = Command::Stats;
      cfg.format = format.empty() ? Format::Csv : parse_format(format);
      require_format(cfg.format, {Format::Json, Format::Csv, Format::Text}, "stats");
    } else {
      cfg.command = Command::OeisCheck;
      parse_oeis_sequence(cfg.sequence);
      cfg.format = format.empty() ? Format::Json : parse_format(format);
      require_format(cfg.format, {Format::Json, Format::Text}, "oeis-check");
    }
    if ((cfg.command == Command::Verify || cfg.command == Command::Stats) && cfg.hi < cfg.lo)
      throw usage("--hi must be >= --lo");
    if (cfg.budget == 0) throw usage("--budget must be >= 1");
    if (worker_env && !worker_env->empty()) cfg.workers = parse_workers(*worker_env);
  } catch (const ConfigError& e) {
    throw usage(e.what());
  } catch (const DomainError& e) {
    throw usage(e.what());
  }
  return cfg;
}

std::vector<BFileEntry> parse_bfile(std::string_view text) {
  std::vector<BFileEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string index, value, extra;
    fields >> index >> value;
    if (value.empty() || (fields >> extra))
      throw ConfigError("b-file line " + std::to_string(line_no) + ": expected 'index value'");
    BFileEntry entry;
    try {
      entry = {parse_natural(index), parse_natural(value)};
    } catch (const ConfigError&) {
      throw ConfigError("b-file line " + std::to_string(line_no) + ": malformed '" + line + "'");
    }
    if (!out.empty() && entry.index <= out.back().index)
      throw ConfigError("b-file line " + std::to_string(line_no) + ": index " + str(entry.index) +
                        " does not increase");
    out.push_back(std::move(entry));
  }
  return out;
}

void emit(const Trace& trace, Format format, std::ostream& sink) {
  switch (format) {
    case Format::Json: {
      ordered_json j;
      j["kind"] = std::string(1, kind_letter(trace.kind));
      j["start"] = str(trace.start);
      j["target"] = str(trace.target);
      j["outcome"] = std::string(outcome_name(trace.outcome));
      j["stopping_time"] = optional_json(trace.stopping_time);
      j["length"] = str(trace.elements.size());
      auto& elements = j["elements"] = ordered_json::array();
      for (const auto& e : trace.elements) elements.push_back(str(e));
      sink << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      sink << "index,value\n";
      for (std::size_t i = 0; i < trace.elements.size(); ++i)
        sink << i << ',' << str(trace.elements[i]) << '\n';
      break;
    case Format::Text: {
      sink << kind_letter(trace.kind) << '(' << str(trace.start) << "):";
      for (const auto& e : trace.elements) sink << ' ' << str(e);
      sink << "\noutcome: " << outcome_name(trace.outcome);
      if (trace.stopping_time) sink << ", stopping time " << *trace.stopping_time;
      sink << " (target " << str(trace.target) << ")\n";
      break;
    }
    case Format::Dot:
      throw ConfigError("dot output is only available for trees");
  }
}

void emit(const TheoremReport& report, Format format, std::ostream& sink, bool timing) {
  switch (format) {
    case Format::Json: {
      ordered_json j;
      j["theorem"] = report.theorem_id;
      j["kind"] = std::string(claim_kind_name(report.kind));
      j["range"] = ordered_json{{"lo", str(report.lo)}, {"hi", str(report.hi)}};
      j["checked"] = str(report.checked);
      j["skipped"] = str(report.skipped);
      j["violation_count"] = str(report.violation_count);
      auto& violations = j["violations"] = ordered_json::array();
      for (const auto& v : report.violations)
        violations.push_back(ordered_json{{"input", str(v.input)}, {"detail", v.detail}});
      j["inconclusive_count"] = str(report.inconclusive_count);
      auto& exhausted = j["budget_exhausted"] = ordered_json::array();
      for (const auto& e : report.budget_exhausted) exhausted.push_back(str(e));
      j["notes"] = report.notes;
      if (timing)
        j["elapsed_ms"] = str(static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(report.elapsed).count()));
      sink << j.dump(2) << '\n';
      break;
    }
    case Format::Text: {
      const bool pass = report.violation_count == 0 && report.inconclusive_count == 0;
      sink << report.theorem_id << " [" << claim_kind_name(report.kind) << "] range [" << report.lo
           << ", " << report.hi << "]: checked " << report.checked << ", skipped " << report.skipped
           << ", violations " << report.violation_count << ", inconclusive "
           << report.inconclusive_count << (pass ? " -> ok" : " -> see below") << '\n';
      for (const auto& v : report.violations)
        sink << "  violation at " << str(v.input) << ": " << v.detail << '\n';
      for (const auto& e : report.budget_exhausted) sink << "  budget exhausted at " << str(e) << '\n';
      for (const auto& n : report.notes) sink << "  note: " << n << '\n';
      if (timing)
        sink << "  elapsed: "
             << std::chrono::duration_cast<std::chrono::milliseconds>(report.elapsed).count()
             << " ms\n";
      break;
    }
    default:
      throw ConfigError("reports are emitted as json or text");
  }
}

void emit(const WZTree& tree, Format format, std::ostream& sink) {
  auto parent_of = [](const WZNode& n) { return w_from_z(n.z); };
  switch (format) {
    case Format::Dot: {
      sink << "digraph WZ {\n"
           << "  // edges point from child to parent, toward the root 1\n"
           << "  rankdir=BT;\n"
           << "  node [shape=ellipse];\n";
      for (const auto& [w, node] : tree.nodes) {
        sink << "  " << str(w) << " [label=\"" << str(w) << " (" << str(node.z) << ")\"";
        if (w == tree.root.w) sink << ", shape=doublecircle";
        sink << "];\n";
      }
      if (tree.root_self_loop)
        sink << "  " << str(tree.root.w) << " -> " << str(tree.root.w)
             << " [style=dashed, color=red, label=\"trivial cycle\"];\n";
      for (const auto& [parent, kids] : tree.children)
        for (const auto& child : kids) sink << "  " << str(child) << " -> " << str(parent) << ";\n";
      sink << "}\n";
      break;
    }
    case Format::Json: {
      ordered_json j;
      j["root"] = ordered_json{{"w", str(tree.root.w)}, {"z", str(tree.root.z)}};
      j["candidate_bound"] = str(tree.candidate_bound);
      j["depth_bound"] = str(tree.depth_bound);
      j["root_self_loop"] = tree.root_self_loop;
      auto& nodes = j["nodes"] = ordered_json::array();
      for (const auto& [w, node] : tree.nodes) {
        ordered_json n{{"w", str(w)}, {"z", str(node.z)}, {"depth", str(tree.depth.at(w))}};
        n["parent"] = str(parent_of(node));
        auto& kids = n["children"] = ordered_json::array();
        for (const auto& c : tree.children_of(w)) kids.push_back(str(c));
        nodes.push_back(std::move(n));
      }
      auto list = [&](const std::vector<WZNode>& items) {
        ordered_json arr = ordered_json::array();
        for (const auto& n : items)
          arr.push_back(ordered_json{{"w", str(n.w)}, {"z", str(n.z)}, {"parent", str(parent_of(n))}});
        return arr;
      };
      j["orphans"] = list(tree.orphans);
      j["detached"] = list(tree.detached);
      sink << j.dump(2) << '\n';
      break;
    }
    case Format::Text: {
      sink << "WZ tree: " << tree.candidate_bound << " candidates, depth <= " << tree.depth_bound
           << ", " << tree.nodes.size() << " attached nodes\n";
      // Depth-first from the root, children in increasing w.
      std::vector<std::pair<Natural, std::uint64_t>> stack{{tree.root.w, 0}};
      while (!stack.empty()) {
        auto [w, level] = stack.back();
        stack.pop_back();
        const auto& node = tree.nodes.at(w);
        sink << std::string(2 * level, ' ') << str(w) << " (" << str(node.z) << ")";
        if (w == tree.root.w && tree.root_self_loop) sink << "  [self-loop 1 -> 1]";
        sink << '\n';
        const auto& kids = tree.children_of(w);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, level + 1);
      }
      sink << "orphans (parent beyond the candidate set): " << tree.orphans.size() << '\n';
      for (const auto& n : tree.orphans)
        sink << "  " << str(n.w) << " -> " << str(parent_of(n)) << '\n';
      sink << "detached (not attached within the depth bound): " << tree.detached.size() << '\n';
      break;
    }
    case Format::Csv:
      throw ConfigError("trees are emitted as dot, json or text");
  }
}

void emit(std::span<const StatsRow> rows, Format format, std::ostream& sink) {
  switch (format) {
    case Format::Csv:
      sink << "n,c1,t1,a1,budget_exhausted\n";
      for (const auto& r : rows)
        sink << r.n << ',' << optional_csv(r.collatz) << ',' << optional_csv(r.terras) << ','
             << optional_csv(r.apt) << ',' << (r.exhausted() ? 1 : 0) << '\n';
      break;
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back(ordered_json{{"n", str(r.n)},
                                   {"c1", optional_json(r.collatz)},
                                   {"t1", optional_json(r.terras)},
                                   {"a1", optional_json(r.apt)},
                                   {"budget_exhausted", r.exhausted()}});
      sink << arr.dump(2) << '\n';
      break;
    }
    case Format::Text:
      for (const auto& r : rows)
        sink << "n=" << r.n << " |C_1|=" << optional_csv(r.collatz) << " |T_1|="
             << optional_csv(r.terras) << " |A_1|=" << optional_csv(r.apt)
             << (r.exhausted() ? " (budget exhausted)" : "") << '\n';
      break;
    case Format::Dot:
      throw ConfigError("stats are emitted as csv, json or text");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) {
      err << "error: cannot open '" << config.output_path << "' for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = config.output_path.empty() ? out : file;

  int status = kExitOk;
  try {
    switch (config.command) {
      case Command::Trace: {
        TraceLimits limits{config.budget, config.target};
        if (config.kind == MapKind::Generalized || config.kind == MapKind::Gapt)
          limits.params = GParams::make(config.a, config.b);
        emit(trace(config.kind, config.start, limits), config.format, sink);
        break;
      }
      case Command::Verify: {
        if (config.theorem == "--list") {
          for (const auto& c : checkers()) sink << c.id << "  " << c.summary << '\n';
          break;
        }
        const VerifyOptions opts{config.budget, config.workers, config.violation_cap};
        const auto report = run_checker(config.theorem, config.lo, config.hi, opts);
        emit(report, config.format, sink, config.timing);
        if (report.falsified()) status = kExitViolations;
        break;
      }
      case Command::Tree:
        emit(build_tree(config.candidates, config.depth, config.workers), config.format, sink);
        break;
      case Command::Stats: {
        const auto rows = stopping_stats(config.lo, config.hi, config.budget, config.workers);
        emit(std::span<const StatsRow>(rows), config.format, sink);
        break;
      }
      case Command::OeisCheck: {
        std::ifstream in(config.bfile_path);
        if (!in) throw ConfigError("cannot read b-file '" + config.bfile_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        const auto entries = parse_bfile(text.str());
        const VerifyOptions opts{config.budget, config.workers, config.violation_cap};
        const auto report =
            check_oeis(entries, parse_oeis_sequence(config.sequence), config.count, opts);
        emit(report, config.format, sink, config.timing);
        if (report.falsified()) status = kExitViolations;
        break;
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  sink.flush();
  if (!sink) {
    err << "error: failed writing output\n";
    return kExitUsage;
  }
  return status;
}

int main_entry(std::span<const std::string> argv, std::ostream& out, std::ostream& err) {
  std::optional<std::string> env;
  if (const char* value = std::getenv("COLLATZ_LAB_WORKERS")) env = value;
  try {
    return run(parse_cli(argv, env), out, err);
  } catch (const UsageError& e) {
    if (e.exit_code == kExitOk) {
      out << e.help;
    } else {
      err << "error: " << e.what() << "\nRun with --help for usage.\n";
    }
    return e.exit_code;
  }
}

}  // namespace collatz
