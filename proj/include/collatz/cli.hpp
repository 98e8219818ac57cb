#pragma once

// Command-line front end: argument parsing, output formats, b-file parsing
// and dispatch.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/reverse_tree.hpp"
#include "collatz/sequences.hpp"
#include "collatz/verification.hpp"

namespace collatz {

enum class Command : std::uint8_t { Trace, Verify, Tree, Stats, OeisCheck };
enum class Format : std::uint8_t { Json, Csv, Dot, Text };

std::string_view format_name(Format format);

/// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::Trace;

  // trace
  MapKind kind = MapKind::Collatz;
  Natural start{0};
  std::optional<std::uint64_t> target;
  std::uint64_t a = 3;
  std::uint64_t b = 1;

  // verify / stats
  std::string theorem;
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  std::uint64_t violation_cap = defaults::kViolationCap;
  bool timing = false;

  // tree
  std::uint64_t candidates = defaults::kTreeCandidates;
  std::uint64_t depth = defaults::kTreeDepth;

  // oeis-check
  std::string bfile_path;
  std::string sequence;
  std::uint64_t count = 10'000;

  std::uint64_t budget = defaults::kTraceBudget;
  unsigned workers = defaults::kWorkers;
  Format format = Format::Text;
  std::string output_path;  // empty: stdout
};

/// Thrown by parse_cli; `exit_code` is 0 for --help, 2 otherwise.
struct UsageError : std::runtime_error {
  UsageError(std::string message, int exit_code, std::string help_text)
      : std::runtime_error(std::move(message)), exit_code(exit_code), help(std::move(help_text)) {}
  int exit_code;
  std::string help;
};

/// argv[0] is the program name. `worker_env` stands in for COLLATZ_LAB_WORKERS
/// and, when set, overrides --workers.
RunConfig parse_cli(std::span<const std::string> argv,
                    std::optional<std::string> worker_env = std::nullopt);

/// Reads "index value" lines; blank and '#' lines are skipped. Throws
/// ConfigError naming the line on malformed input or non-increasing indices.
std::vector<BFileEntry> parse_bfile(std::string_view text);

// Emitters. All integers are written as decimal strings in JSON.
void emit(const Trace& trace, Format format, std::ostream& sink);
void emit(const TheoremReport& report, Format format, std::ostream& sink, bool timing = false);
void emit(const WZTree& tree, Format format, std::ostream& sink);
void emit(std::span<const StatsRow> rows, Format format, std::ostream& sink);

/// Runs the command. Output goes to config.output_path or `out`; diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_cli + run with exit-code mapping; the body of main().
int main_entry(std::span<const std::string> argv, std::ostream& out, std::ostream& err);

}  // namespace collatz
