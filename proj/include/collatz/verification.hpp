#pragma once

// Range-driven checkers, one per identity or residue claim. Each produces a
// TheoremReport; the report for a given range is identical whatever the
// worker count.

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "collatz/config.hpp"
#include "collatz/natural.hpp"

namespace collatz {

/// Theorems may be falsified (violations). Conjectures only ever report
/// reached or inconclusive. Observations are claims stated tentatively:
/// mismatches are listed but never count as a failure.
enum class ClaimKind : std::uint8_t { Theorem, Conjecture, Observation };
std::string_view claim_kind_name(ClaimKind kind);

struct Violation {
  Natural input;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct TheoremReport {
  std::string theorem_id;
  ClaimKind kind = ClaimKind::Theorem;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;  // inputs outside the claim's precondition
  /// Sorted by input, truncated to the cap; violation_count keeps the total.
  std::vector<Violation> violations;
  std::uint64_t violation_count = 0;
  /// Inputs whose budget ran out, sorted and capped like violations.
  std::vector<Natural> budget_exhausted;
  std::uint64_t inconclusive_count = 0;
  std::vector<std::string> notes;
  std::chrono::nanoseconds elapsed{0};

  /// True when a theorem-kind claim has at least one violation.
  bool falsified() const { return kind == ClaimKind::Theorem && violation_count > 0; }
};

struct VerifyOptions {
  std::uint64_t budget = defaults::kTraceBudget;
  unsigned workers = defaults::kWorkers;
  std::uint64_t violation_cap = defaults::kViolationCap;
};

/// A(n) is an ordered subsequence of T(n), T(n) of C(n), and
/// |A_1(n)| <= |T_1(n)| <= |C_1(n)|, for n in [lo, hi].
TheoremReport check_covering(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// The first same-parity run of C(n) (even n) or T(n) (odd n) has length
/// r(n/2), respectively r((n+1)/2).
TheoremReport check_parity_runs(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// The closed parity-flip forms agree with run_length iterations of g_step,
/// for the (a, b) pairs given, over g0 in [lo, hi].
TheoremReport check_closed_forms(std::uint64_t lo, std::uint64_t hi,
                                 std::span<const std::pair<std::uint64_t, std::uint64_t>> ab,
                                 const VerifyOptions& = {});

/// even_from_index(n) = 2(n+1) and odd_from_index(n) = 2n+1.
TheoremReport check_index_forms(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// r(e_n / 2) = q_n and r((o_n + 1) / 2) = q_n.
TheoremReport check_ruler_identities(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// Even u in [lo, hi]: the successor is 6m + 2, and every element of the
/// U-trace from index 2 on is 18m + 2 or 18m + 8.
TheoremReport check_u_residues(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// Odd u0 in [lo, hi]: u1 = (u0+1)(3/2)^{r((u0+1)/2)} - 1, then elements from
/// index 2 on are 18m + 2 or 18m + 8. Observation only.
TheoremReport check_u_residues_odd_start(std::uint64_t lo, std::uint64_t hi,
                                         const VerifyOptions& = {});

/// x_step(x) mod 3 is 0 or 1.
TheoremReport check_x_residues(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// p(3n) mod 3 is 0 or 2.
TheoremReport check_p3n(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// emapt_step_pq = emapt_step_ruler on even u, and both index maps agree with
/// apt_step (mapt_even_step(i), mapt_odd_step(i) for i = (u-2)/2 and (u-1)/2).
TheoremReport check_dual_forms(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// Along the U-trace of every even u in [lo, hi]: the linear relation
/// 2^{a+b} u' = 3^a u + 2^b (3^a - 2^a), the fixed-point relation
/// (u'+1) 2^a = (v+1) 3^a, and the exact reverse map u' -> u.
TheoremReport check_linear_and_fixed_point(std::uint64_t lo, std::uint64_t hi,
                                           const VerifyOptions& = {});

/// 1 in A(n) for n in [lo, hi].
TheoremReport check_conjecture_apt(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

/// 2 in U(6n + 2) for n in [lo, hi].
TheoremReport check_conjecture_u(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& = {});

std::vector<TheoremReport> check_conjectures(std::uint64_t lo, std::uint64_t hi,
                                             const VerifyOptions& = {});

/// Sequences with an OEIS b-file counterpart.
enum class OeisSequence : std::uint8_t {
  A001511,  // ruler, offset 1
  A025480,  // interleave_p, offset 0
  A007310,  // w_candidate, offset 1
};

OeisSequence parse_oeis_sequence(std::string_view text);
std::string_view oeis_name(OeisSequence seq);
std::uint64_t oeis_offset(OeisSequence seq);

struct BFileEntry {
  Natural index;
  Natural value;
  friend bool operator==(const BFileEntry&, const BFileEntry&) = default;
};

/// Compares the first `count` entries with the generator. Throws ConfigError
/// when the entries do not start at the sequence's offset, are not
/// consecutive, or are fewer than `count`.
TheoremReport check_oeis(std::span<const BFileEntry> entries, OeisSequence seq,
                         std::uint64_t count, const VerifyOptions& = {});

/// Checker registry used by the CLI.
struct CheckerInfo {
  std::string_view id;
  std::string_view summary;
  bool needs_budget;
};
std::span<const CheckerInfo> checkers();

/// Runs a registered checker by id; throws ConfigError for unknown ids.
TheoremReport run_checker(std::string_view id, std::uint64_t lo, std::uint64_t hi,
                          const VerifyOptions& = {});

}  // namespace collatz
