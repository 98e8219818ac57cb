#include <doctest.h>

#include <fstream>
#include <sstream>

#include "collatz/cli.hpp"
#include "collatz/verification.hpp"
#include "oracles.hpp"

using namespace collatz;
using u64 = std::uint64_t;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<BFileEntry> fixture(const char* name) {
  return parse_bfile(slurp(std::string(COLLATZ_TEST_DATA) + "/" + name));
}

// Everything but wall-clock time.
void require_same(const TheoremReport& x, const TheoremReport& y) {
  REQUIRE(x.theorem_id == y.theorem_id);
  REQUIRE(x.kind == y.kind);
  REQUIRE(x.lo == y.lo);
  REQUIRE(x.hi == y.hi);
  REQUIRE(x.checked == y.checked);
  REQUIRE(x.skipped == y.skipped);
  REQUIRE(x.violations == y.violations);
  REQUIRE(x.violation_count == y.violation_count);
  REQUIRE(x.budget_exhausted == y.budget_exhausted);
  REQUIRE(x.inconclusive_count == y.inconclusive_count);
  REQUIRE(x.notes == y.notes);
}

std::vector<u64> first_values(const std::vector<BFileEntry>& entries, std::size_t count) {
  std::vector<u64> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(to_u64(entries[k].value));
  return out;
}

}  // namespace

TEST_CASE("every registered checker is clean on a small range") {
  REQUIRE(checkers().size() == 13);
  for (const auto& info : checkers()) {
    CAPTURE(info.id);
    const auto report = run_checker(info.id, 1, 3000);
    CHECK(report.theorem_id == info.id);
    CHECK(report.violation_count == 0);
    CHECK(report.inconclusive_count == 0);
    CHECK(report.checked + report.skipped == 3000);
    CHECK_FALSE(report.falsified());
  }
  CHECK_THROWS_AS(run_checker("no-such-claim", 1, 10), ConfigError);
  CHECK_THROWS_AS(run_checker("p3n", 10, 1), ConfigError);
}

TEST_CASE("claim kinds") {
  CHECK(check_covering(1, 10).kind == ClaimKind::Theorem);
  CHECK(check_u_residues_odd_start(1, 10).kind == ClaimKind::Observation);
  for (const auto& r : check_conjectures(0, 10)) CHECK(r.kind == ClaimKind::Conjecture);
  CHECK(claim_kind_name(ClaimKind::Observation) == "observation");
}

TEST_CASE("covering, parity runs and closed forms") {
  CHECK(check_covering(1, 20'000).violation_count == 0);
  CHECK(check_parity_runs(1, 50'000).violation_count == 0);
  const std::pair<u64, u64> pairs[] = {{3, 1}, {5, 3}, {7, 5}, {9, 7}, {5, 9}};
  const auto closed = check_closed_forms(1, 20'000, pairs);
  CHECK(closed.violation_count == 0);
  CHECK(closed.checked == 20'000);
  CHECK_THROWS_AS(check_covering(0, 5), ConfigError);
  const std::pair<u64, u64> bad[] = {{4, 1}};
  CHECK_THROWS_AS(check_closed_forms(1, 5, bad), ConfigError);
}

TEST_CASE("budget exhaustion is inconclusive and capped") {
  VerifyOptions opts;
  opts.budget = 5;
  opts.violation_cap = 4;
  const auto report = check_covering(1, 200, opts);
  CHECK(report.violation_count == 0);
  CHECK(report.inconclusive_count > 4);
  CHECK(report.budget_exhausted.size() == 4);
  CHECK(std::is_sorted(report.budget_exhausted.begin(), report.budget_exhausted.end()));
  CHECK_FALSE(report.falsified());

  const auto conj = check_conjectures(1, 200, opts);
  CHECK(conj[0].inconclusive_count > 0);
  CHECK_FALSE(conj[0].falsified());
  CHECK_FALSE(conj[1].falsified());
}

TEST_CASE("index identities, residues and p(3n)") {
  CHECK(check_index_forms(0, 100'000).violation_count == 0);
  CHECK(check_ruler_identities(0, 100'000).violation_count == 0);
  CHECK(check_x_residues(0, 100'000).violation_count == 0);
  CHECK(check_p3n(0, 100'000).violation_count == 0);
  CHECK(check_dual_forms(1, 100'000).violation_count == 0);
  CHECK(check_linear_and_fixed_point(1, 30'000).violation_count == 0);

  // Values the residue claims constrain, computed by the oracles.
  for (u64 n = 0; n <= 20'000; ++n) REQUIRE(oracle::p(3 * n) % 3 != 1);
}

TEST_CASE("even-only residues") {
  const auto report = check_u_residues(1, 100'000);
  CHECK(report.violation_count == 0);
  CHECK(report.skipped == 50'000);
  CHECK(report.checked == 50'000);

  u64 fourteen = 0;
  for (u64 u = 2; u <= 100'000; u += 2)
    if (oracle::apt(oracle::apt(u)) % 18 == 14) ++fourteen;
  CHECK(fourteen > 0);
  const std::string expected = "starts with u_1 = 14 mod 18: " + std::to_string(fourteen);
  CHECK(std::find(report.notes.begin(), report.notes.end(), expected) != report.notes.end());

  const auto odd = check_u_residues_odd_start(1, 100'000);
  CHECK(odd.kind == ClaimKind::Observation);
  CHECK(odd.skipped == 50'000);
  CHECK_FALSE(odd.falsified());
}

TEST_CASE("reports do not depend on the worker count") {
  VerifyOptions one;
  VerifyOptions many;
  many.workers = 8;
  for (const auto& info : checkers()) {
    CAPTURE(info.id);
    require_same(run_checker(info.id, 1, 30'000, one), run_checker(info.id, 1, 30'000, many));
  }
  one.budget = many.budget = 8;
  require_same(check_covering(1, 30'000, one), check_covering(1, 30'000, many));
}

TEST_CASE("conjecture reports") {
  const auto reports = check_conjectures(0, 10'000);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].theorem_id == "conjecture-apt");
  CHECK(reports[0].lo == 1);
  CHECK(reports[0].checked == 10'000);
  CHECK(reports[1].theorem_id == "conjecture-u");
  CHECK(reports[1].checked == 10'001);
  for (const auto& r : reports) {
    CHECK(r.inconclusive_count == 0);
    CHECK_FALSE(r.notes.empty());
  }
}

TEST_CASE("b-file fixtures match the generators") {
  const auto ruler = fixture("b001511.txt");
  const auto p = fixture("b025480.txt");
  const auto w = fixture("b007310.txt");
  CHECK(first_values(ruler, 16) == std::vector<u64>{1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1, 5});
  CHECK(first_values(p, 16) == std::vector<u64>{0, 0, 1, 0, 2, 1, 3, 0, 4, 2, 5, 1, 6, 3, 7, 0});
  CHECK(first_values(w, 10) == std::vector<u64>{1, 5, 7, 11, 13, 17, 19, 23, 25, 29});

  for (auto [entries, seq] : {std::pair{&ruler, OeisSequence::A001511},
                              std::pair{&p, OeisSequence::A025480},
                              std::pair{&w, OeisSequence::A007310}}) {
    const auto report = check_oeis(*entries, seq, 10'000);
    CHECK(report.violation_count == 0);
    CHECK(report.checked == 10'000);
    CHECK(report.lo == oeis_offset(seq));
  }
}

TEST_CASE("b-file problems") {
  auto entries = fixture("b001511.txt");
  CHECK_THROWS_AS(check_oeis(entries, OeisSequence::A001511, 10'001), ConfigError);
  CHECK_THROWS_AS(check_oeis(entries, OeisSequence::A001511, 0), ConfigError);
  // Offset 1 data read as an offset 0 sequence.
  CHECK_THROWS_AS(check_oeis(entries, OeisSequence::A025480, 100), ConfigError);

  auto gap = entries;
  gap.erase(gap.begin() + 5);
  CHECK_THROWS_AS(check_oeis(gap, OeisSequence::A001511, 100), ConfigError);

  auto corrupt = entries;
  for (std::size_t k = 99; k < 1000; k += 100) corrupt[k].value += 1;
  VerifyOptions opts;
  opts.violation_cap = 3;
  const auto report = check_oeis(corrupt, OeisSequence::A001511, 10'000, opts);
  CHECK(report.violation_count == 10);
  REQUIRE(report.violations.size() == 3);
  CHECK(report.violations[0].input == 100);
  CHECK(report.violations[1].input == 200);
  CHECK(report.violations[2].input == 300);
  CHECK(report.falsified());
  opts.workers = 6;
  require_same(report, check_oeis(corrupt, OeisSequence::A001511, 10'000, opts));

  CHECK(parse_oeis_sequence("A007310") == OeisSequence::A007310);
  CHECK_THROWS_AS(parse_oeis_sequence("A000045"), ConfigError);
}
