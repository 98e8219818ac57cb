#include "collatz/verification.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "collatz/arith.hpp"
#include "collatz/parallel.hpp"
#include "collatz/reverse_tree.hpp"
#include "collatz/sequences.hpp"

namespace collatz {

namespace {

enum class State : std::uint8_t { Ok, Skip, Violated, Inconclusive };

struct Verdict {
  State state = State::Ok;
  std::string detail;
  bool flagged = false;  // checker-specific tally, see Partial::flagged

  static Verdict ok() { return {}; }
  static Verdict skip() { return {State::Skip, {}}; }
  static Verdict inconclusive() { return {State::Inconclusive, {}}; }
  static Verdict violated(std::string detail) { return {State::Violated, std::move(detail)}; }
};

struct Partial {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t flagged = 0;
  std::vector<Violation> violations;
  std::uint64_t violation_count = 0;
  std::vector<Natural> exhausted;
  std::uint64_t inconclusive_count = 0;
};

template <class... Parts>
std::string describe(const Parts&... parts) {
  std::ostringstream out;
  auto put = [&](const auto& p) {
    if constexpr (Integer<std::decay_t<decltype(p)>>) {
      out << to_string(p);
    } else {
      out << p;
    }
  };
  (put(parts), ...);
  return out.str();
}

/// Runs `fn` in 64 bits; reruns it on Natural if any intermediate overflows.
template <class Fn>
Verdict promote(std::uint64_t n, Fn&& fn) {
  try {
    return fn(n);
  } catch (const OverflowError&) {
    return fn(to_natural(n));
  }
}

template <class PerInput>
TheoremReport run_range(std::string id, ClaimKind kind, std::uint64_t lo, std::uint64_t hi,
                        const VerifyOptions& opts, PerInput per_input,
                        std::uint64_t* flagged = nullptr) {
  if (hi < lo) throw ConfigError("range must satisfy lo <= hi");
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t cap = opts.violation_cap;

  auto parts = map_chunks(lo, hi, opts.workers, [&](std::uint64_t first, std::uint64_t last) {
    Partial part;
    for (std::uint64_t n = first;; ++n) {
      Verdict v = per_input(n);
      if (v.flagged) ++part.flagged;
      switch (v.state) {
        case State::Skip:
          ++part.skipped;
          break;
        case State::Ok:
          ++part.checked;
          break;
        case State::Violated:
          ++part.checked;
          ++part.violation_count;
          if (part.violations.size() < cap)
            part.violations.push_back({to_natural(n), std::move(v.detail)});
          break;
        case State::Inconclusive:
          ++part.checked;
          ++part.inconclusive_count;
          if (part.exhausted.size() < cap) part.exhausted.push_back(to_natural(n));
          break;
      }
      if (n == last) break;
    }
    return part;
  });

  TheoremReport report;
  report.theorem_id = std::move(id);
  report.kind = kind;
  report.lo = lo;
  report.hi = hi;
  std::uint64_t flag_total = 0;
  for (auto& part : parts) {
    report.checked += part.checked;
    report.skipped += part.skipped;
    report.violation_count += part.violation_count;
    report.inconclusive_count += part.inconclusive_count;
    flag_total += part.flagged;
    for (auto& v : part.violations)
      if (report.violations.size() < cap) report.violations.push_back(std::move(v));
    for (auto& e : part.exhausted)
      if (report.budget_exhausted.size() < cap) report.budget_exhausted.push_back(std::move(e));
  }
  if (flagged) *flagged = flag_total;
  report.elapsed = std::chrono::steady_clock::now() - started;
  return report;
}

template <class T>
bool is_ordered_subsequence(const std::vector<T>& inner, const std::vector<T>& outer) {
  auto it = outer.begin();
  for (const auto& x : inner) {
    it = std::find(it, outer.end(), x);
    if (it == outer.end()) return false;
    ++it;
  }
  return true;
}

constexpr std::array<std::pair<std::uint64_t, std::uint64_t>, 3> kClosedFormPairs{
    {{3, 1}, {5, 3}, {7, 5}}};

constexpr const char* kFinitePrefixNote =
    "empirical over the stated range only; says nothing about inputs beyond it";

// u_{k} for k >= 2 of a U-trace must be 18m + 2 or 18m + 8.
template <Integer T>
Verdict check_tail_residues(const BasicTrace<T>& tr) {
  for (std::size_t k = 2; k < tr.elements.size(); ++k) {
    const auto r = num::mod(tr.elements[k], 18);
    if (r != 2 && r != 8)
      return Verdict::violated(describe("u_", k, " = ", tr.elements[k], " is ", r, " mod 18"));
  }
  if (tr.outcome != Outcome::ReachedTarget) return Verdict::inconclusive();
  return Verdict::ok();
}

}  // namespace

std::string_view claim_kind_name(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::Theorem: return "theorem";
    case ClaimKind::Conjecture: return "conjecture";
    case ClaimKind::Observation: return "observation";
  }
  return "unknown";
}

TheoremReport check_covering(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  if (lo < 1) throw ConfigError("covering: lo must be >= 1");
  const TraceLimits limits{opts.budget};
  return run_range("covering", ClaimKind::Theorem, lo, hi, opts, [&](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& start) {
      const auto c = trace_in<T>(MapKind::Collatz, start, limits);
      const auto t = trace_in<T>(MapKind::Terras, start, limits);
      const auto a = trace_in<T>(MapKind::Apt, start, limits);
      if (c.outcome != Outcome::ReachedTarget || t.outcome != Outcome::ReachedTarget ||
          a.outcome != Outcome::ReachedTarget)
        return Verdict::inconclusive();
      if (!is_ordered_subsequence(a.elements, t.elements))
        return Verdict::violated("A(n) is not an ordered subsequence of T(n)");
      if (!is_ordered_subsequence(t.elements, c.elements))
        return Verdict::violated("T(n) is not an ordered subsequence of C(n)");
      const auto ca = a.elements.size(), ct = t.elements.size(), cc = c.elements.size();
      if (!(ca <= ct && ct <= cc))
        return Verdict::violated(describe("|A_1|=", ca, " |T_1|=", ct, " |C_1|=", cc));
      return Verdict::ok();
    });
  });
}

TheoremReport check_parity_runs(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  if (lo < 1) throw ConfigError("parity-runs: lo must be >= 1");
  return run_range("parity-runs", ClaimKind::Theorem, lo, hi, opts, [](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& start) {
      const bool even = num::is_even(start);
      // Even n: halvings of C(n). Odd n: odd-rule steps of T(n).
      const Exponent expected =
          even ? ruler(num::shr(start, 1)) : ruler(num::shr(num::add(start, T{1}), 1));
      Exponent run = 0;
      T current = start;
      while (num::is_even(current) == even) {
        current = even ? collatz_step(current) : terras_step(current);
        ++run;
      }
      if (run != expected)
        return Verdict::violated(describe("run length ", run, " but ruler gives ", expected));
      const auto flip = parity_flip(start, GParams::collatz());
      if (flip.output != current || flip.run_length != run)
        return Verdict::violated(describe("closed form gives ", flip.output, " after ",
                                          flip.run_length, ", iteration gives ", current,
                                          " after ", run));
      return Verdict::ok();
    });
  });
}

TheoremReport check_closed_forms(std::uint64_t lo, std::uint64_t hi,
                                 std::span<const std::pair<std::uint64_t, std::uint64_t>> ab,
                                 const VerifyOptions& opts) {
  if (lo < 1) throw ConfigError("closed-forms: lo must be >= 1");
  std::vector<GParams> params;
  for (const auto& [a, b] : ab) params.push_back(GParams::make(a, b));
  auto report = run_range("closed-forms", ClaimKind::Theorem, lo, hi, opts, [&](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& g0) {
      for (const auto& p : params) {
        const auto flip = parity_flip(g0, p);
        const bool even = num::is_even(g0);
        const Exponent by_ruler = even ? ruler(num::shr(g0, 1))
                                       : ruler(num::shr(num::add(g0, T(p.c)), 1));
        if (flip.run_length != by_ruler)
          return Verdict::violated(describe("a=", p.a, " b=", p.b, ": run length ",
                                            flip.run_length, " != ruler form ", by_ruler));
        T current = g0;
        for (Exponent s = 0; s < flip.run_length; ++s) {
          if (num::is_even(current) != even)
            return Verdict::violated(describe("a=", p.a, " b=", p.b, ": parity flipped early"));
          current = g_step(current, p);
        }
        if (current != flip.output || num::is_even(current) == even)
          return Verdict::violated(describe("a=", p.a, " b=", p.b, ": iterate ", current,
                                            " != closed form ", flip.output));
      }
      return Verdict::ok();
    });
  });
  std::string pairs;
  for (const auto& p : params) pairs += describe(" (", p.a, ",", p.b, ")");
  report.notes.push_back("(a,b) pairs:" + pairs);
  return report;
}

TheoremReport check_index_forms(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  return run_range("index-forms", ClaimKind::Theorem, lo, hi, opts, [](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& i) {
      const T even = even_from_index(i);
      const T odd = odd_from_index(i);
      const T n1 = num::add(i, T{1});
      if (even != num::shl(n1, 1)) return Verdict::violated(describe("e_n = ", even));
      if (odd != num::add(num::shl(i, 1), T{1})) return Verdict::violated(describe("o_n = ", odd));
      return Verdict::ok();
    });
  });
}

TheoremReport check_ruler_identities(std::uint64_t lo, std::uint64_t hi,
                                     const VerifyOptions& opts) {
  return run_range("ruler-identities", ClaimKind::Theorem, lo, hi, opts, [](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& i) {
      const Exponent q = shifted_ruler_q(i);
      const Exponent from_even = ruler(num::shr(even_from_index(i), 1));
      const Exponent from_odd = ruler(num::shr(num::add(odd_from_index(i), T{1}), 1));
      if (from_even != q || from_odd != q)
        return Verdict::violated(describe("q=", q, " r(e/2)=", from_even, " r((o+1)/2)=", from_odd));
      return Verdict::ok();
    });
  });
}

TheoremReport check_u_residues(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  const TraceLimits limits{opts.budget};
  std::uint64_t fourteen = 0;
  auto report = run_range(
      "u-residues", ClaimKind::Theorem, lo, hi, opts,
      [&](std::uint64_t n) {
        if (n < 2 || n % 2 != 0) return Verdict::skip();
        return promote(n, [&]<Integer T>(const T& u) {
          const auto tr = trace_in<T>(MapKind::Emapt, u, limits);
          if (tr.elements.size() >= 2) {
            const T& u1 = tr.elements[1];
            if (num::mod(u1, 6) != 2)
              return Verdict::violated(describe("successor ", u1, " is not 6m+2"));
          } else if (u != T{2}) {
            return Verdict::inconclusive();
          }
          Verdict v = check_tail_residues(tr);
          v.flagged = tr.elements.size() >= 2 && num::mod(tr.elements[1], 18) == 14;
          return v;
        });
      },
      &fourteen);
  report.notes.push_back("18m+2 / 18m+8 is asserted from u_2 on; u_1 is only 6m+2");
  report.notes.push_back(describe("starts with u_1 = 14 mod 18: ", fourteen));
  return report;
}

TheoremReport check_u_residues_odd_start(std::uint64_t lo, std::uint64_t hi,
                                         const VerifyOptions& opts) {
  const TraceLimits limits{opts.budget};
  auto report = run_range("u-residues-odd-start", ClaimKind::Observation, lo, hi, opts,
                          [&](std::uint64_t n) {
    if (n % 2 == 0) return Verdict::skip();
    return promote(n, [&]<Integer T>(const T& u0) {
      // The ruler form of the even-only map evaluated at an odd argument:
      // v = 2u/2^{r(u)} = u, then (v+1)(3/2)^{r(v+1)-1} - 1.
      const T v1 = num::add(u0, T{1});
      const Exponent e = ruler(v1) - 1;
      const T u1 = num::sub(num::mul(num::shr(v1, e), num::power<T>(3, e)), T{1});
      auto tr = trace_in<T>(MapKind::Emapt, u1, limits);
      tr.elements.insert(tr.elements.begin(), u0);
      tr.start = u0;
      return check_tail_residues(tr);
    });
  });
  report.notes.push_back("stated tentatively for odd u_0; mismatches are reported, not failures");
  return report;
}

TheoremReport check_x_residues(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  return run_range("x-residues", ClaimKind::Theorem, lo, hi, opts, [](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& x) {
      const T next = x_step(x);
      const auto r = num::mod(next, 3);
      if (r == 2) return Verdict::violated(describe("x_step = ", next, " is 2 mod 3"));
      return Verdict::ok();
    });
  });
}

TheoremReport check_p3n(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  return run_range("p3n", ClaimKind::Theorem, lo, hi, opts, [](std::uint64_t n) {
    return promote(n, [&]<Integer T>(const T& k) {
      const T p = interleave_p(num::mul(k, T{3}));
      if (num::mod(p, 3) == 1) return Verdict::violated(describe("p(3n) = ", p, " is 1 mod 3"));
      return Verdict::ok();
    });
  });
}

TheoremReport check_dual_forms(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  return run_range("dual-forms", ClaimKind::Theorem, lo, hi, opts, [](std::uint64_t n) {
    if (n == 0) return Verdict::skip();
    return promote(n, [&]<Integer T>(const T& u) {
      const T next = apt_step(u);
      const T twice = apt_step(next);
      if (num::is_even(u)) {
        const T pq = emapt_step_pq(u);
        const T by_ruler = emapt_step_ruler(u);
        if (pq != by_ruler)
          return Verdict::violated(describe("index form ", pq, " != ruler form ", by_ruler));
        if (pq != twice)
          return Verdict::violated(describe("even-only step ", pq, " != two APT steps ", twice));
        const auto pair = mapt_even_step(num::shr(num::sub(u, T{2}), 1));
        if (pair.from != u || pair.to != next)
          return Verdict::violated(describe("even index map gives ", pair.from, " -> ", pair.to));
      } else {
        const T odd_only = omapt_step(u);
        if (odd_only != twice)
          return Verdict::violated(describe("odd-only step ", odd_only, " != two APT steps ", twice));
        const auto pair = mapt_odd_step(num::shr(u, 1));
        if (pair.from != u || pair.to != next)
          return Verdict::violated(describe("odd index map gives ", pair.from, " -> ", pair.to));
      }
      return Verdict::ok();
    });
  });
}

TheoremReport check_linear_and_fixed_point(std::uint64_t lo, std::uint64_t hi,
                                           const VerifyOptions& opts) {
  const TraceLimits limits{opts.budget};
  return run_range("linear-fixed-point", ClaimKind::Theorem, lo, hi, opts, [&](std::uint64_t n) {
    if (n < 2 || n % 2 != 0) return Verdict::skip();
    const Trace tr = trace(MapKind::Emapt, to_natural(n), limits);
    for (std::size_t k = 0; k + 1 < tr.elements.size(); ++k) {
      const Natural& u = tr.elements[k];
      const Natural& next = tr.elements[k + 1];
      const auto [alpha, beta] = forward_exponents(u);
      const Natural v = u_to_v(u);
      const Natural three_a = num::power<Natural>(3, alpha);
      const Natural two_a = num::power<Natural>(2, alpha);
      const Natural lhs = num::shl(next, alpha + beta);
      const Natural rhs = three_a * u + num::shl(Natural(three_a - two_a), beta);
      if (lhs != rhs)
        return Verdict::violated(describe("linear relation fails at ", u, " -> ", next));
      if ((next + 1) * two_a != (v + 1) * three_a)
        return Verdict::violated(describe("fixed-point relation fails at ", u, " -> ", next));
      if (reverse_affine_step(next, alpha, beta) != Rational(u))
        return Verdict::violated(describe("reverse map of ", next, " is not ", u));
    }
    if (tr.outcome != Outcome::ReachedTarget) return Verdict::inconclusive();
    return Verdict::ok();
  });
}

TheoremReport check_conjecture_apt(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  if (lo < 1) throw ConfigError("conjecture-apt: lo must be >= 1");
  auto report = run_range("conjecture-apt", ClaimKind::Conjecture, lo, hi, opts,
                          [&](std::uint64_t n) {
    const auto steps = stopping_time(MapKind::Apt, to_natural(n), opts.budget);
    return steps ? Verdict::ok() : Verdict::inconclusive();
  });
  report.notes.emplace_back(kFinitePrefixNote);
  return report;
}

TheoremReport check_conjecture_u(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& opts) {
  auto report = run_range("conjecture-u", ClaimKind::Conjecture, lo, hi, opts,
                          [&](std::uint64_t n) {
    const Natural u = to_natural(n) * 6 + 2;
    const auto steps = stopping_time(MapKind::Emapt, u, opts.budget);
    return steps ? Verdict::ok() : Verdict::inconclusive();
  });
  report.notes.emplace_back("inputs are indices n; the trace starts at u = 6n + 2");
  report.notes.emplace_back(kFinitePrefixNote);
  return report;
}

std::vector<TheoremReport> check_conjectures(std::uint64_t lo, std::uint64_t hi,
                                             const VerifyOptions& opts) {
  return {check_conjecture_apt(std::max<std::uint64_t>(lo, 1), hi, opts),
          check_conjecture_u(lo, hi, opts)};
}

OeisSequence parse_oeis_sequence(std::string_view text) {
  if (text == "A001511") return OeisSequence::A001511;
  if (text == "A025480") return OeisSequence::A025480;
  if (text == "A007310") return OeisSequence::A007310;
  throw ConfigError("unsupported OEIS sequence '" + std::string(text) +
                    "' (expected A001511, A025480 or A007310)");
}

std::string_view oeis_name(OeisSequence seq) {
  switch (seq) {
    case OeisSequence::A001511: return "A001511";
    case OeisSequence::A025480: return "A025480";
    case OeisSequence::A007310: return "A007310";
  }
  return "unknown";
}

std::uint64_t oeis_offset(OeisSequence seq) {
  return seq == OeisSequence::A025480 ? 0 : 1;
}

TheoremReport check_oeis(std::span<const BFileEntry> entries, OeisSequence seq,
                         std::uint64_t count, const VerifyOptions& opts) {
  const std::string name(oeis_name(seq));
  const std::uint64_t offset = oeis_offset(seq);
  if (count == 0) throw ConfigError("oeis-check: count must be >= 1");
  if (entries.size() < count)
    throw ConfigError(describe(name, ": b-file has ", entries.size(), " entries, need ", count));
  for (std::uint64_t k = 0; k < count; ++k)
    if (entries[k].index != to_natural(offset + k))
      throw ConfigError(describe(name, ": expected index ", offset + k, " at entry ", k,
                                 ", found ", entries[k].index, " (offset ", offset, ")"));

  auto generate = [seq](std::uint64_t index) -> Natural {
    switch (seq) {
      case OeisSequence::A001511: return to_natural(ruler(index));
      case OeisSequence::A025480: return to_natural(interleave_p(index));
      case OeisSequence::A007310: return w_candidate(index);
    }
    throw ConfigError("unknown sequence");
  };
  auto report = run_range("oeis-" + name, ClaimKind::Theorem, offset, offset + count - 1, opts,
                          [&](std::uint64_t index) {
    const Natural expected = entries[index - offset].value;
    const Natural got = generate(index);
    if (got != expected)
      return Verdict::violated(describe("b-file has ", expected, ", generator gives ", got));
    return Verdict::ok();
  });
  report.notes.push_back(describe("offset ", offset));
  return report;
}

namespace {
constexpr std::array<CheckerInfo, 13> kCheckers{{
    {"covering", "A(n) < T(n) < C(n) as ordered subsequences, cardinality chain", true},
    {"parity-runs", "same-parity run lengths equal the ruler exponents", false},
    {"closed-forms", "parity-flip closed forms vs iterated g_step, (a,b) = (3,1),(5,3),(7,5)", false},
    {"index-forms", "even_from_index(n) = 2(n+1), odd_from_index(n) = 2n+1", false},
    {"ruler-identities", "r(e_n/2) = q_n and r((o_n+1)/2) = q_n", false},
    {"u-residues", "even-only successors are 6m+2; later elements 18m+2 or 18m+8", true},
    {"u-residues-odd-start", "odd u_0: elements beyond u_1 are 18m+2 or 18m+8 (observation)", true},
    {"x-residues", "x_step(x) is 0 or 1 mod 3", false},
    {"p3n", "p(3n) is 0 or 2 mod 3", false},
    {"dual-forms", "index and ruler forms of the condensed maps agree with APT steps", false},
    {"linear-fixed-point", "linear system, fixed-point relation and exact reverse map on U pairs", true},
    {"conjecture-apt", "1 in A(n) (reported, not asserted)", true},
    {"conjecture-u", "2 in U(6n+2) (reported, not asserted)", true},
}};
}  // namespace

std::span<const CheckerInfo> checkers() { return kCheckers; }

TheoremReport run_checker(std::string_view id, std::uint64_t lo, std::uint64_t hi,
                          const VerifyOptions& opts) {
  if (id == "covering") return check_covering(lo, hi, opts);
  if (id == "parity-runs") return check_parity_runs(lo, hi, opts);
  if (id == "closed-forms") return check_closed_forms(lo, hi, kClosedFormPairs, opts);
  if (id == "index-forms") return check_index_forms(lo, hi, opts);
  if (id == "ruler-identities") return check_ruler_identities(lo, hi, opts);
  if (id == "u-residues") return check_u_residues(lo, hi, opts);
  if (id == "u-residues-odd-start") return check_u_residues_odd_start(lo, hi, opts);
  if (id == "x-residues") return check_x_residues(lo, hi, opts);
  if (id == "p3n") return check_p3n(lo, hi, opts);
  if (id == "dual-forms") return check_dual_forms(lo, hi, opts);
  if (id == "linear-fixed-point") return check_linear_and_fixed_point(lo, hi, opts);
  if (id == "conjecture-apt") return check_conjecture_apt(lo, hi, opts);
  if (id == "conjecture-u") return check_conjecture_u(lo, hi, opts);
  throw ConfigError("unknown theorem id '" + std::string(id) + "'");
}

}  // namespace collatz
