#pragma once

// Forward maps: Collatz, Terras, the generalized (a, b) family, the
// parity-alternating accelerations built on the ruler function, the even-only
// and odd-only condensations and the index sequence of the even one.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "collatz/arith.hpp"
#include "collatz/config.hpp"

namespace collatz {

/// Validated (a, b) for n -> (a n + b) / 2 on odd n, with c = b / (a - 2).
struct GParams {
  std::uint64_t a = 3;
  std::uint64_t b = 1;
  std::uint64_t c = 1;

  /// Throws ConfigError unless a >= 3 odd, b >= 1 odd and (a - 2) | b.
  static GParams make(std::uint64_t a, std::uint64_t b);
  static GParams collatz() { return {}; }

  friend bool operator==(const GParams&, const GParams&) = default;
};

template <Integer T>
T collatz_step(const T& n) {
  if (num::is_zero(n)) throw DomainError("collatz_step: argument must be >= 1");
  if (num::is_even(n)) return num::shr(n, 1);
  return num::add(num::mul(n, T{3}), T{1});
}

template <Integer T>
T terras_step(const T& n) {
  if (num::is_zero(n)) throw DomainError("terras_step: argument must be >= 1");
  if (num::is_even(n)) return num::shr(n, 1);
  return num::shr(num::add(num::mul(n, T{3}), T{1}), 1);
}

template <Integer T>
T g_step(const T& n, const GParams& params) {
  if (num::is_zero(n)) throw DomainError("g_step: argument must be >= 1");
  if (num::is_even(n)) return num::shr(n, 1);
  return num::shr(num::add(num::mul(n, T(params.a)), T(params.b)), 1);
}

/// One maximal run of same-parity g_steps collapsed into a closed form.
template <Integer T>
struct ParityFlip {
  T input;
  T output;
  Exponent run_length;  // mu for even input, nu for odd input
};

/// Even g0: g0 / 2^mu with mu = r(g0 / 2).
/// Odd g0:  (a/2)^nu (g0 + c) - c with nu = r((g0 + c) / 2).
template <Integer T>
ParityFlip<T> parity_flip(const T& g0, const GParams& params) {
  if (num::is_zero(g0)) throw DomainError("parity_flip: argument must be >= 1");
  if (num::is_even(g0)) {
    const Exponent mu = num::valuation2(g0);
    return {g0, num::shr(g0, mu), mu};
  }
  const T c{params.c};
  const T shifted = num::add(g0, c);
  const Exponent nu = num::valuation2(shifted);
  const T grown = num::mul(num::shr(shifted, nu), num::power<T>(params.a, nu));
  return {g0, num::sub(grown, c), nu};
}

template <Integer T>
T gapt_step(const T& n, const GParams& params) {
  return parity_flip(n, params).output;
}

/// gapt_step with (a, b, c) = (3, 1, 1). Always flips parity.
template <Integer T>
T apt_step(const T& n) {
  if (num::is_zero(n)) throw DomainError("apt_step: argument must be >= 1");
  if (num::is_even(n)) return num::shr(n, num::valuation2(n));
  const T n1 = num::add(n, T{1});
  const Exponent e = num::valuation2(n1);
  return num::sub(num::mul(num::shr(n1, e), num::power<T>(3, e)), T{1});
}

template <Integer T>
struct MaptPair {
  T from;
  T to;
  friend bool operator==(const MaptPair&, const MaptPair&) = default;
};

/// Index i names the even 2(i+1) = (2p_i + 1) 2^{q_i}; it maps to 2p_i + 1.
template <Integer T>
MaptPair<T> mapt_even_step(const T& i) {
  const auto [p, q] = index_tuple(i);
  const T odd = num::add(num::shl(p, 1), T{1});
  return {num::shl(odd, q), odd};
}

/// Index j names the odd 2j+1 = (2p_j + 1) 2^{q_j} - 1; it maps to (2p_j + 1) 3^{q_j} - 1.
template <Integer T>
MaptPair<T> mapt_odd_step(const T& j) {
  const auto [p, q] = index_tuple(j);
  const T odd = num::add(num::shl(p, 1), T{1});
  return {num::sub(num::shl(odd, q), T{1}),
          num::sub(num::mul(odd, num::power<T>(3, q)), T{1})};
}

namespace detail {
template <Integer T>
void require_even(const T& u, const char* what) {
  if (num::is_zero(u) || num::is_odd(u))
    throw DomainError(std::string(what) + ": argument must be even and >= 2");
}
template <Integer T>
void require_odd(const T& v, const char* what) {
  if (num::is_even(v)) throw DomainError(std::string(what) + ": argument must be odd");
}
}  // namespace detail

/// Even-only successor written with the index functions:
/// (2 p(p((u-2)/2)) + 1) 3^{q(p((u-2)/2))} - 1.
template <Integer T>
T emapt_step_pq(const T& u) {
  detail::require_even(u, "emapt_step_pq");
  const T outer = interleave_p(num::shr(num::sub(u, T{2}), 1));
  const T inner = interleave_p(outer);
  return num::sub(num::mul(num::add(num::shl(inner, 1), T{1}),
                           num::power<T>(3, shifted_ruler_q(outer))),
                  T{1});
}

/// Odd part v = 2u / 2^{r(u)}.
template <Integer T>
T u_to_v(const T& u) {
  detail::require_even(u, "u_to_v");
  return num::shr(u, num::valuation2(u));
}

/// The same successor written with the ruler function only:
/// (v + 1) (3/2)^{r(v+1) - 1} - 1 with v = u_to_v(u).
template <Integer T>
T emapt_step_ruler(const T& u) {
  const T v1 = num::add(u_to_v(u), T{1});
  const Exponent e = ruler(v1) - 1;
  return num::sub(num::mul(num::shr(v1, e), num::power<T>(3, e)), T{1});
}

/// Odd-only successor: 2 p(((2 p_j + 1) 3^{q_j} - 3) / 2) + 1 with j = (v - 1) / 2.
template <Integer T>
T omapt_step(const T& v) {
  detail::require_odd(v, "omapt_step");
  const T j = num::shr(v, 1);
  const auto [p, q] = index_tuple(j);
  const T grown = num::mul(num::add(num::shl(p, 1), T{1}), num::power<T>(3, q));
  const T k = num::shr(num::sub(grown, T{3}), 1);
  return num::add(num::shl(interleave_p(k), 1), T{1});
}

/// Index form of the even-only map on u = 6x + 2:
/// ((2 p(p(3x)) + 1) 3^{q(p(3x)) - 1} - 1) / 2.
template <Integer T>
T x_step(const T& x) {
  const T outer = interleave_p(num::mul(x, T{3}));
  const T inner = interleave_p(outer);
  const T grown = num::mul(num::add(num::shl(inner, 1), T{1}),
                           num::power<T>(3, shifted_ruler_q(outer) - 1));
  return num::shr(num::sub(grown, T{1}), 1);
}

// ---------------------------------------------------------------------------
// Traces

enum class MapKind : std::uint8_t {
  Collatz,      // C
  Terras,       // T
  Generalized,  // G
  Gapt,         // H
  Apt,          // A
  Emapt,        // U
  Omapt,        // V
  Index,        // X
};

char kind_letter(MapKind kind);
/// Accepts the single letters C, T, G, H, A, U, V, X.
MapKind parse_map_kind(std::string_view text);
/// 1 for C/T/G/H/A/V, 2 for U, 0 for X.
std::uint64_t default_target(MapKind kind);

enum class Outcome : std::uint8_t { ReachedTarget, BudgetExhausted, DomainStop };
std::string_view outcome_name(Outcome outcome);

struct TraceLimits {
  std::uint64_t budget = defaults::kTraceBudget;
  std::optional<std::uint64_t> target = std::nullopt;  // defaults to default_target(kind)
  GParams params = GParams::collatz();
  std::uint64_t magnitude_bits = defaults::kMagnitudeBits;
};

template <Integer T>
struct BasicTrace {
  MapKind kind;
  T start;
  T target;
  std::vector<T> elements;
  Outcome outcome = Outcome::BudgetExhausted;
  std::optional<std::uint64_t> stopping_time;
};

using Trace = BasicTrace<Natural>;

template <Integer T>
T step(MapKind kind, const T& n, const GParams& params) {
  switch (kind) {
    case MapKind::Collatz: return collatz_step(n);
    case MapKind::Terras: return terras_step(n);
    case MapKind::Generalized: return g_step(n, params);
    case MapKind::Gapt: return gapt_step(n, params);
    case MapKind::Apt: return apt_step(n);
    case MapKind::Emapt: return emapt_step_pq(n);
    case MapKind::Omapt: return omapt_step(n);
    case MapKind::Index: return x_step(n);
  }
  throw DomainError("unknown map kind");
}

/// Throws DomainError when start violates the kind's domain, ConfigError on a zero budget.
void validate_trace_start(MapKind kind, const Natural& start, const TraceLimits& limits);

namespace detail {
inline bool magnitude_capped(MapKind kind) {
  return kind == MapKind::Generalized || kind == MapKind::Gapt;
}
}  // namespace detail

/// Iterates the kind's map in scalar T until the target, the budget, or (for
/// the generalized kinds) the magnitude ceiling is hit. No validation.
template <Integer T>
BasicTrace<T> trace_in(MapKind kind, const T& start, const TraceLimits& limits) {
  const T target{limits.target.value_or(default_target(kind))};
  BasicTrace<T> out{kind, start, target, {start}, Outcome::BudgetExhausted, std::nullopt};
  T current = start;
  for (std::uint64_t steps = 0;; ++steps) {
    if (current == target) {
      out.outcome = Outcome::ReachedTarget;
      out.stopping_time = steps;
      return out;
    }
    if (detail::magnitude_capped(kind) && num::bit_length(current) > limits.magnitude_bits) {
      out.outcome = Outcome::DomainStop;
      return out;
    }
    if (steps == limits.budget) return out;
    current = step(kind, current, limits.params);
    out.elements.push_back(current);
  }
}

/// Validated trace; runs in 64 bits and promotes to Natural on overflow.
Trace trace(MapKind kind, const Natural& start, const TraceLimits& limits = {});

/// Steps to reach the target, or nullopt if the budget runs out first.
template <Integer T>
std::optional<std::uint64_t> stopping_time_in(MapKind kind, T current, std::uint64_t target_value,
                                              std::uint64_t budget,
                                              const GParams& params = GParams::collatz()) {
  const T target{target_value};
  for (std::uint64_t steps = 0; steps <= budget; ++steps) {
    if (current == target) return steps;
    if (steps == budget) break;
    current = step(kind, current, params);
  }
  return std::nullopt;
}

/// Same as stopping_time_in but starting from any Natural, promoting on overflow.
std::optional<std::uint64_t> stopping_time(MapKind kind, const Natural& start, std::uint64_t budget);

struct StatsRow {
  std::uint64_t n;
  // Cardinalities |C_1(n)|, |T_1(n)|, |A_1(n)|; absent when the budget ran out.
  std::optional<std::uint64_t> collatz;
  std::optional<std::uint64_t> terras;
  std::optional<std::uint64_t> apt;

  bool exhausted() const { return !collatz || !terras || !apt; }
  friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

/// One row per n in [lo, hi]. Output does not depend on the worker count.
std::vector<StatsRow> stopping_stats(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t budget = defaults::kTraceBudget,
                                     unsigned workers = 1);

}  // namespace collatz
