#include "collatz/sequences.hpp"

#include <array>
#include <string>

#include "collatz/parallel.hpp"

namespace collatz {

GParams GParams::make(std::uint64_t a, std::uint64_t b) {
  if (a < 3 || a % 2 == 0) throw ConfigError("a must be an odd integer >= 3");
  if (b < 1 || b % 2 == 0) throw ConfigError("b must be an odd positive integer");
  if (b % (a - 2) != 0) throw ConfigError("b must be divisible by a - 2");
  return {a, b, b / (a - 2)};
}

namespace {

constexpr std::array<char, 8> kLetters{'C', 'T', 'G', 'H', 'A', 'U', 'V', 'X'};

template <class Out, class Fn>
Out with_promotion(const Natural& start, Fn fn) {
  if (num::bit_length(start) <= 64) {
    try {
      return fn(to_u64(start));
    } catch (const OverflowError&) {
      // fall through to the unbounded path
    }
  }
  return fn(start);
}

Trace widen(const BasicTrace<std::uint64_t>& narrow) {
  Trace out{narrow.kind, to_natural(narrow.start), to_natural(narrow.target), {},
            narrow.outcome, narrow.stopping_time};
  out.elements.reserve(narrow.elements.size());
  for (const auto e : narrow.elements) out.elements.push_back(to_natural(e));
  return out;
}

}  // namespace

char kind_letter(MapKind kind) {
  return kLetters.at(static_cast<std::size_t>(kind));
}

MapKind parse_map_kind(std::string_view text) {
  if (text.size() == 1) {
    for (std::size_t i = 0; i < kLetters.size(); ++i)
      if (kLetters[i] == text[0]) return static_cast<MapKind>(i);
  }
  throw ConfigError("unknown map kind '" + std::string(text) + "' (expected one of C T G H A U V X)");
}

std::uint64_t default_target(MapKind kind) {
  switch (kind) {
    case MapKind::Emapt: return 2;
    case MapKind::Index: return 0;
    default: return 1;
  }
}

std::string_view outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::ReachedTarget: return "reached_target";
    case Outcome::BudgetExhausted: return "budget_exhausted";
    case Outcome::DomainStop: return "domain_stop";
  }
  return "unknown";
}

void validate_trace_start(MapKind kind, const Natural& start, const TraceLimits& limits) {
  if (limits.budget == 0) throw ConfigError("budget must be >= 1");
  switch (kind) {
    case MapKind::Index:
      return;
    case MapKind::Emapt:
      if (num::is_zero(start) || num::is_odd(start))
        throw DomainError("U traces start from an even integer >= 2");
      return;
    case MapKind::Omapt:
      if (num::is_even(start)) throw DomainError("V traces start from an odd integer");
      return;
    default:
      if (num::is_zero(start))
        throw DomainError(std::string(1, kind_letter(kind)) + " traces start from an integer >= 1");
  }
}

Trace trace(MapKind kind, const Natural& start, const TraceLimits& limits) {
  validate_trace_start(kind, start, limits);
  return with_promotion<Trace>(start, [&](const auto& s) -> Trace {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::same_as<T, std::uint64_t>) {
      return widen(trace_in<std::uint64_t>(kind, s, limits));
    } else {
      return trace_in<Natural>(kind, s, limits);
    }
  });
}

std::optional<std::uint64_t> stopping_time(MapKind kind, const Natural& start,
                                           std::uint64_t budget) {
  validate_trace_start(kind, start, TraceLimits{budget});
  const std::uint64_t target = default_target(kind);
  return with_promotion<std::optional<std::uint64_t>>(start, [&](const auto& s) {
    return stopping_time_in(kind, s, target, budget);
  });
}

std::vector<StatsRow> stopping_stats(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget,
                                     unsigned workers) {
  if (lo < 1 || hi < lo) throw ConfigError("stats range must satisfy 1 <= lo <= hi");
  const auto chunks = map_chunks(lo, hi, workers, [budget](std::uint64_t first, std::uint64_t last) {
    std::vector<StatsRow> rows;
    rows.reserve(last - first + 1);
    for (std::uint64_t n = first;; ++n) {
      const Natural start = to_natural(n);
      auto card = [&](MapKind kind) -> std::optional<std::uint64_t> {
        const auto steps = stopping_time(kind, start, budget);
        if (!steps) return std::nullopt;
        return *steps + 1;
      };
      rows.push_back({n, card(MapKind::Collatz), card(MapKind::Terras), card(MapKind::Apt)});
      if (n == last) break;
    }
    return rows;
  });
  std::vector<StatsRow> out;
  for (const auto& chunk : chunks) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

}  // namespace collatz
