#pragma once

#include <cstdint>

// Default budgets, range caps and report limits. Everything range- or
// budget-parameterized reads its default from here.
namespace collatz::defaults {

inline constexpr std::uint64_t kTraceBudget = 100'000;
/// Generalized traces stop (DomainStop) once an element exceeds 2^kMagnitudeBits.
inline constexpr std::uint64_t kMagnitudeBits = 4096;
inline constexpr std::uint64_t kViolationCap = 32;
inline constexpr unsigned kWorkers = 1;
/// Inputs per work unit for range checkers; fixed so merging never depends on worker count.
inline constexpr std::uint64_t kChunkSize = 4096;

inline constexpr std::uint64_t kCycleStepBudget = 1'000;
inline constexpr std::uint64_t kTreeCandidates = 1'000;
inline constexpr std::uint64_t kTreeDepth = 6;
inline constexpr std::uint64_t kSteinerBound = 20;

}  // namespace collatz::defaults
