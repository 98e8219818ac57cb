#pragma once

// Test-only reference implementations. They follow the defining recursions
// and naive iterations literally and share no code with the library paths
// they check.

#include <cstdint>
#include <vector>

#include "collatz/natural.hpp"

namespace oracle {

using u64 = std::uint64_t;

// r(2n) = r(n) + 1, r(2n+1) = 1.
inline u64 ruler(u64 n) { return n % 2 == 1 ? 1 : ruler(n / 2) + 1; }

// p(0) = 0, p(2n) = n, p(2n+1) = p(n).
inline u64 p(u64 n) {
  if (n == 0) return 0;
  return n % 2 == 0 ? n / 2 : p(n / 2);
}

// q(0) = 1, q(2n) = 1, q(2n+1) = q(n) + 1.
inline u64 q(u64 n) {
  if (n == 0) return 1;
  return n % 2 == 0 ? 1 : q(n / 2) + 1;
}

inline u64 ipow(u64 base, u64 e) {
  u64 out = 1;
  while (e-- > 0) out *= base;
  return out;
}

inline u64 collatz(u64 n) { return n % 2 == 0 ? n / 2 : 3 * n + 1; }
inline u64 terras(u64 n) { return n % 2 == 0 ? n / 2 : (3 * n + 1) / 2; }
inline u64 g(u64 n, u64 a, u64 b) { return n % 2 == 0 ? n / 2 : (a * n + b) / 2; }

// One parity-alternating step obtained by running Terras steps until the parity changes.
inline u64 apt(u64 n) {
  const bool even = n % 2 == 0;
  do n = terras(n);
  while ((n % 2 == 0) == even);
  return n;
}

// Sequence until `target`, at most `budget` steps.
template <class Step>
std::vector<u64> orbit(u64 start, u64 target, u64 budget, Step step) {
  std::vector<u64> out{start};
  while (out.back() != target && out.size() <= budget) out.push_back(step(out.back()));
  return out;
}

// Odd numbers not divisible by three, by filtering.
inline std::vector<u64> sieve_w(u64 count) {
  std::vector<u64> out;
  for (u64 k = 1; out.size() < count; k += 2)
    if (k % 3 != 0) out.push_back(k);
  return out;
}

}  // namespace oracle
