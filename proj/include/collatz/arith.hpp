#pragma once

// Exact integer primitives shared by every map: the ruler function, the
// index functions p and q, and the two-adic tuple decompositions.
//
// Everything is a free function template over the scalar (std::uint64_t or
// Natural). The 64-bit instantiations throw OverflowError rather than wrap.

#include "collatz/natural.hpp"

namespace collatz {

/// r(n): exponent of the highest power of two dividing 2n, i.e. v2(n) + 1.
template <Integer T>
Exponent ruler(const T& n) {
  if (num::is_zero(n)) throw DomainError("ruler: argument must be >= 1");
  return num::valuation2(n) + 1;
}

/// p(0) = 0, p(2n) = n, p(2n+1) = p(n). Strips trailing ones, then halves.
template <Integer T>
T interleave_p(const T& n) {
  return num::shr(n, num::trailing_ones(n) + 1);
}

/// q(n) = r(n+1): one more than the number of trailing ones of n.
template <Integer T>
Exponent shifted_ruler_q(const T& n) {
  return num::trailing_ones(n) + 1;
}

template <Integer T>
struct IndexTuple {
  T p;
  Exponent q;  // >= 1
};

template <Integer T>
IndexTuple<T> index_tuple(const T& n) {
  return {interleave_p(n), shifted_ruler_q(n)};
}

/// (2 p(n) + 1) 2^q(n); equals 2(n+1).
template <Integer T>
T even_from_index(const T& n) {
  const auto [p, q] = index_tuple(n);
  return num::shl(num::add(num::shl(p, 1), T{1}), q);
}

/// (2 p(n) + 1) 2^q(n) - 1; equals 2n+1.
template <Integer T>
T odd_from_index(const T& n) {
  return num::sub(even_from_index(n), T{1});
}

/// m = (2i + 1) 2^j - 1.
template <Integer T>
struct OddShiftRep {
  T i;
  Exponent j;

  T reconstruct() const {
    return num::sub(num::shl(num::add(num::shl(i, 1), T{1}), j), T{1});
  }
  friend bool operator==(const OddShiftRep&, const OddShiftRep&) = default;
};

namespace detail {
// (i, j) with m + 1 = (2i + 1) 2^j; defined for every m >= 0.
template <Integer T>
OddShiftRep<T> split_odd_shift(const T& m) {
  const T m1 = num::add(m, T{1});
  const Exponent j = num::valuation2(m1);
  return {num::shr(m1, j + 1), j};
}
}  // namespace detail

template <Integer T>
OddShiftRep<T> odd_shift_split(const T& m) {
  if (num::is_zero(m)) throw DomainError("odd_shift_split: argument must be >= 1");
  return detail::split_odd_shift(m);
}

/// m = (2((2k+1) 2^l - 1) + 1) 2^j - 1, so that p(p(m)) = k and q(p(m)) = l + 1.
template <Integer T>
struct ThreeTuple {
  Exponent j;
  T k;
  Exponent l;

  T reconstruct() const {
    const T i = OddShiftRep<T>{k, l}.reconstruct();
    return OddShiftRep<T>{i, j}.reconstruct();
  }
  friend bool operator==(const ThreeTuple&, const ThreeTuple&) = default;
};

/// Splits m, then splits the inner i the same way. For i = 0 the inner split
/// is (k, l) = (0, 0), which still satisfies both identities.
template <Integer T>
ThreeTuple<T> three_tuple(const T& m) {
  const OddShiftRep<T> outer = odd_shift_split(m);
  const OddShiftRep<T> inner = detail::split_odd_shift(outer.i);
  return {outer.j, inner.i, inner.j};
}

}  // namespace collatz
