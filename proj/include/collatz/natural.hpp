#pragma once

#include <gmpxx.h>

#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace collatz {

/// Unbounded non-negative integer. Every sequence element lives here.
using Natural = mpz_class;
/// Exact signed fraction, always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Valuations and other small exponents. Any Natural that fits in memory has
/// a 2-adic valuation that fits in 64 bits.
using Exponent = std::uint64_t;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised by the fixed-width instantiations when a result does not fit.
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// The two scalar types every integer map is instantiated for.
template <class T>
concept Integer = std::same_as<T, std::uint64_t> || std::same_as<T, Natural>;

namespace num {

inline bool is_zero(std::uint64_t n) { return n == 0; }
inline bool is_zero(const Natural& n) { return sgn(n) == 0; }

inline bool is_odd(std::uint64_t n) { return (n & 1U) != 0; }
inline bool is_odd(const Natural& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

inline bool is_even(std::uint64_t n) { return !is_odd(n); }
inline bool is_even(const Natural& n) { return !is_odd(n); }

// 2-adic valuation, n > 0.
inline Exponent valuation2(std::uint64_t n) {
  return static_cast<Exponent>(std::countr_zero(n));
}
inline Exponent valuation2(const Natural& n) {
  return static_cast<Exponent>(mpz_scan1(n.get_mpz_t(), 0));
}

/// Count of trailing one bits.
inline Exponent trailing_ones(std::uint64_t n) {
  return static_cast<Exponent>(std::countr_one(n));
}
inline Exponent trailing_ones(const Natural& n) {
  return static_cast<Exponent>(mpz_scan0(n.get_mpz_t(), 0));
}

inline std::uint64_t shr(std::uint64_t n, Exponent k) { return k >= 64 ? 0 : n >> k; }
inline Natural shr(const Natural& n, Exponent k) {
  Natural out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

inline std::uint64_t shl(std::uint64_t n, Exponent k) {
  if (n == 0) return 0;
  if (k >= 64 || static_cast<Exponent>(std::countl_zero(n)) < k)
    throw OverflowError("shift exceeds 64 bits");
  return n << k;
}
inline Natural shl(const Natural& n, Exponent k) {
  Natural out;
  mpz_mul_2exp(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

inline std::uint64_t add(std::uint64_t x, std::uint64_t y) {
  std::uint64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw OverflowError("addition exceeds 64 bits");
  return out;
}
inline Natural add(const Natural& x, const Natural& y) { return x + y; }

inline std::uint64_t mul(std::uint64_t x, std::uint64_t y) {
  std::uint64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw OverflowError("product exceeds 64 bits");
  return out;
}
inline Natural mul(const Natural& x, const Natural& y) { return x * y; }

// Callers guarantee x >= y.
inline std::uint64_t sub(std::uint64_t x, std::uint64_t y) { return x - y; }
inline Natural sub(const Natural& x, const Natural& y) { return x - y; }

/// base^e in the scalar type T.
template <Integer T>
T power(std::uint64_t base, Exponent e) {
  if constexpr (std::same_as<T, Natural>) {
    Natural out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
  } else {
    std::uint64_t out = 1;
    for (Exponent i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }
}

template <Integer T>
std::uint64_t mod(const T& n, std::uint64_t m) {
  if constexpr (std::same_as<T, Natural>) {
    return mpz_fdiv_ui(n.get_mpz_t(), m);
  } else {
    return n % m;
  }
}

/// Magnitude in bits (0 for zero).
inline std::uint64_t bit_length(std::uint64_t n) { return 64 - std::countl_zero(n); }
inline std::uint64_t bit_length(const Natural& n) {
  return is_zero(n) ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace num

inline Natural to_natural(std::uint64_t n) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof n, 0, 0, &n);
  return out;
}
inline const Natural& to_natural(const Natural& n) { return n; }

/// Narrow to 64 bits or throw OverflowError.
inline std::uint64_t to_u64(const Natural& n) {
  if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
    throw OverflowError("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
  return out;
}

inline std::string to_string(const Natural& n) { return n.get_str(10); }
inline std::string to_string(std::uint64_t n) { return std::to_string(n); }
std::string to_string(const Rational& r);

/// Parses a non-negative decimal integer; throws ConfigError on anything else.
Natural parse_natural(std::string_view text);

}  // namespace collatz
