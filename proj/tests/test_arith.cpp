#include <doctest.h>

#include <random>

#include "collatz/arith.hpp"
#include "oracles.hpp"

using namespace collatz;
using u64 = std::uint64_t;

namespace {

// Random Naturals of up to `bits` bits with a random run of trailing ones or zeros.
Natural random_natural(std::mt19937_64& rng, unsigned bits) {
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(rng());
  Natural n = gen.get_z_bits(bits);
  const unsigned tail = rng() % 80;
  n = (rng() % 2 == 0) ? Natural(n << tail) : Natural(((n << tail) + 1) * (Natural(1) << tail) - 1);
  return n;
}

}  // namespace

TEST_CASE("ruler") {
  CHECK(ruler(u64{1}) == 1);
  CHECK(ruler(u64{4}) == 3);
  CHECK(ruler(u64{20}) == 3);
  CHECK(ruler(Natural{20}) == 3);
  CHECK_THROWS_AS(ruler(u64{0}), DomainError);
  CHECK_THROWS_AS(ruler(Natural{0}), DomainError);

  for (u64 n = 1; n <= 100'000; ++n) {
    REQUIRE(ruler(n) == oracle::ruler(n));
    REQUIRE(ruler(2 * n) == ruler(n) + 1);
    REQUIRE(ruler(2 * n + 1) == 1);
  }
}

TEST_CASE("interleave_p and shifted_ruler_q") {
  CHECK(interleave_p(u64{0}) == 0);
  CHECK(interleave_p(u64{9}) == 2);
  CHECK(interleave_p(u64{2}) == 1);
  CHECK(shifted_ruler_q(u64{0}) == 1);
  CHECK(shifted_ruler_q(u64{3}) == 3);
  CHECK(shifted_ruler_q(u64{2}) == 1);
  CHECK(interleave_p(~u64{0}) == 0);
  CHECK(shifted_ruler_q(~u64{0}) == 65);

  for (u64 n = 0; n <= 100'000; ++n) {
    REQUIRE(interleave_p(n) == oracle::p(n));
    REQUIRE(shifted_ruler_q(n) == oracle::q(n));
    REQUIRE(shifted_ruler_q(n) == ruler(n + 1));
  }
}

TEST_CASE("even_from_index and odd_from_index") {
  CHECK(even_from_index(u64{0}) == 2);
  CHECK(even_from_index(u64{2}) == 6);
  CHECK(even_from_index(u64{5}) == 12);
  CHECK(odd_from_index(u64{0}) == 1);
  CHECK(odd_from_index(u64{2}) == 5);
  CHECK(odd_from_index(u64{5}) == 11);

  // 2(n + 1) does not fit in 64 bits here; the unbounded path does.
  const u64 big = ~u64{0} - 1;
  CHECK_THROWS_AS(even_from_index(big), OverflowError);
  CHECK(even_from_index(to_natural(big)) == 2 * (to_natural(big) + 1));
}

TEST_CASE("odd_shift_split") {
  CHECK(odd_shift_split(u64{1}) == OddShiftRep<u64>{0, 1});
  CHECK(odd_shift_split(u64{9}) == OddShiftRep<u64>{2, 1});
  CHECK(odd_shift_split(u64{7}) == OddShiftRep<u64>{0, 3});
  CHECK(odd_shift_split(u64{4}) == OddShiftRep<u64>{2, 0});
  CHECK_THROWS_AS(odd_shift_split(u64{0}), DomainError);

  for (u64 m = 1; m <= 100'000; ++m) {
    const auto rep = odd_shift_split(m);
    REQUIRE(rep.reconstruct() == m);
    REQUIRE(rep.j == ruler(m + 1) - 1);
  }
}

TEST_CASE("three_tuple") {
  // Values from the recursion oracle: p(p(m)) = k, q(p(m)) = l + 1.
  CHECK(three_tuple(u64{9}) == ThreeTuple<u64>{1, 1, 0});
  CHECK(three_tuple(u64{11}) == ThreeTuple<u64>{2, 0, 1});
  CHECK(three_tuple(u64{23}) == ThreeTuple<u64>{3, 0, 1});
  // Inner i = 0 (m = 2^j - 1) splits as (k, l) = (0, 0).
  CHECK(three_tuple(u64{7}) == ThreeTuple<u64>{3, 0, 0});
  CHECK(three_tuple(u64{1}) == ThreeTuple<u64>{1, 0, 0});
  CHECK_THROWS_AS(three_tuple(u64{0}), DomainError);

  for (u64 m = 1; m <= 100'000; ++m) {
    const auto t = three_tuple(m);
    REQUIRE(t.reconstruct() == m);
    REQUIRE(oracle::p(oracle::p(m)) == t.k);
    REQUIRE(oracle::q(oracle::p(m)) == t.l + 1);
  }
}

TEST_CASE("properties hold on large Naturals") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int trial = 0; trial < 2000; ++trial) {
    const Natural n = random_natural(rng, 1 + static_cast<unsigned>(rng() % 300)) + 1;
    REQUIRE(ruler(Natural(2 * n)) == ruler(n) + 1);
    REQUIRE(ruler(Natural(2 * n + 1)) == 1);
    REQUIRE(shifted_ruler_q(n) == ruler(Natural(n + 1)));
    REQUIRE(even_from_index(n) == 2 * (n + 1));
    REQUIRE(odd_from_index(n) == 2 * n + 1);
    // p(2n) = n and p(2n+1) = p(n)
    REQUIRE(interleave_p(Natural(2 * n)) == n);
    REQUIRE(interleave_p(Natural(2 * n + 1)) == interleave_p(n));
    const auto t = three_tuple(n);
    REQUIRE(t.reconstruct() == n);
    REQUIRE(interleave_p(interleave_p(n)) == t.k);
    REQUIRE(shifted_ruler_q(interleave_p(n)) == t.l + 1);
  }
}

TEST_CASE("64-bit and unbounded instantiations agree") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20000; ++trial) {
    const u64 n = (rng() >> (rng() % 64)) | 1U;
    const Natural big = to_natural(n);
    REQUIRE(ruler(n) == ruler(big));
    REQUIRE(to_natural(interleave_p(n)) == interleave_p(big));
    REQUIRE(shifted_ruler_q(n) == shifted_ruler_q(big));
  }
}
