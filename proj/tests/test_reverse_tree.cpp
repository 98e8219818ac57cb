#include <doctest.h>

#include <random>

#include "collatz/reverse_tree.hpp"
#include "collatz/sequences.hpp"
#include "oracles.hpp"

using namespace collatz;
using u64 = std::uint64_t;

namespace {

std::vector<Natural> nats(std::initializer_list<u64> values) {
  std::vector<Natural> out;
  for (u64 v : values) out.push_back(to_natural(v));
  return out;
}

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// M = prod s_i, B = sum_i b_i prod_{j > i} s_j, written out directly.
std::pair<Rational, Rational> nested_sums(const std::vector<AffineStep>& steps) {
  Rational m(1);
  for (const auto& s : steps) m *= s.slope;
  Rational b(0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Rational term = steps[i].intercept;
    for (std::size_t j = i + 1; j < steps.size(); ++j) term *= steps[j].slope;
    b += term;
  }
  return {m, b};
}

}  // namespace

TEST_CASE("affine steps") {
  const auto one = AffineStep::make(1, 1);
  CHECK(one.slope == q(4, 3));
  CHECK(one.intercept == q(-2, 3));
  CHECK(reverse_affine_step(Natural{2}, 1, 1) == 2);
  CHECK(reverse_affine_step(Natural{8}, 1, 2) == 20);
  CHECK(reverse_affine_step(Natural{2}, 1, 3) == 8);
  CHECK_THROWS_AS(AffineStep::make(0, 1), DomainError);
  CHECK_THROWS_AS(AffineStep::make(1, 0), DomainError);

  CHECK(forward_exponents(Natural{20}) == std::pair<Exponent, Exponent>{1, 2});
  CHECK_THROWS_AS(forward_exponents(Natural{7}), DomainError);
}

TEST_CASE("reverse step undoes the even-only map") {
  for (u64 u = 2; u <= 100'000; u += 2) {
    const auto [alpha, beta] = forward_exponents(to_natural(u));
    const Natural next = to_natural(emapt_step_pq(u));
    REQUIRE(reverse_affine_step(next, alpha, beta) == Rational(to_natural(u)));
  }
}

TEST_CASE("compose_path") {
  const std::vector<AffineStep> single{AffineStep::make(1, 1)};
  const auto c1 = compose_path(single);
  CHECK(c1.M == q(4, 3));
  CHECK(c1.B == q(-2, 3));
  CHECK(c1.length == 1);

  const std::vector<AffineStep> two{AffineStep::make(1, 3), AffineStep::make(1, 2)};
  CHECK(compose_path(two).apply(Rational(2)) == 20);

  CHECK_THROWS_AS(compose_path({}), ConfigError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<AffineStep> steps;
    const std::size_t length = 1 + rng() % 64;
    for (std::size_t i = 0; i < length; ++i)
      steps.push_back(AffineStep::make(1 + rng() % 6, 1 + rng() % 6));
    const auto composed = compose_path(steps);
    const auto [m, b] = nested_sums(steps);
    REQUIRE(composed.M == m);
    REQUIRE(composed.B == b);
    REQUIRE(composed.length == length);
    // Composition equals step-by-step application.
    Rational z(static_cast<long>(rng() % 1000));
    const Rational z0 = z;
    for (const auto& s : steps) z = s.apply(z);
    REQUIRE(composed.apply(z0) == z);
  }
}

TEST_CASE("composition along real even-only traces") {
  for (u64 u0 = 2; u0 <= 3000; u0 += 6) {
    const auto t = trace(MapKind::Emapt, to_natural(u0));
    REQUIRE(t.outcome == Outcome::ReachedTarget);
    if (t.elements.size() < 2) continue;
    // Reverse steps, last forward step first, lead from 2 back to u0.
    std::vector<AffineStep> steps;
    for (std::size_t i = t.elements.size() - 1; i-- > 0;) {
      const auto [a, b] = forward_exponents(t.elements[i]);
      steps.push_back(AffineStep::make(a, b));
    }
    REQUIRE(compose_path(steps).apply(Rational(2)) == Rational(to_natural(u0)));
  }
}

TEST_CASE("steiner_search") {
  const std::vector<SteinerSolution> expected{{1, 1, Natural{2}}};
  CHECK(steiner_search(1, 1) == expected);
  CHECK(steiner_search(5, 5) == expected);
  CHECK(steiner_search(20, 20) == expected);
  CHECK_THROWS_AS(steiner_search(0, 4), ConfigError);

  // Brute force over the grid with exact rationals.
  for (Exponent a = 1; a <= 12; ++a)
    for (Exponent b = 1; b <= 12; ++b) {
      const AffineStep s = AffineStep::make(a, b);
      if (s.slope == 1) continue;
      const Rational fixed = s.intercept / (1 - s.slope);
      const bool integral = fixed.get_den() == 1 && sgn(fixed) > 0;
      REQUIRE(integral == (a == 1 && b == 1));
    }
}

TEST_CASE("w and z maps") {
  CHECK(z_from_w(Natural{5}) == 8);
  CHECK(z_from_w(Natural{7}) == 26);
  CHECK(z_from_w(Natural{1}) == 2);
  CHECK(w_from_z(Natural{8}) == 1);
  CHECK(w_from_z(Natural{26}) == 13);
  CHECK(w_from_z(Natural{2}) == 1);
  CHECK(w_forward(Natural{7}) == 13);
  CHECK(w_forward(Natural{13}) == 5);
  CHECK(w_forward(Natural{35}) == 5);
  CHECK_THROWS_AS(z_from_w(Natural{9}), DomainError);
  CHECK_THROWS_AS(z_from_w(Natural{4}), DomainError);
  CHECK_THROWS_AS(w_from_z(Natural{5}), DomainError);
  CHECK_THROWS_AS(w_from_z(Natural{0}), DomainError);

  CHECK(w_candidate(1) == 1);
  CHECK(w_candidate(4) == 11);
  CHECK_THROWS_AS(w_candidate(0), DomainError);

  const auto sieve = oracle::sieve_w(100'000);
  for (u64 m = 1; m <= sieve.size(); ++m) {
    const Natural w = w_candidate(m);
    REQUIRE(w == sieve[m - 1]);
    // The odd part of z is again a valid w, and z = w_forward(w) 2^k.
    const Natural z = z_from_w(w);
    const Natural parent = w_from_z(z);
    REQUIRE(num::is_odd(parent));
    REQUIRE(num::mod(parent, 3) != 0);
    REQUIRE(num::shl(parent, ruler(z) - 1) == z);
    // On w the forward map is the odd-only map; z is the APT image of w.
    REQUIRE(z == apt_step(w));
    REQUIRE(w_forward(w) == omapt_step(w));
  }
}

TEST_CASE("first twenty candidates and their images") {
  std::vector<Natural> ws;
  std::vector<Natural> images;
  for (u64 m = 1; m <= 20; ++m) {
    ws.push_back(w_candidate(m));
    images.push_back(w_forward(ws.back()));
  }
  CHECK(ws == nats({1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49, 53, 55, 59}));
  CHECK(images ==
        nats({1, 1, 13, 13, 5, 13, 11, 5, 19, 11, 121, 5, 7, 31, 49, 121, 37, 5, 47, 67}));
}

TEST_CASE("same_w_shift") {
  CHECK(same_w_shift(Natural{8}, Natural{2}) == 2);
  CHECK(same_w_shift(Natural{2}, Natural{8}) == -2);
  CHECK(same_w_shift(Natural{26}, Natural{26}) == 0);
  CHECK_FALSE(same_w_shift(Natural{8}, Natural{26}).has_value());
  for (u64 z = 2; z <= 2000; z += 2)
    for (u64 k = 0; k <= 5; ++k) {
      const Natural zm = num::shl(to_natural(z), k);
      REQUIRE(same_w_shift(zm, to_natural(z)) == static_cast<std::int64_t>(k));
    }
}

TEST_CASE("tree at twenty candidates") {
  const WZTree tree = build_tree(20, 6);
  CHECK(tree.root_self_loop);
  CHECK(tree.root == WZNode{Natural{1}, Natural{2}});
  CHECK(tree.children_of(Natural{1}) == nats({5}));
  CHECK(tree.children_of(Natural{5}) == nats({13, 23, 35, 53}));
  CHECK(tree.children_of(Natural{13}) == nats({7, 11, 17}));
  CHECK(tree.children_of(Natural{11}) == nats({19, 29}));
  CHECK(tree.children_of(Natural{53}).empty());
  CHECK(tree.nodes.size() == 15);
  CHECK(tree.depth.at(Natural{43}) == 6);
  CHECK(tree.nodes.at(Natural{7}).z == 26);

  std::vector<Natural> orphans;
  for (const auto& n : tree.orphans) orphans.push_back(n.w);
  CHECK(orphans == nats({31, 47, 59}));
  std::vector<Natural> detached;
  for (const auto& n : tree.detached) detached.push_back(n.w);
  CHECK(detached == nats({41, 55}));

  // Every edge is a forward step.
  for (const auto& [parent, kids] : tree.children)
    for (const auto& kid : kids) REQUIRE(w_forward(kid) == parent);

  const WZTree shallow = build_tree(20, 2);
  CHECK(shallow.nodes.size() == 6);
  CHECK(shallow.children_of(Natural{13}).empty());
}

TEST_CASE("tree edge cases and determinism") {
  const WZTree tiny = build_tree(1, 6);
  CHECK(tiny.root_self_loop);
  CHECK(tiny.nodes.size() == 1);
  CHECK(tiny.children.empty());
  CHECK_THROWS_AS(build_tree(0, 3), ConfigError);
  CHECK_THROWS_AS(build_tree(5, 0), ConfigError);

  const WZTree one = build_tree(30'000, 12, 1);
  const WZTree many = build_tree(30'000, 12, 8);
  CHECK(one.children == many.children);
  CHECK(one.depth == many.depth);
  CHECK(one.orphans == many.orphans);
  CHECK(one.detached == many.detached);
}

TEST_CASE("cycle scan") {
  const CycleReport report = cycle_scan(1000, 1000);
  REQUIRE(report.cycles.size() == 1);
  CHECK(report.cycles[0] == nats({1}));
  CHECK(report.reached_root == 1000);
  CHECK(report.inconclusive.empty());

  const CycleReport starved = cycle_scan(50, 1);
  CHECK(starved.reached_root < 50);
  CHECK(starved.reached_root + starved.inconclusive.size() == 50);

  const CycleReport parallel = cycle_scan(20'000, 1000, 8);
  CHECK(parallel.cycles == cycle_scan(20'000, 1000, 1).cycles);
  CHECK(parallel.reached_root == 20'000);
}

TEST_CASE("multiplicity") {
  const auto five = multiplicity(Natural{5}, 20);
  CHECK(five.count == 4);
  CHECK(five.preimages == nats({13, 23, 35, 53}));
  CHECK(multiplicity(Natural{13}, 20).count == 3);
  const auto root = multiplicity(Natural{1}, 2);
  CHECK(root.count == 2);
  CHECK(root.preimages == nats({1, 5}));
  CHECK_THROWS_AS(multiplicity(Natural{9}, 20), DomainError);
}
