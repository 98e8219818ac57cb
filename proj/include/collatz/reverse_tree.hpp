#pragma once

// Reverse (z) form of the even-only map, exact affine path composition, the
// odd w values not divisible by three and a bounded enumeration of the tree
// they form under w -> w_forward(w).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

/// z -> slope z + intercept with slope = 2^{alpha+beta} / 3^alpha and
/// intercept = -2^beta (3^alpha - 2^alpha) / 3^alpha.
struct AffineStep {
  Exponent alpha;
  Exponent beta;
  Rational slope;
  Rational intercept;

  /// Throws DomainError when alpha or beta is zero.
  static AffineStep make(Exponent alpha, Exponent beta);
  Rational apply(const Rational& z) const { return slope * z + intercept; }
};

/// z_k = M z_0 + B after `length` steps.
struct PathComposition {
  Rational M{1};
  Rational B{0};
  std::size_t length = 0;

  Rational apply(const Rational& z0) const { return M * z0 + B; }
};

/// (alpha, beta) of one even-only step u -> u': alpha = r(v + 1) - 1 with
/// v the odd part of u, beta = r(u) - 1.
std::pair<Exponent, Exponent> forward_exponents(const Natural& u);

Rational reverse_affine_step(const Natural& z, Exponent alpha, Exponent beta);

/// Folds the steps left to right. Throws ConfigError on an empty path.
PathComposition compose_path(std::span<const AffineStep> steps);

struct SteinerSolution {
  Exponent alpha;
  Exponent beta;
  Natural z0;
  friend bool operator==(const SteinerSolution&, const SteinerSolution&) = default;
};

/// Every (alpha, beta) in [1, alpha_max] x [1, beta_max] whose one-step fixed
/// point z0 = -2^beta (3^alpha - 2^alpha) / (3^alpha - 2^{alpha+beta}) is a positive integer.
std::vector<SteinerSolution> steiner_search(Exponent alpha_max, Exponent beta_max);

/// m-th odd positive integer not divisible by 3: (6m + (-1)^m - 3) / 2, m >= 1.
Natural w_candidate(std::uint64_t m);

/// (w + 1) (3/2)^{r((w+1)/2)} - 1 for odd w not divisible by 3.
Natural z_from_w(const Natural& w);

/// 2z / 2^{r(z)}, the odd part of even z.
Natural w_from_z(const Natural& z);

/// w_from_z(z_from_w(w)): the parent of w in the tree.
Natural w_forward(const Natural& w);

/// If w_from_z(z_m) == w_from_z(z_n) then z_m = 2^k z_n (or the reverse) with
/// k = r(z_m) - r(z_n). Returns that k, or nullopt when the odd parts differ.
/// Note k is the exponent difference itself, not 2 raised to it.
std::optional<std::int64_t> same_w_shift(const Natural& z_m, const Natural& z_n);

struct WZNode {
  Natural w;
  Natural z;  // z_from_w(w); its odd part is the parent's w
  friend bool operator==(const WZNode&, const WZNode&) = default;
};

struct WZTree {
  WZNode root{Natural{1}, Natural{2}};
  std::uint64_t candidate_bound = 0;
  std::uint64_t depth_bound = 0;
  /// The root maps to itself; stored as a flag, not as an edge.
  bool root_self_loop = false;

  /// Reachable nodes keyed by w, root included.
  std::map<Natural, WZNode> nodes;
  /// parent w -> children w in increasing order (root self-loop excluded).
  std::map<Natural, std::vector<Natural>> children;
  /// depth of each reachable node (root = 0).
  std::map<Natural, std::uint64_t> depth;

  /// Candidates whose parent lies outside the candidate set.
  std::vector<WZNode> orphans;
  /// Candidates with a candidate parent that is not attached to the root
  /// within the depth bound.
  std::vector<WZNode> detached;

  const std::vector<Natural>& children_of(const Natural& w) const;
};

/// Evaluates w_forward on w_candidate(1..candidate_bound), buckets children
/// under their parents and attaches breadth-first from the root.
WZTree build_tree(std::uint64_t candidate_bound, std::uint64_t depth_bound,
                  unsigned workers = 1);

struct CycleReport {
  std::uint64_t candidate_bound = 0;
  std::uint64_t step_budget = 0;
  /// Distinct cycles, each rotated to start at its smallest element.
  std::vector<std::vector<Natural>> cycles;
  std::uint64_t reached_root = 0;
  /// Candidates whose orbit neither reached 1 nor closed a cycle.
  std::vector<Natural> inconclusive;
};

CycleReport cycle_scan(std::uint64_t candidate_bound, std::uint64_t step_budget,
                       unsigned workers = 1);

struct Multiplicity {
  std::uint64_t count = 0;
  std::vector<Natural> preimages;
};

/// Candidates w_candidate(m), m <= candidate_bound, with w_forward equal to target.
Multiplicity multiplicity(const Natural& target, std::uint64_t candidate_bound);

}  // namespace collatz
