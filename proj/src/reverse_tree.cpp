#include "collatz/reverse_tree.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "collatz/arith.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

namespace {

Rational pow_q(std::uint64_t base, Exponent e) {
  return Rational(num::power<Natural>(base, e));
}

void require_w(const Natural& w) {
  if (num::is_even(w) || num::mod(w, 3) == 0)
    throw DomainError("w must be odd and not divisible by 3: " + to_string(w));
}

struct Evaluated {
  Natural w;
  Natural z;
  Natural parent;
};

std::vector<Evaluated> evaluate_candidates(std::uint64_t bound, unsigned workers) {
  auto chunks = map_chunks(1, bound, workers, [](std::uint64_t first, std::uint64_t last) {
    std::vector<Evaluated> out;
    for (std::uint64_t m = first;; ++m) {
      Natural w = w_candidate(m);
      Natural z = z_from_w(w);
      Natural parent = w_from_z(z);
      out.push_back({std::move(w), std::move(z), std::move(parent)});
      if (m == last) break;
    }
    return out;
  });
  std::vector<Evaluated> all;
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(all));
  return all;
}

}  // namespace

AffineStep AffineStep::make(Exponent alpha, Exponent beta) {
  if (alpha == 0 || beta == 0) throw DomainError("affine step exponents must be >= 1");
  const Rational three_a = pow_q(3, alpha);
  Rational slope = pow_q(2, alpha + beta) / three_a;
  Rational intercept = -pow_q(2, beta) * (three_a - pow_q(2, alpha)) / three_a;
  slope.canonicalize();
  intercept.canonicalize();
  return {alpha, beta, std::move(slope), std::move(intercept)};
}

std::pair<Exponent, Exponent> forward_exponents(const Natural& u) {
  if (num::is_zero(u) || num::is_odd(u)) throw DomainError("u must be even and >= 2");
  const Exponent beta = ruler(u) - 1;
  const Natural v = num::shr(u, beta);
  return {ruler(Natural(v + 1)) - 1, beta};
}

Rational reverse_affine_step(const Natural& z, Exponent alpha, Exponent beta) {
  return AffineStep::make(alpha, beta).apply(Rational(z));
}

PathComposition compose_path(std::span<const AffineStep> steps) {
  if (steps.empty()) throw ConfigError("compose_path needs at least one step");
  PathComposition out;
  for (const auto& s : steps) {
    out.M = s.slope * out.M;
    out.B = s.slope * out.B + s.intercept;
  }
  out.length = steps.size();
  return out;
}

std::vector<SteinerSolution> steiner_search(Exponent alpha_max, Exponent beta_max) {
  if (alpha_max == 0 || beta_max == 0) throw ConfigError("steiner bounds must be >= 1");
  std::vector<SteinerSolution> out;
  for (Exponent alpha = 1; alpha <= alpha_max; ++alpha) {
    const Natural three = num::power<Natural>(3, alpha);
    const Natural two = num::power<Natural>(2, alpha);
    for (Exponent beta = 1; beta <= beta_max; ++beta) {
      // The numerator is negative, so z0 > 0 needs 2^{alpha+beta} > 3^alpha.
      const Natural denominator = num::shl(two, beta) - three;
      if (sgn(denominator) <= 0) continue;
      const Natural numerator = num::shl(Natural(three - two), beta);
      if (mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t()) == 0) continue;
      out.push_back({alpha, beta, Natural(numerator / denominator)});
    }
  }
  return out;
}

Natural w_candidate(std::uint64_t m) {
  if (m == 0) throw DomainError("w_candidate index must be >= 1");
  // (6m + (-1)^m - 3) / 2 = 3m - 1 for even m, 3m - 2 for odd m.
  const Natural base = Natural(to_natural(m) * 3);
  return m % 2 == 0 ? Natural(base - 1) : Natural(base - 2);
}

Natural z_from_w(const Natural& w) {
  require_w(w);
  const Natural w1 = w + 1;
  const Exponent e = ruler(Natural(w1 / 2));
  return num::shr(w1, e) * num::power<Natural>(3, e) - 1;
}

Natural w_from_z(const Natural& z) {
  if (num::is_zero(z) || num::is_odd(z)) throw DomainError("z must be even and >= 2");
  return num::shr(num::shl(z, 1), ruler(z));
}

Natural w_forward(const Natural& w) {
  return w_from_z(z_from_w(w));
}

std::optional<std::int64_t> same_w_shift(const Natural& z_m, const Natural& z_n) {
  if (w_from_z(z_m) != w_from_z(z_n)) return std::nullopt;
  return static_cast<std::int64_t>(ruler(z_m)) - static_cast<std::int64_t>(ruler(z_n));
}

const std::vector<Natural>& WZTree::children_of(const Natural& w) const {
  static const std::vector<Natural> kNone;
  const auto it = children.find(w);
  return it == children.end() ? kNone : it->second;
}

WZTree build_tree(std::uint64_t candidate_bound, std::uint64_t depth_bound, unsigned workers) {
  if (candidate_bound == 0 || depth_bound == 0) throw ConfigError("tree bounds must be >= 1");
  WZTree tree;
  tree.candidate_bound = candidate_bound;
  tree.depth_bound = depth_bound;

  const auto evaluated = evaluate_candidates(candidate_bound, workers);
  const Natural largest = w_candidate(candidate_bound);

  // Candidates come out in increasing w, so every bucket is already sorted.
  std::map<Natural, std::vector<const Evaluated*>> buckets;
  for (const auto& e : evaluated) {
    if (e.w == 1) {
      tree.root_self_loop = true;
      tree.root.z = e.z;
    } else if (e.parent > largest) {
      tree.orphans.push_back({e.w, e.z});
    } else {
      buckets[e.parent].push_back(&e);
    }
  }

  tree.nodes.emplace(tree.root.w, tree.root);
  tree.depth.emplace(tree.root.w, 0);
  std::deque<Natural> frontier{tree.root.w};
  while (!frontier.empty()) {
    const Natural parent = frontier.front();
    frontier.pop_front();
    const std::uint64_t level = tree.depth.at(parent);
    if (level == depth_bound) continue;
    const auto it = buckets.find(parent);
    if (it == buckets.end()) continue;
    auto& kids = tree.children[parent];
    for (const Evaluated* child : it->second) {
      kids.push_back(child->w);
      tree.nodes.emplace(child->w, WZNode{child->w, child->z});
      tree.depth.emplace(child->w, level + 1);
      frontier.push_back(child->w);
    }
  }

  for (const auto& [parent, kids] : buckets)
    for (const Evaluated* child : kids)
      if (!tree.nodes.contains(child->w)) tree.detached.push_back({child->w, child->z});
  std::sort(tree.detached.begin(), tree.detached.end(),
            [](const WZNode& x, const WZNode& y) { return x.w < y.w; });
  return tree;
}

CycleReport cycle_scan(std::uint64_t candidate_bound, std::uint64_t step_budget,
                       unsigned workers) {
  if (candidate_bound == 0 || step_budget == 0) throw ConfigError("cycle scan bounds must be >= 1");

  struct Partial {
    std::set<std::vector<Natural>> cycles;
    std::uint64_t reached_root = 0;
    std::vector<Natural> inconclusive;
  };

  auto chunks = map_chunks(1, candidate_bound, workers, [step_budget](std::uint64_t first,
                                                                      std::uint64_t last) {
    Partial part;
    for (std::uint64_t m = first;; ++m) {
      const Natural start = w_candidate(m);
      std::vector<Natural> orbit{start};
      std::map<Natural, std::size_t> seen{{start, 0}};
      bool done = false;
      for (std::uint64_t s = 0; s < step_budget && !done; ++s) {
        const Natural& current = orbit.back();
        if (current == 1) {
          part.cycles.insert({Natural{1}});
          ++part.reached_root;
          done = true;
          break;
        }
        Natural next = w_forward(current);
        if (const auto hit = seen.find(next); hit != seen.end()) {
          std::vector<Natural> cycle(orbit.begin() + static_cast<std::ptrdiff_t>(hit->second),
                                     orbit.end());
          std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
          part.cycles.insert(std::move(cycle));
          done = true;
          break;
        }
        seen.emplace(next, orbit.size());
        orbit.push_back(std::move(next));
      }
      if (!done) {
        if (orbit.back() == 1) {
          part.cycles.insert({Natural{1}});
          ++part.reached_root;
        } else {
          part.inconclusive.push_back(start);
        }
      }
      if (m == last) break;
    }
    return part;
  });

  CycleReport report{candidate_bound, step_budget, {}, 0, {}};
  std::set<std::vector<Natural>> cycles;
  for (auto& part : chunks) {
    cycles.insert(part.cycles.begin(), part.cycles.end());
    report.reached_root += part.reached_root;
    std::move(part.inconclusive.begin(), part.inconclusive.end(),
              std::back_inserter(report.inconclusive));
  }
  report.cycles.assign(cycles.begin(), cycles.end());
  return report;
}

Multiplicity multiplicity(const Natural& target, std::uint64_t candidate_bound) {
  require_w(target);
  Multiplicity out;
  for (std::uint64_t m = 1; m <= candidate_bound; ++m) {
    Natural w = w_candidate(m);
    if (w_forward(w) == target) {
      ++out.count;
      out.preimages.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace collatz
