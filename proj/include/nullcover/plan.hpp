#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullcover/arith.hpp"
#include "nullcover/error.hpp"
#include "nullcover/groups.hpp"
#include "nullcover/padic.hpp"

namespace nullcover {

enum class PlanMode { product, padic };

inline const char* to_string(PlanMode m) noexcept { return m == PlanMode::product ? "product" : "padic"; }

/// Partition of the coordinate (or digit) positions into consecutive blocks.
///
/// `boundaries` is k_0 = 0 < k_1 < ... < k_D; block n covers positions
/// [k_n, k_{n+1}). In product mode `orders` lists |G_k| for every position
/// up to k_D; in p-adic mode every position has p digits.
struct BlockPlan {
  PlanMode mode = PlanMode::product;
  std::uint64_t p = 0;                   // padic only
  std::vector<std::uint64_t> orders;     // product only
  std::vector<std::uint64_t> boundaries;
  std::vector<std::uint64_t> block_orders;

  std::size_t depth() const noexcept { return block_orders.size(); }
  std::uint64_t positions() const noexcept { return boundaries.empty() ? 0 : boundaries.back(); }

  /// G_n' for a product plan.
  FiniteAbelianGroup product_block(std::size_t n) const {
    return FiniteAbelianGroup(std::vector<std::uint64_t>(orders.begin() + static_cast<std::ptrdiff_t>(boundaries[n]),
                                                         orders.begin() + static_cast<std::ptrdiff_t>(boundaries[n + 1])));
  }

  /// G_n for a p-adic plan.
  BlockGroup padic_block(std::size_t n) const { return BlockGroup(p, boundaries[n], boundaries[n + 1]); }

  /// The whole truncated product group, for product plans.
  FiniteAbelianGroup product_group() const { return FiniteAbelianGroup(orders); }

  friend bool operator==(const BlockPlan&, const BlockPlan&) = default;
};

/// Checks structural consistency and the size condition |G_n'| > 2(n+3).
inline void validate_plan(const BlockPlan& plan) {
  if (plan.boundaries.size() < 2) fail_precondition("InvalidPlan", "plan needs at least one block");
  if (plan.boundaries.front() != 0) fail_precondition("InvalidPlan", "first boundary must be 0");
  if (plan.block_orders.size() + 1 != plan.boundaries.size()) {
    fail_precondition("InvalidPlan", "block_orders must have one entry per block");
  }
  if (plan.mode == PlanMode::product) {
    if (plan.orders.size() != plan.positions()) {
      fail_precondition("InvalidPlan", "orders must cover exactly the positions [0, k_D)");
    }
  } else if (!is_prime(plan.p)) {
    fail_precondition("NotPrime", std::to_string(plan.p) + " is not prime");
  }
  for (std::size_t n = 0; n < plan.depth(); ++n) {
    if (plan.boundaries[n + 1] <= plan.boundaries[n]) fail_precondition("InvalidPlan", "boundaries must increase");
    const std::uint64_t actual =
        plan.mode == PlanMode::product ? plan.product_block(n).order() : plan.padic_block(n).order();
    if (actual != plan.block_orders[n]) fail_precondition("InvalidPlan", "block_orders disagrees with the blocks");
    if (actual <= 2 * (n + 3)) {
      fail_precondition("InvalidPlan", "block " + std::to_string(n) + " has order " + std::to_string(actual) +
                                           " <= 2(n+3)");
    }
  }
}

/// Greedy consecutive blocks: block n is the shortest run of the remaining
/// coordinates whose order product exceeds 2(n+3).
inline BlockPlan plan_blocks_product(const std::vector<std::uint64_t>& orders, std::size_t depth) {
  if (depth < 1) fail_precondition("InvalidDepth", "depth must be >= 1");
  BlockPlan plan;
  plan.mode = PlanMode::product;
  plan.boundaries.push_back(0);
  std::size_t k = 0;
  for (std::size_t n = 0; n < depth; ++n) {
    const std::uint64_t need = 2 * (n + 3);
    std::uint64_t prod = 1;
    while (prod <= need) {
      if (k >= orders.size()) {
        fail_precondition("CoordinatesExhausted", "only " + std::to_string(n) + " of " + std::to_string(depth) +
                                                      " blocks could be formed");
      }
      if (orders[k] < 2) fail_precondition("InvalidOrder", "coordinate orders must be >= 2");
      prod *= orders[k];  // prod <= 2(n+3) before the multiply, so no overflow
      plan.orders.push_back(orders[k]);
      ++k;
    }
    plan.boundaries.push_back(k);
    plan.block_orders.push_back(prod);
  }
  return plan;
}

/// k_0 = 0 and k_{n+1} - k_n minimal with p^(k_{n+1}-k_n) > 2(n+3).
inline BlockPlan plan_blocks_padic(std::uint64_t p, std::size_t depth) {
  if (!is_prime(p)) fail_precondition("NotPrime", std::to_string(p) + " is not prime");
  if (depth < 1) fail_precondition("InvalidDepth", "depth must be >= 1");
  BlockPlan plan;
  plan.mode = PlanMode::padic;
  plan.p = p;
  plan.boundaries.push_back(0);
  for (std::size_t n = 0; n < depth; ++n) {
    const std::uint64_t need = 2 * (n + 3);
    std::uint64_t len = 0;
    std::uint64_t pow = 1;
    while (pow <= need) {
      pow *= p;
      ++len;
    }
    plan.boundaries.push_back(plan.boundaries.back() + len);
    plan.block_orders.push_back(pow);
  }
  return plan;
}

}  // namespace nullcover
