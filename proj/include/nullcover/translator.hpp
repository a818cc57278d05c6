#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nullcover/arith.hpp"
#include "nullcover/error.hpp"
#include "nullcover/groups.hpp"

namespace nullcover {

/// Precomputed addition and negation tables over any indexed group. Turns
/// every group operation into a lookup; intended for small groups.
class CayleyTable {
 public:
  template <IndexedFiniteGroup G>
  explicit CayleyTable(const G& g, std::uint64_t cap = Caps{}.enumeration) : order_(g.order()) {
    if (order_ > 4096 || order_ * order_ > cap * 64) {
      fail_cap("EnumerationCap", "Cayley table for |G| = " + std::to_string(order_) + " is too large");
    }
    add_.resize(order_ * order_);
    neg_.resize(order_);
    for (Index a = 0; a < order_; ++a) {
      neg_[a] = static_cast<std::uint32_t>(g.neg_index(a));
      for (Index b = 0; b < order_; ++b) add_[a * order_ + b] = static_cast<std::uint32_t>(g.add_index(a, b));
    }
  }

  std::uint64_t order() const noexcept { return order_; }
  Index add_index(Index a, Index b) const noexcept { return add_[a * order_ + b]; }
  Index neg_index(Index a) const noexcept { return neg_[a]; }

 private:
  std::uint64_t order_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> neg_;
};

static_assert(IndexedFiniteGroup<CayleyTable>);

struct TranslatorOptions {
  /// When false, the cardinality preconditions are not checked and a
  /// saturated forbidden set surfaces as NoTranslator.
  bool enforce_bounds = true;
  std::uint64_t enumeration_cap = Caps{}.enumeration;
};

struct TranslatorResult {
  Index translator = 0;          ///< least g with S subset of g + A
  std::uint64_t forbidden_size = 0;  ///< |S - (G \ A)|
};

namespace detail {

template <class Visit>
void for_each_distinct(std::span<const Index> xs, std::uint64_t order, const char* what, std::vector<std::uint8_t>& seen,
                       Visit&& visit) {
  for (auto x : xs) {
    if (x >= order) fail_precondition("IndexOutOfRange", std::string(what) + " element " + std::to_string(x) + " >= |G|");
    if (!seen[x]) {
      seen[x] = 1;
      visit(x);
    }
  }
}

inline void check_translator_bounds(std::uint64_t order, std::uint64_t a_size, std::uint64_t s_size, std::uint64_t n) {
  auto lower = translator_lower_bound(order, n);
  if (a_size < lower) {
    fail_precondition("PreconditionViolated", "|A| = " + std::to_string(a_size) + " < ceil((1-1/(n+3))|G|) = " +
                                                  std::to_string(lower));
  }
  if (s_size > n + 2) {
    fail_precondition("PreconditionViolated", "|S| = " + std::to_string(s_size) + " > n+2 = " + std::to_string(n + 2));
  }
}

inline void check_counting_bound(std::uint64_t forbidden, std::uint64_t s_size, std::uint64_t complement,
                                  std::uint64_t order, bool bounds_hold) {
  if (forbidden > s_size * complement) {
    fail_internal("CountingBound", "|S-(G\\A)| exceeds |S|*|G\\A|");
  }
  if (bounds_hold && forbidden >= order) {
    fail_internal("CountingBound", "forbidden set covers G although the cardinality bounds hold");
  }
}

}  // namespace detail

/// Finds the least g (canonical order) with S subset of g + A.
///
/// g fails exactly when g = s - c for some s in S and c outside A, so the
/// answer is the first index outside the forbidden set S - (G \ A). With
/// |A| >= (1 - 1/(n+3))|G| and |S| <= n+2 that set has fewer than |G|
/// elements.
template <IndexedFiniteGroup G>
TranslatorResult find_translator(const G& group, std::span<const Index> a, std::span<const Index> s, std::uint64_t n,
                                 const TranslatorOptions& opts = {}) {
  const std::uint64_t order = group.order();

  if (order <= 64) {
    std::uint64_t a_mask = 0;
    std::uint64_t s_mask = 0;
    for (auto x : a) {
      if (x >= order) fail_precondition("IndexOutOfRange", "A element " + std::to_string(x) + " >= |G|");
      a_mask |= std::uint64_t{1} << x;
    }
    for (auto x : s) {
      if (x >= order) fail_precondition("IndexOutOfRange", "S element " + std::to_string(x) + " >= |G|");
      s_mask |= std::uint64_t{1} << x;
    }
    const std::uint64_t full = order == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1;
    const auto a_size = static_cast<std::uint64_t>(std::popcount(a_mask));
    const auto s_size = static_cast<std::uint64_t>(std::popcount(s_mask));
    const bool bounds_hold = a_size >= translator_lower_bound(order, n) && s_size <= n + 2;
    if (opts.enforce_bounds) detail::check_translator_bounds(order, a_size, s_size, n);

    std::uint64_t forbidden = 0;
    const std::uint64_t outside = full & ~a_mask;
    for (std::uint64_t sm = s_mask; sm; sm &= sm - 1) {
      const Index si = static_cast<Index>(std::countr_zero(sm));
      for (std::uint64_t cm = outside; cm; cm &= cm - 1) {
        const Index ci = static_cast<Index>(std::countr_zero(cm));
        forbidden |= std::uint64_t{1} << group.add_index(si, group.neg_index(ci));
      }
    }
    const auto forbidden_size = static_cast<std::uint64_t>(std::popcount(forbidden));
    detail::check_counting_bound(forbidden_size, s_size, order - a_size, order, bounds_hold);
    if (forbidden == full) fail_precondition("NoTranslator", "S - (G\\A) equals G");
    return {static_cast<Index>(std::countr_one(forbidden)), forbidden_size};
  }

  if (order > opts.enumeration_cap) {
    fail_cap("EnumerationCap", "|G| = " + std::to_string(order) + " exceeds enumeration cap");
  }
  std::vector<std::uint8_t> in_a(order, 0);
  std::vector<std::uint8_t> seen_s(order, 0);
  std::vector<Index> s_list;
  std::uint64_t a_size = 0;
  detail::for_each_distinct(a, order, "A", in_a, [&](Index) { ++a_size; });
  detail::for_each_distinct(s, order, "S", seen_s, [&](Index x) { s_list.push_back(x); });
  const bool bounds_hold = a_size >= translator_lower_bound(order, n) && s_list.size() <= n + 2;
  if (opts.enforce_bounds) detail::check_translator_bounds(order, a_size, s_list.size(), n);

  std::vector<Index> outside;
  outside.reserve(order - a_size);
  for (Index x = 0; x < order; ++x) {
    if (!in_a[x]) outside.push_back(group.neg_index(x));
  }
  std::vector<std::uint8_t> forbidden(order, 0);
  std::uint64_t forbidden_size = 0;
  for (auto si : s_list) {
    for (auto neg_c : outside) {
      auto& slot = forbidden[group.add_index(si, neg_c)];
      forbidden_size += slot == 0;
      slot = 1;
    }
  }
  detail::check_counting_bound(forbidden_size, s_list.size(), outside.size(), order, bounds_hold);
  for (Index g = 0; g < order; ++g) {
    if (!forbidden[g]) return {g, forbidden_size};
  }
  fail_precondition("NoTranslator", "S - (G\\A) equals G");
}

}  // namespace nullcover
