#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nullcover/error.hpp"
#include "nullcover/plan.hpp"

namespace nullcover {

/// Width function f bounding |S_n|.
struct Width {
  enum class Tag { linear, half, table };  // n+2, floor((n+2)/2), explicit values

  Tag tag = Tag::linear;
  std::vector<std::uint64_t> table;

  static Width linear() { return {Tag::linear, {}}; }
  static Width half() { return {Tag::half, {}}; }
  static Width from_table(std::vector<std::uint64_t> values) { return {Tag::table, std::move(values)}; }

  std::uint64_t operator()(std::uint64_t n) const {
    switch (tag) {
      case Tag::linear: return n + 2;
      case Tag::half: return (n + 2) / 2;
      case Tag::table:
        if (n >= table.size()) fail_precondition("WidthTable", "width table has no entry for n = " + std::to_string(n));
        return table[n];
    }
    return 0;
  }

  friend bool operator==(const Width&, const Width&) = default;
};

inline const char* to_string(Width::Tag t) noexcept {
  switch (t) {
    case Width::Tag::linear: return "n+2";
    case Width::Tag::half: return "floor((n+2)/2)";
    case Width::Tag::table: return "table";
  }
  return "?";
}

/// S_0 x S_1 x ... with S_n a nonempty subset of [0, domains[n]) of size at
/// most width(n). Sets are stored sorted.
struct Slalom {
  std::vector<std::uint64_t> domains;
  std::vector<std::vector<Index>> sets;
  Width width;

  std::size_t depth() const noexcept { return sets.size(); }

  /// prod |S_n|, or nullopt past 2^64.
  std::optional<std::uint64_t> size() const {
    std::uint64_t total = 1;
    for (const auto& s : sets) {
      auto next = checked_mul(total, s.size());
      if (!next) return std::nullopt;
      total = *next;
    }
    return total;
  }

  bool contains(const std::vector<Index>& point) const {
    if (point.size() != sets.size()) return false;
    for (std::size_t n = 0; n < sets.size(); ++n) {
      if (!std::binary_search(sets[n].begin(), sets[n].end(), point[n])) return false;
    }
    return true;
  }

  friend bool operator==(const Slalom&, const Slalom&) = default;
};

/// Sorts and checks every S_n: nonempty, distinct, inside its domain, within width.
inline void normalize_slalom(Slalom& s) {
  if (s.domains.size() != s.sets.size()) fail_precondition("InvalidSlalom", "domains and sets differ in length");
  for (std::size_t n = 0; n < s.sets.size(); ++n) {
    auto& set = s.sets[n];
    std::sort(set.begin(), set.end());
    if (set.empty()) fail_precondition("InvalidSlalom", "S_" + std::to_string(n) + " is empty");
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
      fail_precondition("InvalidSlalom", "S_" + std::to_string(n) + " has repeated values");
    }
    if (set.back() >= s.domains[n]) {
      fail_precondition("InvalidSlalom", "S_" + std::to_string(n) + " leaves its domain");
    }
    if (set.size() > s.width(n)) {
      fail_precondition("InvalidSlalom", "|S_" + std::to_string(n) + "| = " + std::to_string(set.size()) +
                                             " exceeds f(n) = " + std::to_string(s.width(n)));
    }
  }
}

/// Uniform integer in [0, bound) from raw 64-bit draws. Unlike
/// std::uniform_int_distribution the result is the same on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// |S_n| = min(f(n), |G_n'|) values per block, drawn without replacement
/// (Floyd's algorithm).
inline Slalom random_slalom(const BlockPlan& plan, const Width& width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Slalom s;
  s.width = width;
  s.domains = plan.block_orders;
  s.sets.reserve(plan.depth());
  for (std::size_t n = 0; n < plan.depth(); ++n) {
    const std::uint64_t domain = plan.block_orders[n];
    const std::uint64_t k = std::min<std::uint64_t>(width(n), domain);
    if (k == 0) fail_precondition("InvalidSlalom", "width f(" + std::to_string(n) + ") = 0");
    std::set<Index> chosen;
    for (std::uint64_t j = domain - k; j < domain; ++j) {
      const Index t = uniform_below(rng, j + 1);
      chosen.insert(chosen.contains(t) ? j : t);
    }
    s.sets.emplace_back(chosen.begin(), chosen.end());
  }
  return s;
}

struct CubeCoverResult {
  bool covered = true;
  std::optional<std::vector<Index>> witness;  ///< least uncovered point
  std::uint64_t uncovered_count = 0;
  std::uint64_t cube_size = 0;
};

/// Does the union of `family` equal prod_n [0, |G_n'|)? Scans every point of
/// the truncated cube in lexicographic order (last block fastest).
inline CubeCoverResult cube_cover_check(const std::vector<Slalom>& family, const BlockPlan& plan,
                                        std::uint64_t cap = Caps{}.verification) {
  std::uint64_t total = 1;
  for (auto m : plan.block_orders) {
    auto next = checked_mul(total, m);
    if (!next || *next > cap) fail_cap("VerificationCap", "truncated cube exceeds verification cap");
    total = *next;
  }
  const std::size_t depth = plan.depth();
  // member[i][n][v]: slalom i contains value v in block n
  std::vector<std::vector<std::vector<std::uint8_t>>> member;
  member.reserve(family.size());
  for (const auto& s : family) {
    if (s.depth() != depth) fail_precondition("InvalidSlalom", "slalom depth differs from plan depth");
    std::vector<std::vector<std::uint8_t>> m(depth);
    for (std::size_t n = 0; n < depth; ++n) {
      m[n].assign(plan.block_orders[n], 0);
      for (auto v : s.sets[n]) {
        if (v >= plan.block_orders[n]) fail_precondition("InvalidSlalom", "slalom value outside its block");
        m[n][v] = 1;
      }
    }
    member.push_back(std::move(m));
  }

  CubeCoverResult out;
  out.cube_size = total;
  std::vector<Index> point(depth, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    bool hit = false;
    for (const auto& m : member) {
      bool inside = true;
      for (std::size_t n = 0; n < depth && inside; ++n) inside = m[n][point[n]] != 0;
      if (inside) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      if (!out.witness) out.witness = point;
      out.covered = false;
      ++out.uncovered_count;
    }
    for (std::size_t n = depth; n-- > 0;) {
      if (++point[n] < plan.block_orders[n]) break;
      point[n] = 0;
    }
  }
  return out;
}

}  // namespace nullcover
