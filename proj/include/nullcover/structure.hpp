#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nullcover/arith.hpp"
#include "nullcover/error.hpp"
#include "nullcover/groups.hpp"

namespace nullcover {

/// Symbolic locally compact abelian group.
///
/// SumOmega / ProdOmega denote the countable direct sum (discrete) or
/// product (compact) of the listed finite groups repeated cyclically.
struct Descriptor {
  enum class Kind { Int, Reals, Torus, Cyclic, Quasicyclic, Padic, RPower, FiniteSum, SumOmega, ProdOmega };

  Kind kind = Kind::Int;
  std::uint64_t param = 0;  // m for Cyclic, p for Quasicyclic/Padic, n for RPower
  std::vector<Descriptor> parts;

  static Descriptor integers() { return {Kind::Int, 0, {}}; }
  static Descriptor reals() { return {Kind::Reals, 0, {}}; }
  static Descriptor torus() { return {Kind::Torus, 0, {}}; }
  static Descriptor cyclic(std::uint64_t m) { return {Kind::Cyclic, m, {}}; }
  static Descriptor quasicyclic(std::uint64_t p) { return {Kind::Quasicyclic, p, {}}; }
  static Descriptor padic(std::uint64_t p) { return {Kind::Padic, p, {}}; }
  static Descriptor rpower(std::uint64_t n) { return {Kind::RPower, n, {}}; }
  static Descriptor finite_sum(std::vector<Descriptor> ps) { return {Kind::FiniteSum, 0, std::move(ps)}; }
  static Descriptor sum_omega(std::vector<Descriptor> ps) { return {Kind::SumOmega, 0, std::move(ps)}; }
  static Descriptor prod_omega(std::vector<Descriptor> ps) { return {Kind::ProdOmega, 0, std::move(ps)}; }

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

inline const char* kind_name(Descriptor::Kind k) noexcept {
  using K = Descriptor::Kind;
  switch (k) {
    case K::Int: return "Int";
    case K::Reals: return "Reals";
    case K::Torus: return "Torus";
    case K::Cyclic: return "Cyclic";
    case K::Quasicyclic: return "Quasicyclic";
    case K::Padic: return "Padic";
    case K::RPower: return "RPower";
    case K::FiniteSum: return "FiniteSum";
    case K::SumOmega: return "SumOmega";
    case K::ProdOmega: return "ProdOmega";
  }
  return "?";
}

inline bool is_finite(const Descriptor& d) {
  using K = Descriptor::Kind;
  switch (d.kind) {
    case K::Cyclic: return true;
    case K::FiniteSum:
      return std::all_of(d.parts.begin(), d.parts.end(), [](const Descriptor& x) { return is_finite(x); });
    default: return false;
  }
}

inline bool is_discrete(const Descriptor& d) {
  using K = Descriptor::Kind;
  switch (d.kind) {
    case K::Int:
    case K::Cyclic:
    case K::Quasicyclic:
    case K::SumOmega: return true;
    case K::FiniteSum:
      return std::all_of(d.parts.begin(), d.parts.end(), [](const Descriptor& x) { return is_discrete(x); });
    default: return false;
  }
}

inline bool is_compact(const Descriptor& d) {
  using K = Descriptor::Kind;
  switch (d.kind) {
    case K::Torus:
    case K::Cyclic:
    case K::Padic:
    case K::ProdOmega: return true;
    case K::FiniteSum:
      return std::all_of(d.parts.begin(), d.parts.end(), [](const Descriptor& x) { return is_compact(x); });
    default: return false;
  }
}

/// Node count.
inline std::size_t syntactic_size(const Descriptor& d) {
  std::size_t n = 1;
  for (const auto& p : d.parts) n += syntactic_size(p);
  return n;
}

inline void validate_descriptor(const Descriptor& d) {
  using K = Descriptor::Kind;
  switch (d.kind) {
    case K::Int:
    case K::Reals:
    case K::Torus:
      if (!d.parts.empty() || d.param != 0) fail_schema("InvalidDescriptor", std::string(kind_name(d.kind)) + " takes no arguments");
      return;
    case K::Cyclic:
      if (d.param < 2) fail_schema("InvalidDescriptor", "Cyclic order must be >= 2");
      break;
    case K::Quasicyclic:
    case K::Padic:
      if (!is_prime(d.param)) fail_schema("InvalidDescriptor", std::to_string(d.param) + " is not prime");
      break;
    case K::RPower:
      if (d.param < 1) fail_schema("InvalidDescriptor", "RPower exponent must be >= 1");
      break;
    case K::FiniteSum:
      if (d.parts.empty()) fail_schema("InvalidDescriptor", "FiniteSum needs at least one part");
      for (const auto& p : d.parts) validate_descriptor(p);
      return;
    case K::SumOmega:
    case K::ProdOmega:
      if (d.parts.empty()) fail_schema("InvalidDescriptor", std::string(kind_name(d.kind)) + " needs at least one part");
      for (const auto& p : d.parts) {
        validate_descriptor(p);
        if (!is_finite(p)) fail_schema("InvalidDescriptor", std::string(kind_name(d.kind)) + " parts must be finite");
      }
      return;
  }
  if (!d.parts.empty()) fail_schema("InvalidDescriptor", std::string(kind_name(d.kind)) + " takes no parts");
}

inline std::string to_string(const Descriptor& d) {
  using K = Descriptor::Kind;
  auto join = [](const std::vector<Descriptor>& ps, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? sep : "") + to_string(ps[i]);
    return out;
  };
  switch (d.kind) {
    case K::Int: return "Z";
    case K::Reals: return "R";
    case K::Torus: return "T";
    case K::Cyclic: return "Z/" + std::to_string(d.param);
    case K::Quasicyclic: return "C(" + std::to_string(d.param) + "^inf)";
    case K::Padic: return "Z_" + std::to_string(d.param);
    case K::RPower: return "R^" + std::to_string(d.param);
    case K::FiniteSum: return "(" + join(d.parts, " + ") + ")";
    case K::SumOmega: return "sum_n[" + join(d.parts, ", ") + "]";
    case K::ProdOmega: return "prod_n[" + join(d.parts, ", ") + "]";
  }
  return "?";
}

/// Pontryagin dual. Z <-> T, C(p^inf) <-> Z_p, direct sums <-> products;
/// R^n and finite groups are self-dual.
inline Descriptor dual(const Descriptor& d) {
  using K = Descriptor::Kind;
  Descriptor out = d;
  switch (d.kind) {
    case K::Int: out.kind = K::Torus; break;
    case K::Torus: out.kind = K::Int; break;
    case K::Quasicyclic: out.kind = K::Padic; break;
    case K::Padic: out.kind = K::Quasicyclic; break;
    case K::SumOmega: out.kind = K::ProdOmega; break;
    case K::ProdOmega: out.kind = K::SumOmega; break;
    default: break;
  }
  for (auto& p : out.parts) p = dual(p);
  return out;
}

// -- finite groups --------------------------------------------------------

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t q = 2; q <= m / q; ++q) {
    if (m % q != 0) continue;
    std::uint64_t pk = 1;
    while (m % q == 0) {
      m /= q;
      pk *= q;
    }
    out.emplace_back(q, pk);
  }
  if (m > 1) out.emplace_back(m, m);
  return out;
}

inline void collect_cyclic_orders(const Descriptor& d, std::vector<std::uint64_t>& out) {
  if (d.kind == Descriptor::Kind::Cyclic) {
    out.push_back(d.param);
  } else {
    for (const auto& p : d.parts) collect_cyclic_orders(p, out);
  }
}

inline BigInt finite_order(const Descriptor& d) {
  if (!is_finite(d)) fail_precondition("NotFiniteTorsion", to_string(d) + " is not finite");
  std::vector<std::uint64_t> orders;
  collect_cyclic_orders(d, orders);
  BigInt n = 1;
  for (auto m : orders) n *= m;
  return n;
}

/// The concrete group behind a finite descriptor.
inline FiniteAbelianGroup to_finite_group(const Descriptor& d) {
  validate_descriptor(d);
  if (!is_finite(d)) fail_precondition("NotFiniteTorsion", to_string(d) + " is not finite");
  std::vector<std::uint64_t> orders;
  collect_cyclic_orders(d, orders);
  return FiniteAbelianGroup(std::move(orders));
}

struct PrimaryPart {
  std::uint64_t p;
  Descriptor part;

  friend bool operator==(const PrimaryPart&, const PrimaryPart&) = default;
};

/// Splits each Cyclic(m) into its prime-power factors and groups them by
/// prime (ascending). A prime with one factor yields that Cyclic directly;
/// several yield a FiniteSum in order of appearance.
inline std::vector<PrimaryPart> primary_decomposition(const Descriptor& d) {
  validate_descriptor(d);
  if (!is_finite(d)) fail_precondition("NotFiniteTorsion", to_string(d) + " is not a finite torsion group");
  std::vector<std::uint64_t> orders;
  collect_cyclic_orders(d, orders);
  std::map<std::uint64_t, std::vector<Descriptor>> by_prime;
  for (auto m : orders) {
    for (auto [q, pk] : factorize(m)) by_prime[q].push_back(Descriptor::cyclic(pk));
  }
  std::vector<PrimaryPart> out;
  for (auto& [q, parts] : by_prime) {
    out.push_back({q, parts.size() == 1 ? parts.front() : Descriptor::finite_sum(std::move(parts))});
  }
  return out;
}

// -- trichotomy -------------------------------------------------------------

/// Which of Z, a countable sum of nontrivial finite groups, or C(p^inf)
/// embeds in an infinite discrete group.
struct TrichotomyVerdict {
  int which = 0;             // 1, 2 or 3
  Descriptor witness;        // the embedded subgroup
  std::uint64_t p = 0;       // case 3 only

  friend bool operator==(const TrichotomyVerdict&, const TrichotomyVerdict&) = default;
};

namespace detail {
inline const Descriptor* find_first(const Descriptor& d, Descriptor::Kind k) {
  if (d.kind == k) return &d;
  if (d.kind == Descriptor::Kind::FiniteSum) {
    for (const auto& p : d.parts) {
      if (const auto* hit = find_first(p, k)) return hit;
    }
  }
  return nullptr;
}
}  // namespace detail

inline TrichotomyVerdict classify_subgroup(const Descriptor& d) {
  using K = Descriptor::Kind;
  validate_descriptor(d);
  if (!is_discrete(d)) fail_precondition("NotDiscrete", to_string(d) + " is not discrete");
  if (is_finite(d)) fail_precondition("NotInfinite", to_string(d) + " is finite");

  if (detail::find_first(d, K::Int)) return {1, Descriptor::integers(), 0};
  if (const auto* s = detail::find_first(d, K::SumOmega)) return {2, *s, 0};
  if (const auto* q = detail::find_first(d, K::Quasicyclic)) return {3, *q, q->param};
  fail_precondition("Unclassifiable", to_string(d) + " is outside the decidable fragment");
}

// -- divisible chains ---------------------------------------------------------

struct ChainDepth {
  std::uint64_t depth = 0;   // largest d admitting a chain g_0..g_d
  bool unbounded = false;    // chains of every length exist
  bool any = false;          // false when no nonzero element exists
};

namespace detail {

/// levels[k][i] == 1 iff element i heads a run of k successive p-th roots.
struct ChainLevels {
  std::vector<Index> times_p;
  std::vector<std::vector<std::uint8_t>> levels;
  bool stable = false;  // last level equals its predecessor

  ChainLevels(const FiniteAbelianGroup& g, std::uint64_t p, std::uint64_t want, std::uint64_t cap) {
    if (g.order() > cap) fail_cap("EnumerationCap", "|G| exceeds enumeration cap");
    const auto elems = enumerate_elements(g, cap);
    times_p.resize(elems.size());
    for (Index i = 0; i < elems.size(); ++i) times_p[i] = g.index_of(g.scale(p, elems[i]));
    levels.emplace_back(elems.size(), 1);
    while (levels.size() <= want) {
      std::vector<std::uint8_t> next(elems.size(), 0);
      const auto& prev = levels.back();
      for (Index h = 0; h < elems.size(); ++h) {
        if (prev[h]) next[times_p[h]] = 1;
      }
      if (next == prev) {
        stable = true;
        break;
      }
      levels.push_back(std::move(next));
    }
  }

  const std::vector<std::uint8_t>& level(std::uint64_t k) const {
    return k < levels.size() ? levels[k] : levels.back();
  }
};

inline bool has_nonzero(const std::vector<std::uint8_t>& level) {
  return std::find(level.begin() + 1, level.end(), std::uint8_t{1}) != level.end();
}

}  // namespace detail

/// Lexicographically least (g_0, ..., g_d) with g_0 != 0 and p g_{i+1} = g_i,
/// or nullopt when no chain of that length exists.
inline std::optional<std::vector<GroupElement>> divisible_chain(const FiniteAbelianGroup& g, std::uint64_t p,
                                                                std::uint64_t depth,
                                                                std::uint64_t cap = Caps{}.enumeration) {
  if (!is_prime(p)) fail_precondition("NotPrime", std::to_string(p) + " is not prime");
  const detail::ChainLevels lv(g, p, depth, cap);
  const auto& top = lv.level(depth);
  if (!detail::has_nonzero(top)) return std::nullopt;

  std::vector<Index> chain;
  chain.push_back(static_cast<Index>(std::find(top.begin() + 1, top.end(), std::uint8_t{1}) - top.begin()));
  for (std::uint64_t i = 0; i < depth; ++i) {
    const auto& allowed = lv.level(depth - i - 1);
    Index next = g.order();
    for (Index h = 0; h < g.order(); ++h) {
      if (allowed[h] && lv.times_p[h] == chain.back()) {
        next = h;
        break;
      }
    }
    if (next == g.order()) fail_internal("ChainSearch", "level sets are inconsistent");
    chain.push_back(next);
  }
  std::vector<GroupElement> out;
  out.reserve(chain.size());
  for (auto i : chain) out.push_back(g.element_at(i));
  return out;
}

/// Deepest chain available. Once the level sets stop shrinking, chains of
/// every length exist (possible only when some element is not of p-power order).
inline ChainDepth max_chain_depth(const FiniteAbelianGroup& g, std::uint64_t p,
                                  std::uint64_t cap = Caps{}.enumeration) {
  if (!is_prime(p)) fail_precondition("NotPrime", std::to_string(p) + " is not prime");
  const detail::ChainLevels lv(g, p, g.order() + 1, cap);
  ChainDepth out;
  for (std::uint64_t k = 0; k < lv.levels.size(); ++k) {
    if (!detail::has_nonzero(lv.levels[k])) break;
    out.any = true;
    out.depth = k;
  }
  out.unbounded = out.any && lv.stable && detail::has_nonzero(lv.levels.back());
  return out;
}

// -- niceness reduction ---------------------------------------------------------

enum class NiceVerdict { nice, not_nice_discrete, not_nice_large_index, unresolved };

inline const char* to_string(NiceVerdict v) noexcept {
  switch (v) {
    case NiceVerdict::nice: return "nice";
    case NiceVerdict::not_nice_discrete: return "not-nice: discrete";
    case NiceVerdict::not_nice_large_index: return "not-nice: large-index";
    case NiceVerdict::unresolved: return "unresolved";
  }
  return "?";
}

struct RuleInfo {
  const char* tag;
  const char* statement;
  bool terminal;
};

/// Every rewrite rule a trace may cite.
inline const std::vector<RuleInfo>& rule_registry() {
  static const std::vector<RuleInfo> rules = {
      {"discrete", "A discrete group has no nonempty Haar-null set, so no cover by nullsets exists.", true},
      {"open-subgroup",
       "Pass to an open subgroup K x R^n with K compact (structure theorem for LCA groups); "
       "its index is assumed to be at most cof(N).",
       false},
      {"euclidean-factor", "R is nice; K x C x [0,1]^(n-1) is a compact nullset witnessing that K x R^n is nice.", true},
      {"dualize", "For compact G, quotients G/H are exactly duals of subgroups of the discrete dual group.", false},
      {"trichotomy", "An infinite abelian group contains Z, a countable sum of nontrivial finite groups, or C(p^inf).",
       false},
      {"factor", "G/H is the dual of the chosen subgroup; if G/H is nice with H compact, G is nice.", false},
      {"terminal-circle", "The circle group T is nice.", true},
      {"terminal-product", "A countable product of finite groups of order >= 2 is nice.", true},
      {"terminal-padic", "The p-adic integers Z_p are nice.", true},
  };
  return rules;
}

inline const RuleInfo* find_rule(const std::string& tag) {
  for (const auto& r : rule_registry()) {
    if (tag == r.tag) return &r;
  }
  return nullptr;
}

struct TraceStep {
  std::string rule;
  Descriptor before;
  Descriptor after;
  std::string justification;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  NiceVerdict verdict = NiceVerdict::unresolved;
  std::vector<std::string> side_conditions;
};

inline constexpr const char* kIndexSideCondition = "open-subgroup-index<=cof(N)";

namespace detail {

inline void flatten_sum(const Descriptor& d, std::vector<Descriptor>& out) {
  if (d.kind == Descriptor::Kind::FiniteSum) {
    for (const auto& p : d.parts) flatten_sum(p, out);
  } else {
    out.push_back(d);
  }
}

inline Descriptor sum_of(std::vector<Descriptor> parts) {
  return parts.size() == 1 ? std::move(parts.front()) : Descriptor::finite_sum(std::move(parts));
}

inline const char* terminal_rule(const Descriptor& d) {
  using K = Descriptor::Kind;
  switch (d.kind) {
    case K::Torus: return "terminal-circle";
    case K::ProdOmega: return "terminal-product";
    case K::Padic: return "terminal-padic";
    default: return nullptr;
  }
}

}  // namespace detail

/// Runs the reduction behind "nondiscrete LCA => nice": strip to an open
/// K x R^n, settle R^n directly, otherwise dualize the compact K, pick a
/// subgroup of the dual by the trichotomy, and dualize it back into one of
/// T, a product of finite groups, or Z_p.
inline ReductionTrace niceness_pipeline(const Descriptor& d) {
  using K = Descriptor::Kind;
  validate_descriptor(d);
  ReductionTrace trace;
  auto step = [&](const char* rule, const Descriptor& before, const Descriptor& after) {
    trace.steps.push_back({rule, before, after, find_rule(rule)->statement});
  };

  if (is_discrete(d)) {
    step("discrete", d, d);
    trace.verdict = NiceVerdict::not_nice_discrete;
    return trace;
  }
  trace.side_conditions.push_back(kIndexSideCondition);

  if (const char* rule = detail::terminal_rule(d)) {
    step(rule, d, d);
    trace.verdict = NiceVerdict::nice;
    return trace;
  }

  std::vector<Descriptor> parts;
  detail::flatten_sum(d, parts);
  std::vector<Descriptor> compact;
  std::uint64_t euclidean = 0;
  for (const auto& p : parts) {
    if (p.kind == K::Reals) {
      euclidean += 1;
    } else if (p.kind == K::RPower) {
      euclidean += p.param;
    } else if (is_compact(p)) {
      compact.push_back(p);
    }
    // Int, C(p^inf) and sum_n[...] summands are discrete and countable; the
    // open subgroup meets them in 0.
  }
  std::vector<Descriptor> open_parts = compact;
  if (euclidean > 0) open_parts.push_back(euclidean == 1 ? Descriptor::reals() : Descriptor::rpower(euclidean));
  Descriptor open = detail::sum_of(open_parts);
  if (open != d) step("open-subgroup", d, open);

  if (euclidean > 0) {
    step("euclidean-factor", open, euclidean == 1 ? Descriptor::reals() : Descriptor::rpower(euclidean));
    trace.verdict = NiceVerdict::nice;
    return trace;
  }

  // No Euclidean part, and nondiscrete: `open` is an infinite compact group.
  if (const char* rule = detail::terminal_rule(open)) {
    step(rule, open, open);
    trace.verdict = NiceVerdict::nice;
    return trace;
  }
  const Descriptor dual_group = dual(open);
  step("dualize", open, dual_group);

  TrichotomyVerdict tv;
  try {
    tv = classify_subgroup(dual_group);
  } catch (const Error& e) {
    if (e.code() != "Unclassifiable") throw;
    trace.verdict = NiceVerdict::unresolved;
    return trace;
  }
  step("trichotomy", dual_group, tv.witness);
  const Descriptor quotient = dual(tv.witness);
  step("factor", tv.witness, quotient);
  const char* rule = detail::terminal_rule(quotient);
  if (!rule) fail_internal("PipelineHandoff", "dual of the trichotomy witness is not a terminal group");
  step(rule, quotient, quotient);
  trace.verdict = NiceVerdict::nice;
  return trace;
}

}  // namespace nullcover
