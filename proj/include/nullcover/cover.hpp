#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullcover/error.hpp"
#include "nullcover/groups.hpp"
#include "nullcover/nullset_spec.hpp"
#include "nullcover/padic.hpp"
#include "nullcover/plan.hpp"
#include "nullcover/slalom.hpp"
#include "nullcover/translator.hpp"

namespace nullcover {

/// A translate covering a slalom, with the outcome of its exhaustive check.
///
/// Product mode: `translate` is g as residues of the full truncated group and
/// the claim is S subset of g + C. p-adic mode: `translate` is x as digits
/// (least significant first) and the claim is S + x subset of C.
struct CoverCertificate {
  PlanMode mode = PlanMode::product;
  std::vector<std::uint64_t> translate;
  std::vector<Index> block_translators;  // g_n per block
  bool verified = false;
  std::uint64_t checked_count = 0;
  std::uint64_t carried = 0;  // p-adic: (element, block) pairs that received a carry

  friend bool operator==(const CoverCertificate&, const CoverCertificate&) = default;
};

struct VerifyResult {
  bool ok = true;
  std::optional<std::vector<Index>> counterexample;  // least failing slalom point
  std::uint64_t checked_count = 0;
  std::uint64_t carried = 0;
  std::uint64_t dichotomy_checks = 0;
};

namespace detail {

inline void require_slalom_matches(const NullsetSpec& spec, Slalom& s) {
  normalize_slalom(s);
  if (s.depth() != spec.depth()) {
    fail_precondition("DepthMismatch", "slalom depth " + std::to_string(s.depth()) + " != nullset depth " +
                                           std::to_string(spec.depth()));
  }
  if (s.domains != spec.plan.block_orders) fail_precondition("DomainMismatch", "slalom domains differ from the plan blocks");
}

inline std::vector<std::vector<std::uint8_t>> membership(const NullsetSpec& spec) {
  std::vector<std::vector<std::uint8_t>> out(spec.depth());
  for (std::size_t n = 0; n < spec.depth(); ++n) {
    out[n].assign(spec.plan.block_orders[n], 0);
    for (auto a : spec.blocks[n]) out[n][a] = 1;
  }
  return out;
}

/// Visits every point of the slalom in lexicographic order (last block
/// fastest) until `visit` returns false.
template <class Visit>
void for_each_point(const Slalom& s, Visit&& visit) {
  const std::size_t depth = s.depth();
  std::vector<std::size_t> pos(depth, 0);
  std::vector<Index> point(depth);
  for (;;) {
    for (std::size_t n = 0; n < depth; ++n) point[n] = s.sets[n][pos[n]];
    if (!visit(point)) return;
    std::size_t n = depth;
    while (n-- > 0) {
      if (++pos[n] < s.sets[n].size()) break;
      pos[n] = 0;
    }
    if (n == static_cast<std::size_t>(-1)) return;
  }
}

inline VerifyResult verify_product(const NullsetSpec& spec, const std::vector<std::uint64_t>& translate, const Slalom& s) {
  const auto& plan = spec.plan;
  const FiniteAbelianGroup whole = plan.product_group();
  const GroupElement g{translate};
  whole.require(g);
  std::vector<FiniteAbelianGroup> blocks;
  for (std::size_t n = 0; n < plan.depth(); ++n) blocks.push_back(plan.product_block(n));
  const auto in_a = membership(spec);

  VerifyResult out;
  GroupElement full{std::vector<std::uint64_t>(whole.rank())};
  for_each_point(s, [&](const std::vector<Index>& point) {
    for (std::size_t n = 0; n < point.size(); ++n) {
      const auto part = blocks[n].element_at(point[n]);
      std::copy(part.residues.begin(), part.residues.end(),
                full.residues.begin() + static_cast<std::ptrdiff_t>(plan.boundaries[n]));
    }
    // s in g + C  <=>  s - g in C
    const auto diff = whole.sub(full, g);
    ++out.checked_count;
    for (std::size_t n = 0; n < point.size(); ++n) {
      GroupElement part{std::vector<std::uint64_t>(diff.residues.begin() + static_cast<std::ptrdiff_t>(plan.boundaries[n]),
                                                   diff.residues.begin() + static_cast<std::ptrdiff_t>(plan.boundaries[n + 1]))};
      if (!in_a[n][blocks[n].index_of(part)]) {
        out.ok = false;
        out.counterexample = point;
        return false;
      }
    }
    return true;
  });
  return out;
}

inline VerifyResult verify_padic(const NullsetSpec& spec, const std::vector<std::uint64_t>& translate, const Slalom& s) {
  const auto& plan = spec.plan;
  const PadicContext ctx(plan.p, plan.positions());
  const PadicNumber x{translate};
  detail::require_digits(ctx.p(), x.digits, ctx.length(), "translate");
  std::vector<BlockGroup> blocks;
  std::vector<Digits> x_blocks;
  for (std::size_t n = 0; n < plan.depth(); ++n) {
    blocks.push_back(plan.padic_block(n));
    x_blocks.push_back(blocks.back().slice(x));
  }
  const auto in_a = membership(spec);

  VerifyResult out;
  PadicNumber sum_in{Digits(ctx.length())};
  for_each_point(s, [&](const std::vector<Index>& point) {
    for (std::size_t n = 0; n < point.size(); ++n) {
      const auto d = blocks[n].element_at(point[n]);
      std::copy(d.begin(), d.end(), sum_in.digits.begin() + static_cast<std::ptrdiff_t>(plan.boundaries[n]));
    }
    // Full carry-propagating addition; blocks are read off afterwards.
    const auto y = padic_add(ctx, sum_in, x);
    ++out.checked_count;
    for (std::size_t n = 0; n < point.size(); ++n) {
      const auto& b = blocks[n];
      const auto yb = b.slice(y);
      const auto plain = b.add(b.element_at(point[n]), x_blocks[n]);
      const auto shifted = b.add(plain, b.unit());
      ++out.dichotomy_checks;
      if (yb == plain) {
        // no carry into k_n
      } else if (yb == shifted) {
        ++out.carried;
      } else {
        fail_internal("VerificationFailed", "block " + std::to_string(n) +
                                                " of s + x is neither s_n + x_n nor s_n + x_n + 1_n");
      }
      if (!in_a[n][b.index_of(yb)]) {
        out.ok = false;
        out.counterexample = point;
        return false;
      }
    }
    return true;
  });
  return out;
}

}  // namespace detail

/// Exhaustively checks every point of `slalom` against the translated nullset.
/// Returns the lexicographically least failing point on failure.
inline VerifyResult verify_cover(const NullsetSpec& spec, const std::vector<std::uint64_t>& translate, Slalom slalom,
                                 std::uint64_t cap = Caps{}.verification) {
  validate_nullset(spec);
  detail::require_slalom_matches(spec, slalom);
  const auto size = slalom.size();
  if (!size || *size > cap) fail_cap("VerificationCap", "slalom has more points than the verification cap");
  return spec.plan.mode == PlanMode::product ? detail::verify_product(spec, translate, slalom)
                                             : detail::verify_padic(spec, translate, slalom);
}

namespace detail {

inline void require_width(const Slalom& s, std::uint64_t (*limit)(std::uint64_t), const char* what) {
  for (std::size_t n = 0; n < s.depth(); ++n) {
    if (s.sets[n].size() > limit(n)) {
      fail_precondition("WidthTooLarge", "|S_" + std::to_string(n) + "| exceeds " + what);
    }
  }
}

[[noreturn]] inline void verification_failed(const VerifyResult& r) {
  std::string where;
  if (r.counterexample) {
    for (auto v : *r.counterexample) where += (where.empty() ? "" : ",") + std::to_string(v);
  }
  fail_internal("VerificationFailed", "certificate failed exhaustive verification at (" + where + ")");
}

}  // namespace detail

/// Covers an (n+2)-slalom over a product plan by g + C, block by block.
inline CoverCertificate cover_product_slalom(const NullsetSpec& spec, Slalom slalom,
                                             const Caps& caps = {}) {
  validate_nullset(spec);
  if (spec.plan.mode != PlanMode::product) fail_precondition("ModeMismatch", "nullset is not a product construction");
  detail::require_slalom_matches(spec, slalom);
  detail::require_width(slalom, [](std::uint64_t n) { return n + 2; }, "n+2");

  CoverCertificate cert;
  cert.mode = PlanMode::product;
  const TranslatorOptions opts{true, caps.enumeration};
  for (std::size_t n = 0; n < spec.depth(); ++n) {
    const auto block = spec.plan.product_block(n);
    const auto r = find_translator(block, spec.blocks[n], slalom.sets[n], n, opts);
    cert.block_translators.push_back(r.translator);
    const auto g = block.element_at(r.translator);
    cert.translate.insert(cert.translate.end(), g.residues.begin(), g.residues.end());
  }
  const auto check = verify_cover(spec, cert.translate, slalom, caps.verification);
  if (!check.ok) detail::verification_failed(check);
  cert.verified = true;
  cert.checked_count = check.checked_count;
  return cert;
}

/// Covers a floor((n+2)/2)-slalom in Z_p / p^{k_D} by S + x subset of C.
///
/// Each S_n is first closed under the incoming carry (S_n union S_n + 1_n) so
/// that whichever of s_n + x_n or s_n + x_n + 1_n the real sum produces, it
/// lands in A_n.
inline CoverCertificate cover_padic_slalom(const PadicContext& ctx, const NullsetSpec& spec, Slalom slalom,
                                           const Caps& caps = {}) {
  validate_nullset(spec);
  if (spec.plan.mode != PlanMode::padic) fail_precondition("ModeMismatch", "nullset is not a p-adic construction");
  if (ctx.p() != spec.plan.p || ctx.length() != spec.plan.positions()) {
    fail_precondition("ContextMismatch", "context must be (p, k_D) of the plan");
  }
  detail::require_slalom_matches(spec, slalom);
  detail::require_width(slalom, [](std::uint64_t n) { return (n + 2) / 2; }, "floor((n+2)/2)");

  CoverCertificate cert;
  cert.mode = PlanMode::padic;
  const TranslatorOptions opts{true, caps.enumeration};
  for (std::size_t n = 0; n < spec.depth(); ++n) {
    const auto block = spec.plan.padic_block(n);
    std::vector<Index> closed = slalom.sets[n];
    for (auto s : slalom.sets[n]) closed.push_back(block.index_of(block.add(block.element_at(s), block.unit())));
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    if (closed.size() > n + 2) fail_internal("CarryClosure", "|S~_n| > n+2 for a floor((n+2)/2)-slalom");

    const auto r = find_translator(block, spec.blocks[n], closed, n, opts);
    cert.block_translators.push_back(r.translator);
    const auto x_n = block.neg(block.element_at(r.translator));
    cert.translate.insert(cert.translate.end(), x_n.begin(), x_n.end());
  }
  const auto check = verify_cover(spec, cert.translate, slalom, caps.verification);
  if (!check.ok) detail::verification_failed(check);
  cert.verified = true;
  cert.checked_count = check.checked_count;
  cert.carried = check.carried;
  return cert;
}

inline CoverCertificate cover_padic_slalom(const NullsetSpec& spec, Slalom slalom, const Caps& caps = {}) {
  return cover_padic_slalom(PadicContext(spec.plan.p, spec.plan.positions()), spec, std::move(slalom), caps);
}

}  // namespace nullcover
