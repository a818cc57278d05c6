#include <gtest/gtest.h>

#include <random>

#include "nullcover/cover.hpp"

using namespace nullcover;

namespace {

NullsetSpec product_spec(std::size_t depth) {
  return build_nullset(plan_blocks_product(std::vector<std::uint64_t>(200, 2), depth));
}

// Oracle for all-Z_2 blocks: subtraction is XOR of the index bits.
Index least_xor_translator(const std::vector<Index>& a, const std::vector<Index>& s, std::uint64_t order) {
  for (Index g = 0; g < order; ++g) {
    bool ok = true;
    for (auto v : s) ok = ok && std::binary_search(a.begin(), a.end(), v ^ g);
    if (ok) return g;
  }
  return order;
}

// Oracle for p-adic covers: integer arithmetic on values mod p^{k_D}, then
// read the blocks back off in base p.
bool padic_cover_holds(const NullsetSpec& spec, const std::vector<std::uint64_t>& x_digits, const Slalom& s) {
  const auto& plan = spec.plan;
  BigInt mod = 1;
  for (std::uint64_t i = 0; i < plan.positions(); ++i) mod *= plan.p;
  BigInt x = 0;
  for (std::size_t k = x_digits.size(); k-- > 0;) x = x * plan.p + x_digits[k];
  bool ok = true;
  detail::for_each_point(s, [&](const std::vector<Index>& pt) {
    BigInt v = 0;
    BigInt scale = 1;
    for (std::size_t n = 0; n < pt.size(); ++n) {
      v += scale * pt[n];
      scale *= plan.block_orders[n];
    }
    BigInt y = (v + x) % mod;
    for (std::size_t n = 0; n < pt.size(); ++n) {
      const auto block = static_cast<std::uint64_t>(y % plan.block_orders[n]);
      y /= plan.block_orders[n];
      if (!std::binary_search(spec.blocks[n].begin(), spec.blocks[n].end(), block)) ok = false;
    }
    return ok;
  });
  return ok;
}

}  // namespace

TEST(CoverProduct, IdentityWhenInsideA) {
  const auto spec = product_spec(3);
  const Slalom s{spec.plan.block_orders, {{0, 5}, {1, 2, 13}, {0}}, Width::linear()};
  const auto cert = cover_product_slalom(spec, s);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.block_translators, (std::vector<Index>{0, 0, 0}));
  EXPECT_EQ(cert.translate, std::vector<std::uint64_t>(11, 0));
  EXPECT_EQ(cert.checked_count, 6u);
}

TEST(CoverProduct, DepthTwoExampleMatchesBruteForce) {
  const auto spec = product_spec(2);
  const Slalom s{spec.plan.block_orders, {{6}, {14, 15}}, Width::linear()};
  const auto cert = cover_product_slalom(spec, s);
  ASSERT_TRUE(cert.verified);
  EXPECT_EQ(cert.block_translators[0], least_xor_translator(spec.blocks[0], {6}, 8));
  EXPECT_EQ(cert.block_translators[1], least_xor_translator(spec.blocks[1], {14, 15}, 16));
  EXPECT_EQ(cert.checked_count, 2u);
}

TEST(CoverProduct, RandomSlalomsAgainstXorOracle) {
  const auto spec = product_spec(5);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto s = random_slalom(spec.plan, Width::linear(), seed);
    const auto cert = cover_product_slalom(spec, s);
    ASSERT_TRUE(cert.verified);
    EXPECT_EQ(cert.checked_count, *s.size());
    for (std::size_t n = 0; n < spec.depth(); ++n) {
      EXPECT_EQ(cert.block_translators[n], least_xor_translator(spec.blocks[n], s.sets[n], spec.plan.block_orders[n]));
    }
    EXPECT_TRUE(verify_cover(spec, cert.translate, s).ok);
  }
}

TEST(CoverProduct, MixedOrderBlocks) {
  const auto spec = build_nullset(plan_blocks_product({3, 3, 5, 2, 11, 4, 4}, 4));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = random_slalom(spec.plan, Width::linear(), seed);
    EXPECT_TRUE(cover_product_slalom(spec, s).verified);
  }
}

TEST(CoverProduct, Rejections) {
  const auto spec = product_spec(2);
  const Slalom wide{spec.plan.block_orders, {{0, 1, 2}, {1}}, Width::from_table({3, 3})};
  EXPECT_THROW(cover_product_slalom(spec, wide), Error);
  const Slalom shallow{{8}, {{0}}, Width::linear()};
  EXPECT_THROW(cover_product_slalom(spec, shallow), Error);
  EXPECT_THROW(cover_product_slalom(build_nullset(plan_blocks_padic(2, 2)), Slalom{{8, 16}, {{0}, {0}}, Width::half()}),
               Error);
}

TEST(CoverPadic, SingleBlockExample) {
  const auto spec = build_nullset(plan_blocks_padic(2, 1));
  const Slalom s{{8}, {{3}}, Width::half()};
  const auto cert = cover_padic_slalom(PadicContext(2, 3), spec, s);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.block_translators, (std::vector<Index>{0}));
  EXPECT_EQ(cert.translate, (std::vector<std::uint64_t>{0, 0, 0}));
}

TEST(CoverPadic, IdentityWhenCarryClosureInsideA) {
  const auto spec = build_nullset(plan_blocks_padic(3, 3));
  // A_n = [0, s_n); S_n and S_n + 1 stay below it.
  const Slalom s{spec.plan.block_orders, {{0}, {2}, {1, 5}}, Width::half()};
  const auto cert = cover_padic_slalom(spec, s);
  EXPECT_EQ(cert.translate, std::vector<std::uint64_t>(spec.plan.positions(), 0));
  EXPECT_TRUE(cert.verified);
}

TEST(CoverPadic, RandomAgainstIntegerOracle) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::size_t depth = 1; depth <= 5; ++depth) {
      const auto spec = build_nullset(plan_blocks_padic(p, depth));
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = random_slalom(spec.plan, Width::half(), seed * 7 + depth);
        const auto cert = cover_padic_slalom(spec, s);
        ASSERT_TRUE(cert.verified);
        EXPECT_EQ(cert.checked_count, *s.size());
        EXPECT_TRUE(padic_cover_holds(spec, cert.translate, s)) << "p=" << p << " D=" << depth << " seed=" << seed;
      }
    }
  }
}

TEST(CoverPadic, Rejections) {
  const auto spec = build_nullset(plan_blocks_padic(2, 2));
  const Slalom wide{spec.plan.block_orders, {{0, 1}, {0}}, Width::linear()};
  EXPECT_THROW(cover_padic_slalom(spec, wide), Error);  // |S_0| > floor(2/2)
  const Slalom ok{spec.plan.block_orders, {{0}, {0}}, Width::half()};
  EXPECT_THROW(cover_padic_slalom(PadicContext(2, 5), spec, ok), Error);
  EXPECT_THROW(cover_padic_slalom(PadicContext(3, 7), spec, ok), Error);
}

TEST(VerifyCover, Idempotent) {
  const auto spec = build_nullset(plan_blocks_padic(3, 4));
  const auto s = random_slalom(spec.plan, Width::half(), 99);
  const auto cert = cover_padic_slalom(spec, s);
  const auto again = verify_cover(spec, cert.translate, s);
  EXPECT_TRUE(again.ok);
  EXPECT_EQ(again.checked_count, cert.checked_count);
  EXPECT_EQ(again.carried, cert.carried);
}

TEST(VerifyCover, CorruptedTranslateGivesLeastWitness) {
  const auto spec = build_nullset(plan_blocks_padic(2, 1));
  const Slalom s{{8}, {{3}}, Width::half()};
  // Brute force over every translate value: 3 + x lands in A_0 = [0,6) iff
  // (3 + x) mod 8 < 6.
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto digits = std::vector<std::uint64_t>{x & 1, (x >> 1) & 1, (x >> 2) & 1};
    const auto r = verify_cover(spec, digits, s);
    EXPECT_EQ(r.ok, (3 + x) % 8 < 6) << x;
    if (!r.ok) {
      EXPECT_EQ(*r.counterexample, (std::vector<Index>{3}));
    }
  }
}

TEST(VerifyCover, WitnessIsLexicographicallyLeast) {
  const auto spec = product_spec(2);
  const Slalom s{spec.plan.block_orders, {{1, 6}, {3, 14, 15}}, Width::linear()};
  // g = 0: failures are (1,14), (1,15), (6,*); least is (1,14).
  const auto r = verify_cover(spec, std::vector<std::uint64_t>(7, 0), s);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(*r.counterexample, (std::vector<Index>{1, 14}));
  EXPECT_EQ(r.checked_count, 2u);
}

TEST(VerifyCover, SingletonSlalomWithFoundTranslator) {
  const auto spec = product_spec(4);
  const Slalom s{spec.plan.block_orders, {{7}, {15}, {15}, {14}}, Width::linear()};
  const auto cert = cover_product_slalom(spec, s);
  EXPECT_TRUE(verify_cover(spec, cert.translate, s).ok);
}

TEST(VerifyCover, CapExceeded) {
  const auto spec = product_spec(4);
  const auto s = random_slalom(spec.plan, Width::linear(), 1);  // 120 points
  try {
    verify_cover(spec, std::vector<std::uint64_t>(spec.plan.positions(), 0), s, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cap_exceeded);
  }
}

// Every (element, block) pair of a verified p-adic cover satisfies the carry
// dichotomy; verify_cover throws otherwise. Both cases must actually occur.
TEST(VerifyCover, CarryDichotomyBothBranchesSeen) {
  std::uint64_t carried = 0, checks = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto spec = build_nullset(plan_blocks_padic(2, 5));
    const auto s = random_slalom(spec.plan, Width::half(), seed);
    const auto cert = cover_padic_slalom(spec, s);
    const auto r = verify_cover(spec, cert.translate, s);
    carried += r.carried;
    checks += r.dichotomy_checks;
  }
  EXPECT_GT(carried, 0u);
  EXPECT_LT(carried, checks);
}
