// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "cli_runner.hpp"
#include "descriptor_enum.hpp"
#include "nullcover.hpp"

using namespace nullcover;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    out.ok = false;
    out.detail += " (over budget " + std::to_string(budget_s) + " s)";
  }
  if (!out.ok) ++failures;
  std::printf("%s  %-34s %7.2f s  %s\n", out.ok ? "PASS" : "FAIL", name, secs, out.detail.c_str());
  std::fflush(stdout);
}

// -- coordinate lemma sweep ---------------------------------------------------

// Invariant-factor lists d_1 | d_2 | ... with product <= max_order.
void invariant_factor_lists(std::uint64_t max_order, std::vector<std::uint64_t>& cur,
                            std::vector<std::vector<std::uint64_t>>& out) {
  std::uint64_t prod = 1;
  for (auto d : cur) prod *= d;
  if (!cur.empty()) out.push_back(cur);
  const std::uint64_t step = cur.empty() ? 1 : cur.back();
  for (std::uint64_t d = cur.empty() ? 2 : cur.back(); prod * d <= max_order; d += step) {
    cur.push_back(d);
    invariant_factor_lists(max_order, cur, out);
    cur.pop_back();
  }
}

Outcome coordinate_sweep() {
  std::vector<std::vector<std::uint64_t>> groups;
  std::vector<std::uint64_t> cur;
  invariant_factor_lists(24, cur, groups);

  constexpr std::size_t kPool = 1009;
  constexpr std::size_t kPerA = 100;
  std::uint64_t a_sets = 0, trials = 0, failures_seen = 0;
  std::mt19937_64 rng(20240601);
  for (const auto& orders : groups) {
    const FiniteAbelianGroup g(orders);
    const CayleyTable table(g);
    const std::uint64_t m = g.order();
    std::vector<Index> sub(m * m);  // sub[x*m+y] = x - y, from element arithmetic
    for (Index x = 0; x < m; ++x)
      for (Index y = 0; y < m; ++y) sub[x * m + y] = g.index_of(g.sub(g.element_at(x), g.element_at(y)));

    for (std::uint64_t n = 0; n <= 3; ++n) {
      const std::uint64_t k = translator_lower_bound(m, n);
      std::vector<std::vector<Index>> pool(kPool);
      for (auto& s : pool) {
        const std::uint64_t size = 1 + uniform_below(rng, std::min<std::uint64_t>(n + 2, m));
        std::vector<Index> all(m);
        std::iota(all.begin(), all.end(), Index{0});
        std::shuffle(all.begin(), all.end(), rng);
        s.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
      }
      // Every k-subset of G, as a bitmask (Gosper's hack).
      std::uint64_t mask = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
      const std::uint64_t limit = std::uint64_t{1} << m;
      std::vector<Index> a;
      std::size_t offset = 0;
      while (mask < limit) {
        a.clear();
        for (std::uint64_t w = mask; w; w &= w - 1) a.push_back(static_cast<Index>(std::countr_zero(w)));
        ++a_sets;
        for (std::size_t i = 0; i < kPerA; ++i) {
          const auto& s = pool[(offset + i) % kPool];
          const Index t = find_translator(table, a, s, n).translator;
          bool ok = true;
          for (auto si : s) ok = ok && ((mask >> sub[si * m + t]) & 1);
          failures_seen += !ok;
          ++trials;
        }
        offset = (offset + kPerA) % kPool;
        if (mask == 0) break;
        const std::uint64_t c = mask & -mask;
        const std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
      }
    }
  }
  return {failures_seen == 0, std::to_string(groups.size()) + " groups, " + std::to_string(a_sets) + " A-sets, " +
                                  std::to_string(trials) + " trials, " + std::to_string(failures_seen) + " failures"};
}

// -- covers ---------------------------------------------------------------------

Outcome product_cover() {
  const auto spec = build_nullset(plan_blocks_product(std::vector<std::uint64_t>(200, 2), 6));
  std::uint64_t verified = 0, points = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto s = random_slalom(spec.plan, Width::linear(), seed);
    const auto cert = cover_product_slalom(spec, s);  // throws VerificationFailed on a bad certificate
    const auto again = verify_cover(spec, cert.translate, s);
    if (cert.verified && again.ok && again.checked_count == *s.size()) ++verified;
    points += again.checked_count;
  }
  return {verified == 500, std::to_string(verified) + "/500 verified, " + std::to_string(points) + " points checked"};
}

struct PadicTally {
  std::uint64_t points = 0, dichotomy = 0, dichotomy_ok = 0, carried = 0;
};

// Integer arithmetic mod p^{k_D}: every s + x lands in A, and each block of the
// sum is s_n + x_n or s_n + x_n + 1 (mod the block order).
bool padic_oracle(const NullsetSpec& spec, const std::vector<std::uint64_t>& x_digits, const Slalom& s, PadicTally& t) {
  const auto& plan = spec.plan;
  const std::size_t depth = plan.depth();
  BigInt mod = 1;
  for (std::uint64_t i = 0; i < plan.positions(); ++i) mod *= plan.p;
  BigInt x = 0;
  for (std::size_t k = x_digits.size(); k-- > 0;) x = x * plan.p + x_digits[k];
  std::vector<std::uint64_t> x_blocks(depth);
  BigInt xr = x;
  for (std::size_t n = 0; n < depth; ++n) {
    x_blocks[n] = static_cast<std::uint64_t>(xr % plan.block_orders[n]);
    xr /= plan.block_orders[n];
  }
  bool ok = true;
  detail::for_each_point(s, [&](const std::vector<Index>& pt) {
    ++t.points;
    BigInt v = 0, scale = 1;
    for (std::size_t n = 0; n < depth; ++n) {
      v += scale * pt[n];
      scale *= plan.block_orders[n];
    }
    BigInt y = (v + x) % mod;
    for (std::size_t n = 0; n < depth; ++n) {
      const std::uint64_t q = plan.block_orders[n];
      const auto block = static_cast<std::uint64_t>(y % q);
      y /= q;
      const std::uint64_t plain = (pt[n] + x_blocks[n]) % q;
      ++t.dichotomy;
      if (block == plain) {
        ++t.dichotomy_ok;
      } else if (block == (plain + 1) % q) {
        ++t.dichotomy_ok;
        ++t.carried;
      }
      if (!std::binary_search(spec.blocks[n].begin(), spec.blocks[n].end(), block)) ok = false;
    }
    return true;
  });
  return ok;
}

Outcome padic_cover() {
  std::uint64_t verified = 0, total = 0;
  PadicTally t;
  for (std::uint64_t p : {2, 3, 5}) {
    const auto spec = build_nullset(plan_blocks_padic(p, 5));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto s = random_slalom(spec.plan, Width::half(), seed);
      const auto cert = cover_padic_slalom(spec, s);
      ++total;
      if (cert.verified && padic_oracle(spec, cert.translate, s, t)) ++verified;
    }
  }
  const bool all = t.dichotomy > 0 && t.dichotomy == t.dichotomy_ok;
  return {verified == total && all, std::to_string(verified) + "/" + std::to_string(total) + " verified, dichotomy " +
                                        std::to_string(t.dichotomy_ok) + "/" + std::to_string(t.dichotomy) + " (" +
                                        std::to_string(t.carried) + " with carry)"};
}

// -- measure ------------------------------------------------------------------------

Outcome measure_decay() {
  constexpr std::uint64_t kAnchor = 225;
  // Direct evaluation, independent of measure_bound.
  Rational prod = 1;
  std::uint64_t first = 0;
  for (std::uint64_t n = 0; first == 0; ++n) {
    prod *= Rational(BigInt(2 * n + 5), BigInt(2 * n + 6));
    if (prod < Rational(1, 10)) first = n + 1;
  }
  bool ok = first == kAnchor && first_depth_below(Rational(1, 10)) == kAnchor;
  std::uint64_t checked = 0;
  for (const auto& plan : {plan_blocks_padic(2, kAnchor), plan_blocks_product(std::vector<std::uint64_t>(2500, 3), kAnchor)}) {
    const auto spec = build_nullset(plan);
    for (std::uint64_t n = 1; n <= kAnchor; ++n) {
      ok = ok && measure_upper(spec, n) <= measure_bound(n);
      ++checked;
    }
  }
  return {ok, "first N below 1/10 = " + std::to_string(first) + " (anchor " + std::to_string(kAnchor) + "), " +
                  std::to_string(checked) + " measure checks"};
}

// -- Erdos-Kakutani ---------------------------------------------------------------

Outcome ek_numerics() {
  bool ok = true;
  std::uint64_t bad = 0;
  for (std::uint64_t n = 2; n <= 10000; ++n) {
    if (ek_outer_measure(n) != Rational(BigInt(1), BigInt(n))) ++bad;
  }
  ok = ok && bad == 0;
  using F = boost::multiprecision::cpp_dec_float_50;
  F e = 0, term = 1;
  for (int k = 0; k < 60; ++k) {
    e += term;
    term /= (k + 1);
  }
  const F gap = abs(F(ek_sup(12)) - (F(3) - e));
  ok = ok && gap < F(1e-7);
  ok = ok && ek_membership(0, 20).verdict == Membership::in;
  ok = ok && ek_membership(Rational(1, 2), 20).verdict == Membership::out;
  ok = ok && ek_membership(Rational(1, 6), 20).verdict == Membership::in;
  return {ok, std::to_string(bad) + " outer-measure mismatches, |sup(12) - (3-e)| = " + gap.str(3, std::ios::scientific)};
}

// -- structure ---------------------------------------------------------------------

Outcome duality() {
  const auto all = testing::enumerate_descriptors(6);
  std::uint64_t bad = 0;
  for (const auto& d : all) bad += dual(dual(d)) != d;
  bool ok = bad == 0 && all.size() >= 1000;
  for (const auto& d : {Descriptor::torus(), Descriptor::prod_omega({Descriptor::cyclic(2)}), Descriptor::padic(3)}) {
    const auto t = niceness_pipeline(d);
    ok = ok && t.verdict == NiceVerdict::nice && t.steps.size() == 1;
  }
  return {ok, std::to_string(all.size()) + " descriptors, " + std::to_string(bad) + " involution failures"};
}

Outcome chains() {
  bool ok = true;
  std::uint64_t verified = 0;
  for (std::uint64_t p : {2, 3}) {
    std::uint64_t pk = 1;
    for (std::uint64_t k = 1; k <= 6; ++k) {
      pk *= p;
      const FiniteAbelianGroup g({pk});
      const auto md = max_chain_depth(g, p);
      ok = ok && md.any && !md.unbounded && md.depth == k - 1;
      ok = ok && !divisible_chain(g, p, k);
      for (std::uint64_t d = 0; d < k; ++d) {
        const auto c = divisible_chain(g, p, d);
        if (!c || c->size() != d + 1 || (*c)[0] == g.zero()) {
          ok = false;
          continue;
        }
        for (std::size_t i = 0; i < d; ++i) ok = ok && g.scale(p, (*c)[i + 1]) == (*c)[i];
        ++verified;
      }
    }
  }
  return {ok, std::to_string(verified) + " chains re-verified"};
}

// -- CLI ---------------------------------------------------------------------------

Outcome determinism() {
  using testing::run_cli;
  using testing::shell_quote;
  const std::string plan = run_cli("plan --mode padic --p 2 --depth 3").out;
  const std::string cover = run_cli("cover padic --p 3 --depth 3 --seed 5").out;
  const std::string tiny_plan =
      R"({"mode":"product","orders":[2,2,2,2,2,2,2],"boundaries":[0,3,7]})";
  const std::vector<std::string> commands = {
      "plan --mode product --orders 2,3,5,7,11,13 --depth 2",
      "plan --mode padic --p 5 --depth 4",
      "build-nullset --mode padic --p 3 --depth 3",
      "build-nullset --in " + shell_quote(plan),
      "slalom-gen --mode product --uniform-order 2 --depth 5 --seed 42",
      "slalom-gen --mode padic --p 2 --depth 6 --width half --seed 42",
      "cover product --uniform-order 2 --depth 5 --seed 8",
      "cover padic --p 5 --depth 4 --seed 8",
      "verify --in " + shell_quote(cover),
      "measure --first-below 1/10",
      "measure --in " + shell_quote(run_cli("build-nullset --mode padic --p 2 --depth 4").out),
      "ek member --num 1 --den 6 --depth 20",
      "ek measure --depth 100",
      "ek sup --depth 12",
      "classify --in " + shell_quote(R"({"type":"FiniteSum","parts":[{"type":"Cyclic","m":4},{"type":"Int"}]})"),
      "dual --in " + shell_quote(R"({"type":"Quasicyclic","p":5})"),
      "pipeline --in " + shell_quote(R"({"type":"FiniteSum","parts":[{"type":"Torus"},{"type":"Torus"}]})"),
      "pipeline --rules",
      "decompose --in " + shell_quote(R"({"type":"Cyclic","m":12})"),
      "chain --orders 8 --p 2 --depth 2",
      "chain --orders 27 --p 3 --max",
      "cube-check --in " + shell_quote(std::string(R"({"plan":)") + tiny_plan +
                                       R"(,"family":[{"width":"n+2","sets":[[0,1],[0,1,2]]}]})"),
  };
  std::uint64_t same = 0, ran = 0;
  for (const auto& c : commands) {
    const auto a = run_cli(c, true);
    const auto b = run_cli(c, true);
    ++ran;
    if (a.exit_code == 0 && a.exit_code == b.exit_code && a.out == b.out && !a.out.empty()) {
      ++same;
    } else {
      std::printf("      differs or failed: %s (exit %d)\n", c.c_str(), a.exit_code);
    }
  }
  return {same == ran, std::to_string(same) + "/" + std::to_string(ran) + " commands byte-identical"};
}

}  // namespace

int main() {
  report("coordinate lemma sweep", 60, coordinate_sweep);
  report("product cover", 30, product_cover);
  report("p-adic cover with carry dichotomy", 60, padic_cover);
  report("measure decay", 0, measure_decay);
  report("Erdos-Kakutani numerics", 0, ek_numerics);
  report("duality involution", 0, duality);
  report("divisible chains", 0, chains);
  report("CLI determinism", 0, determinism);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
