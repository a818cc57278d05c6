#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nullcover/arith.hpp"
#include "nullcover/error.hpp"

namespace nullcover {

/// Factorial-base digits d_2, ..., d_N with 0 <= d_n <= n-1; digits[i] is d_{i+2}.
struct FactorialDigits {
  std::vector<std::uint64_t> digits;

  std::uint64_t depth() const noexcept { return digits.size() + 1; }
  std::uint64_t at(std::uint64_t n) const { return digits.at(n - 2); }

  friend bool operator==(const FactorialDigits&, const FactorialDigits&) = default;
};

/// sum_{n=2}^{N} d_n / n!
inline Rational factorial_value(const FactorialDigits& f) {
  Rational v = 0;
  BigInt fact = 1;
  for (std::uint64_t i = 0; i < f.digits.size(); ++i) {
    const std::uint64_t n = i + 2;
    fact *= n;
    if (f.digits[i] >= n) fail_precondition("DigitOutOfRange", "d_" + std::to_string(n) + " >= n");
    v += Rational(BigInt(f.digits[i]), fact);
  }
  return v;
}

struct FactorialExpansion {
  FactorialDigits greedy;
  /// Position of the last nonzero digit when the greedy expansion ends
  /// exactly within depth; nullopt when a remainder is left at depth N.
  std::optional<std::uint64_t> terminates_at;
  bool is_zero = false;
  /// Decrement the last nonzero digit and fill every later position with
  /// n-1 (the infinite tail sums to exactly the amount removed). Present
  /// whenever the greedy expansion terminates and q != 0.
  std::optional<FactorialDigits> alternate;
  Rational remainder;  // q - value(greedy), in [0, 1/N!)
};

inline void require_unit_interval(const Rational& q) {
  if (q < 0 || q >= 1) fail_precondition("OutOfRange", "q must lie in [0, 1)");
}

inline FactorialExpansion factorial_expand(const Rational& q, std::uint64_t depth) {
  require_unit_interval(q);
  if (depth < 2) fail_precondition("InvalidDepth", "depth must be >= 2");
  FactorialExpansion out;
  out.is_zero = q == 0;
  Rational r = q;  // scaled remainder, in [0, 1)
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t n = 2; n <= depth; ++n) {
    r *= n;
    const BigInt d = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    const auto digit = static_cast<std::uint64_t>(d);
    out.greedy.digits.push_back(digit);
    r -= digit;
    if (digit != 0) last_nonzero = n;
  }
  BigInt fact = 1;
  for (std::uint64_t n = 2; n <= depth; ++n) fact *= n;
  out.remainder = r / Rational(fact);
  if (r == 0) {
    out.terminates_at = last_nonzero;  // 0 when q == 0
    if (!out.is_zero) {
      FactorialDigits alt = out.greedy;
      alt.digits[last_nonzero - 2] -= 1;
      for (std::uint64_t n = last_nonzero + 1; n <= depth; ++n) alt.digits[n - 2] = n - 1;
      out.alternate = std::move(alt);
    }
  }
  return out;
}

enum class Membership { in, out, undetermined };

inline const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::in: return "in";
    case Membership::out: return "out";
    case Membership::undetermined: return "undetermined";
  }
  return "?";
}

struct MembershipResult {
  Membership verdict = Membership::undetermined;
  std::optional<std::uint64_t> greedy_violation;     // first n <= N with d_n = n-1
  std::optional<std::uint64_t> alternate_violation;
};

namespace detail {
inline std::optional<std::uint64_t> first_violation(const FactorialDigits& f) {
  for (std::uint64_t i = 0; i < f.digits.size(); ++i) {
    if (f.digits[i] > i) return i + 2;  // d_n > n-2
  }
  return std::nullopt;
}
}  // namespace detail

/// Tri-state membership in the Erdos-Kakutani set {sum d_n/n! : d_n <= n-2}
/// using digits up to position N.
///
/// Both expansions agree below the termination point, so "out" needs each
/// of them to break the digit bound at some n <= N; "in" needs an expansion
/// that ends exactly within N with every digit admissible. The alternate
/// expansion has digits n-1 forever after its last change, so it can only
/// contribute to "out" or leave the answer open.
inline MembershipResult ek_membership(const Rational& q, std::uint64_t depth) {
  const auto e = factorial_expand(q, depth);
  MembershipResult out;
  out.greedy_violation = detail::first_violation(e.greedy);
  if (e.alternate) out.alternate_violation = detail::first_violation(*e.alternate);

  if (e.terminates_at && !out.greedy_violation) {
    out.verdict = Membership::in;
  } else if (out.greedy_violation && (!e.terminates_at || e.is_zero || out.alternate_violation)) {
    // Without termination inside N the alternate (if any) shares the
    // violating prefix, since it only differs from the termination point on.
    out.verdict = Membership::out;
  } else {
    out.verdict = Membership::undetermined;
  }
  return out;
}

/// Total length of the level-N cylinder cover: prod_{n=2}^{N} (n-1)/n.
inline Rational ek_outer_measure(std::uint64_t depth) {
  if (depth < 2) fail_precondition("InvalidDepth", "depth must be >= 2");
  // Reduced fraction in machine words while it fits; exact rationals after.
  std::uint64_t num = 1, den = 1, n = 2;
  for (; n <= depth; ++n) {
    std::uint64_t a, b;
    if (__builtin_mul_overflow(num, n - 1, &a) || __builtin_mul_overflow(den, n, &b)) break;
    const std::uint64_t g = std::gcd(a, b);
    num = a / g;
    den = b / g;
  }
  Rational r{BigInt(num), BigInt(den)};
  for (; n <= depth; ++n) r *= Rational(n - 1, n);
  return r;
}

/// Largest truncated value: sum_{n=2}^{N} (n-2)/n!.
inline Rational ek_sup(std::uint64_t depth) {
  if (depth < 2) fail_precondition("InvalidDepth", "depth must be >= 2");
  Rational s = 0;
  BigInt fact = 1;
  for (std::uint64_t n = 2; n <= depth; ++n) {
    fact *= n;
    s += Rational(BigInt(n - 2), fact);
  }
  return s;
}

}  // namespace nullcover
