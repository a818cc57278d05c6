#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "nullcover/error.hpp"

namespace nullcover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

/// base^exp, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

/// Deterministic trial division; adequate for the primes used as p-adic bases.
constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// ceil(num * x / den) and floor(num * x / den) without overflow for the
/// group sizes we handle (x < 2^63, num/den small).
inline std::uint64_t mul_div_floor(std::uint64_t x, std::uint64_t num, std::uint64_t den) {
  auto wide = static_cast<unsigned __int128>(x) * num;
  return static_cast<std::uint64_t>(wide / den);
}
inline std::uint64_t mul_div_ceil(std::uint64_t x, std::uint64_t num, std::uint64_t den) {
  auto wide = static_cast<unsigned __int128>(x) * num;
  return static_cast<std::uint64_t>((wide + den - 1) / den);
}

/// Minimum |A| for the translate lemma at block n: ceil((1 - 1/(n+3)) * order).
inline std::uint64_t translator_lower_bound(std::uint64_t order, std::uint64_t n) {
  return mul_div_ceil(order, n + 2, n + 3);
}

/// Maximum |A_n| keeping the measure bound: floor((1 - 1/(2(n+3))) * order).
inline std::uint64_t nullset_upper_bound(std::uint64_t order, std::uint64_t n) {
  return mul_div_floor(order, 2 * n + 5, 2 * n + 6);
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace nullcover
