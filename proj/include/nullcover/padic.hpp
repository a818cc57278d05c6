#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nullcover/arith.hpp"
#include "nullcover/error.hpp"
#include "nullcover/groups.hpp"

namespace nullcover {

using Digits = std::vector<std::uint64_t>;  // least significant first

/// Truncated p-adic integers: Z_p / p^L Z_p as digit vectors.
class PadicContext {
 public:
  PadicContext(std::uint64_t p, std::uint64_t length) : p_(p), length_(length) {
    if (!is_prime(p)) fail_precondition("NotPrime", std::to_string(p) + " is not prime");
    if (length < 1) fail_precondition("InvalidLength", "truncation length must be >= 1");
  }

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t length() const noexcept { return length_; }

  bool operator==(const PadicContext&) const = default;

 private:
  std::uint64_t p_;
  std::uint64_t length_;
};

struct PadicNumber {
  Digits digits;

  friend bool operator==(const PadicNumber&, const PadicNumber&) = default;
};

namespace detail {

inline void require_digits(std::uint64_t p, std::span<const std::uint64_t> d, std::size_t len, const char* what) {
  if (d.size() != len) {
    fail_precondition("LengthMismatch", std::string(what) + " has " + std::to_string(d.size()) +
                                            " digits, expected " + std::to_string(len));
  }
  for (auto x : d) {
    if (x >= p) fail_precondition("DigitOutOfRange", std::string(what) + " digit " + std::to_string(x) + " >= p");
  }
}

/// Schoolbook digit addition; the carry out of the last position is dropped.
inline Digits add_digits(std::uint64_t p, std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
  Digits out(x.size());
  std::uint64_t carry = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto s = x[k] + y[k] + carry;
    if (s >= p) {
      out[k] = s - p;
      carry = 1;
    } else {
      out[k] = s;
      carry = 0;
    }
  }
  return out;
}

}  // namespace detail

inline PadicNumber padic_zero(const PadicContext& ctx) { return PadicNumber{Digits(ctx.length(), 0)}; }

/// x + y in Z_p / p^L with carries moving toward higher positions.
inline PadicNumber padic_add(const PadicContext& ctx, const PadicNumber& x, const PadicNumber& y) {
  detail::require_digits(ctx.p(), x.digits, ctx.length(), "x");
  detail::require_digits(ctx.p(), y.digits, ctx.length(), "y");
  return PadicNumber{detail::add_digits(ctx.p(), x.digits, y.digits)};
}

/// sum_k digits_k p^k.
inline BigInt padic_value(const PadicContext& ctx, const PadicNumber& x) {
  detail::require_digits(ctx.p(), x.digits, ctx.length(), "x");
  BigInt v = 0;
  for (std::size_t k = x.digits.size(); k-- > 0;) v = v * ctx.p() + x.digits[k];
  return v;
}

/// Inverse of padic_value on [0, p^L); larger values are reduced mod p^L.
inline PadicNumber padic_from_value(const PadicContext& ctx, BigInt v) {
  if (v < 0) fail_precondition("NegativeValue", "value must be nonnegative");
  PadicNumber out{Digits(ctx.length())};
  for (auto& d : out.digits) {
    d = static_cast<std::uint64_t>(v % ctx.p());
    v /= ctx.p();
  }
  return out;
}

/// The digits on positions [begin, end) of Z_p under addition that forgets
/// the final carry. Elements are indexed by their block value (least
/// significant digit at `begin`), so index order equals numeric order.
class BlockGroup {
 public:
  BlockGroup(std::uint64_t p, std::uint64_t begin, std::uint64_t end) : p_(p), begin_(begin), end_(end) {
    if (!is_prime(p)) fail_precondition("NotPrime", std::to_string(p) + " is not prime");
    if (end <= begin) fail_precondition("EmptyBlock", "block interval must be nonempty");
    auto ord = checked_pow(p, end - begin);
    if (!ord || *ord > (std::uint64_t{1} << 62)) fail_cap("OrderOverflow", "block order does not fit in 62 bits");
    order_ = *ord;
  }

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t begin() const noexcept { return begin_; }
  std::uint64_t end() const noexcept { return end_; }
  std::uint64_t len() const noexcept { return end_ - begin_; }
  std::uint64_t order() const noexcept { return order_; }

  Digits zero() const { return Digits(len(), 0); }

  /// 1_n: a single 1 at the lowest position of the block.
  Digits unit() const {
    Digits d = zero();
    d[0] = 1 % p_;
    return d;
  }

  Digits add(const Digits& x, const Digits& y) const {
    detail::require_digits(p_, x, len(), "x");
    detail::require_digits(p_, y, len(), "y");
    return detail::add_digits(p_, x, y);
  }

  /// Additive inverse via p-complement: (p-1-d_k) digitwise, then + 1.
  Digits neg(const Digits& x) const {
    detail::require_digits(p_, x, len(), "x");
    Digits c(len());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = p_ - 1 - x[k];
    return detail::add_digits(p_, c, unit());
  }

  Index index_of(const Digits& x) const {
    detail::require_digits(p_, x, len(), "x");
    Index v = 0;
    for (std::size_t k = x.size(); k-- > 0;) v = v * p_ + x[k];
    return v;
  }

  Digits element_at(Index v) const {
    if (v >= order_) fail_precondition("IndexOutOfRange", "block value " + std::to_string(v) + " >= p^len");
    Digits d(len());
    for (auto& x : d) {
      x = v % p_;
      v /= p_;
    }
    return d;
  }

  Index add_index(Index a, Index b) const { return index_of(add(element_at(a), element_at(b))); }
  Index neg_index(Index a) const { return index_of(neg(element_at(a))); }

  /// The block's digits of a full-length number.
  Digits slice(const PadicNumber& x) const {
    if (x.digits.size() < end_) fail_precondition("LengthMismatch", "number shorter than block end");
    return Digits(x.digits.begin() + static_cast<std::ptrdiff_t>(begin_),
                  x.digits.begin() + static_cast<std::ptrdiff_t>(end_));
  }

  bool operator==(const BlockGroup&) const = default;

 private:
  std::uint64_t p_;
  std::uint64_t begin_;
  std::uint64_t end_;
  std::uint64_t order_ = 1;
};

static_assert(IndexedFiniteGroup<BlockGroup>);

inline Digits block_add(const BlockGroup& b, const Digits& x, const Digits& y) { return b.add(x, y); }
inline Digits block_neg(const BlockGroup& b, const Digits& x) { return b.neg(x); }

}  // namespace nullcover
