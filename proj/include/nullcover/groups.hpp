#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nullcover/arith.hpp"
#include "nullcover/error.hpp"

namespace nullcover {

using Index = std::uint64_t;

/// Element of a finite abelian group given by residues r_i in [0, m_i).
struct GroupElement {
  std::vector<std::uint64_t> residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Z_{m_0} (+) ... (+) Z_{m_{k-1}}, each m_i >= 2. The presentation is taken
/// as given; it need not be in invariant-factor form.
///
/// Elements are ordered lexicographically with the last coordinate fastest,
/// so the position of an element in `enumerate_elements` is its mixed-radix
/// value.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<std::uint64_t> orders) : orders_(std::move(orders)) {
    order_ = 1;
    for (auto m : orders_) {
      if (m < 2) fail_precondition("InvalidOrder", "cyclic factor order must be >= 2, got " + std::to_string(m));
      auto next = checked_mul(order_, m);
      if (!next || *next > (std::uint64_t{1} << 62)) {
        fail_cap("OrderOverflow", "group order does not fit in 62 bits");
      }
      order_ = *next;
    }
  }

  const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  std::uint64_t order() const noexcept { return order_; }

  bool contains(const GroupElement& a) const noexcept {
    if (a.residues.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (a.residues[i] >= orders_[i]) return false;
    }
    return true;
  }

  void require(const GroupElement& a) const {
    if (a.residues.size() != orders_.size()) {
      fail_precondition("DimensionMismatch", "element has " + std::to_string(a.residues.size()) +
                                                 " coordinates, group has " + std::to_string(orders_.size()));
    }
    if (!contains(a)) fail_precondition("ResidueOutOfRange", "element residue outside [0, m_i)");
  }

  GroupElement zero() const { return GroupElement{std::vector<std::uint64_t>(orders_.size(), 0)}; }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    require(a);
    require(b);
    GroupElement out{std::vector<std::uint64_t>(orders_.size())};
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      auto s = a.residues[i] + b.residues[i];
      out.residues[i] = s >= orders_[i] ? s - orders_[i] : s;
    }
    return out;
  }

  GroupElement neg(const GroupElement& a) const {
    require(a);
    GroupElement out{std::vector<std::uint64_t>(orders_.size())};
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      out.residues[i] = a.residues[i] == 0 ? 0 : orders_[i] - a.residues[i];
    }
    return out;
  }

  GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

  /// k * a.
  GroupElement scale(std::uint64_t k, const GroupElement& a) const {
    require(a);
    GroupElement out{std::vector<std::uint64_t>(orders_.size())};
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      auto wide = static_cast<unsigned __int128>(a.residues[i]) * k;
      out.residues[i] = static_cast<std::uint64_t>(wide % orders_[i]);
    }
    return out;
  }

  Index index_of(const GroupElement& a) const {
    require(a);
    Index idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + a.residues[i];
    return idx;
  }

  GroupElement element_at(Index idx) const {
    if (idx >= order_) fail_precondition("IndexOutOfRange", "element index " + std::to_string(idx) + " >= |G|");
    GroupElement out{std::vector<std::uint64_t>(orders_.size())};
    for (std::size_t i = orders_.size(); i-- > 0;) {
      out.residues[i] = idx % orders_[i];
      idx /= orders_[i];
    }
    return out;
  }

  // Index-level arithmetic, used by the covering algorithms.
  Index add_index(Index a, Index b) const { return index_of(add(element_at(a), element_at(b))); }
  Index neg_index(Index a) const { return index_of(neg(element_at(a))); }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<std::uint64_t> orders_;
  std::uint64_t order_ = 1;
};

inline GroupElement group_zero(const FiniteAbelianGroup& g) { return g.zero(); }
inline GroupElement group_add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  return g.add(a, b);
}
inline GroupElement group_neg(const FiniteAbelianGroup& g, const GroupElement& a) { return g.neg(a); }

/// All elements in canonical order. Throws CapExceeded above `cap`.
inline std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& g,
                                                    std::uint64_t cap = Caps{}.enumeration) {
  if (g.order() > cap) {
    fail_cap("EnumerationCap", "|G| = " + std::to_string(g.order()) + " exceeds enumeration cap " + std::to_string(cap));
  }
  std::vector<GroupElement> out;
  out.reserve(g.order());
  GroupElement cur = g.zero();
  for (std::uint64_t k = 0; k < g.order(); ++k) {
    out.push_back(cur);
    for (std::size_t i = cur.residues.size(); i-- > 0;) {
      if (++cur.residues[i] < g.orders()[i]) break;
      cur.residues[i] = 0;
    }
  }
  return out;
}

/// A finite group whose elements are addressed by canonical index in [0, order()).
template <class G>
concept IndexedFiniteGroup = requires(const G& g, Index i) {
  { g.order() } -> std::convertible_to<std::uint64_t>;
  { g.add_index(i, i) } -> std::convertible_to<Index>;
  { g.neg_index(i) } -> std::convertible_to<Index>;
};

static_assert(IndexedFiniteGroup<FiniteAbelianGroup>);

}  // namespace nullcover
