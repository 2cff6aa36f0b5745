#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace mortality {

// Largest automaton the library accepts. The powerset searches keep a dense
// 2^n-bit visited map, so 26 states cost 8 MiB.
inline constexpr std::size_t kMaxStates = 26;

// A set of automaton states stored as a bitmask; bit q set iff state q is a
// member. Membership, union and intersection are single word operations.
class StateSet {
 public:
  using mask_type = std::uint32_t;

  constexpr StateSet() noexcept = default;
  constexpr explicit StateSet(mask_type bits) noexcept : bits_(bits) {}

  StateSet(std::initializer_list<std::size_t> states) noexcept {
    for (auto q : states) {
      insert(q);
    }
  }

  // {0, ..., n-1}
  static constexpr StateSet full(std::size_t n) noexcept {
    return StateSet(n >= 32 ? ~mask_type{0}
                            : static_cast<mask_type>((mask_type{1} << n) - 1));
  }

  // {first, ..., last-1}
  static constexpr StateSet range(std::size_t first, std::size_t last) noexcept {
    return first >= last ? StateSet() : full(last) - full(first);
  }

  static constexpr StateSet singleton(std::size_t q) noexcept {
    return StateSet(mask_type{1} << q);
  }

  constexpr bool contains(std::size_t q) const noexcept {
    return q < 32 && ((bits_ >> q) & 1U) != 0;
  }
  constexpr void insert(std::size_t q) noexcept { bits_ |= mask_type{1} << q; }
  constexpr void erase(std::size_t q) noexcept { bits_ &= ~(mask_type{1} << q); }

  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr mask_type bits() const noexcept { return bits_; }

  // Smallest member; undefined on the empty set.
  constexpr std::size_t front() const noexcept {
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }

  constexpr bool subset_of(StateSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(StateSet other) const noexcept {
    return (bits_ & other.bits_) != 0;
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (mask_type rest = bits_; rest != 0; rest &= rest - 1) {
      f(static_cast<std::size_t>(std::countr_zero(rest)));
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t q) { out.push_back(q); });
    return out;
  }

  constexpr StateSet& operator|=(StateSet o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr StateSet& operator&=(StateSet o) noexcept {
    bits_ &= o.bits_;
    return *this;
  }

  friend constexpr StateSet operator|(StateSet a, StateSet b) noexcept {
    return StateSet(a.bits_ | b.bits_);
  }
  friend constexpr StateSet operator&(StateSet a, StateSet b) noexcept {
    return StateSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr StateSet operator-(StateSet a, StateSet b) noexcept {
    return StateSet(a.bits_ & ~b.bits_);
  }

  friend constexpr bool operator==(StateSet, StateSet) noexcept = default;
  friend constexpr auto operator<=>(StateSet, StateSet) noexcept = default;

 private:
  mask_type bits_ = 0;
};

}  // namespace mortality
