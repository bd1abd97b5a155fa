#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace modal {

/// Subset of the worlds {0, ..., universe-1} of a frame, stored as a
/// fixed-width array of machine words.
class WorldSet {
 public:
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kCapacity = kWords * kWordBits;

  WorldSet() = default;
  explicit WorldSet(std::size_t universe) : universe_(static_cast<std::uint32_t>(universe)) {
    assert(universe <= kCapacity);
  }

  static WorldSet full(std::size_t universe) { return ~WorldSet(universe); }

  /// Throws InputError if an index is >= universe.
  static WorldSet from_indices(std::size_t universe, std::span<const std::size_t> worlds);
  static WorldSet from_indices(std::size_t universe, std::initializer_list<std::size_t> worlds) {
    return from_indices(universe, std::span<const std::size_t>(worlds.begin(), worlds.size()));
  }
  /// Low-word bitmask constructor; bits at or above universe are dropped.
  static WorldSet from_mask(std::size_t universe, std::uint64_t mask) {
    WorldSet s(universe);
    s.words_[0] = mask;
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t w) const {
    return w < universe_ && ((words_[w / kWordBits] >> (w % kWordBits)) & 1u);
  }
  void insert(std::size_t w) {
    assert(w < universe_);
    words_[w / kWordBits] |= std::uint64_t{1} << (w % kWordBits);
  }
  void erase(std::size_t w) {
    assert(w < universe_);
    words_[w / kWordBits] &= ~(std::uint64_t{1} << (w % kWordBits));
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  bool is_full() const { return *this == full(universe_); }

  bool is_subset_of(const WorldSet& o) const {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < kWords; ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  bool intersects(const WorldSet& o) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  /// Smallest member, or universe() if empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < kWords; ++i) {
      if (words_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return universe_;
  }

  std::uint64_t word(std::size_t i) const { return words_[i]; }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t w) { out.push_back(w); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1) {
        f(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
  }

  WorldSet& operator|=(const WorldSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  WorldSet& operator&=(const WorldSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  WorldSet& operator^=(const WorldSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  WorldSet& operator-=(const WorldSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  /// Complement relative to the universe.
  WorldSet operator~() const {
    WorldSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator^(WorldSet a, const WorldSet& b) { return a ^= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }
  friend bool operator==(const WorldSet&, const WorldSet&) = default;

 private:
  void trim() {
    for (std::size_t i = 0; i < kWords; ++i) {
      std::size_t lo = i * kWordBits;
      if (universe_ <= lo) {
        words_[i] = 0;
      } else if (universe_ - lo < kWordBits) {
        words_[i] &= (std::uint64_t{1} << (universe_ - lo)) - 1;
      }
    }
  }

  std::array<std::uint64_t, kWords> words_{};
  std::uint32_t universe_ = 0;
};

}  // namespace modal
