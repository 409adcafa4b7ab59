#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace hierfair {

/// Dense item id in [0, m).
using Item = int;

/// A bundle of items drawn from a universe {0..m-1}, stored as a bitset.
/// Value semantics; binary set operations require equal universes.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(int universe) : universe_(universe), words_(word_count(universe), 0) {}
  ItemSet(int universe, std::initializer_list<Item> items);
  ItemSet(int universe, const std::vector<Item>& items);

  static ItemSet full(int universe);
  /// Low bits of `mask` become items 0..63; requires universe <= 64.
  static ItemSet from_mask(int universe, std::uint64_t mask);

  int universe() const { return universe_; }

  bool contains(Item g) const {
    return g >= 0 && g < universe_ && (words_[g >> 6] >> (g & 63) & 1U);
  }
  void insert(Item g);
  void erase(Item g);

  ItemSet with(Item g) const {
    ItemSet s = *this;
    s.insert(g);
    return s;
  }
  ItemSet without(Item g) const {
    ItemSet s = *this;
    s.erase(g);
    return s;
  }

  int size() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Smallest item, or -1 when empty.
  Item first() const;
  /// Smallest item greater than g, or -1.
  Item next(Item g) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<Item>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Item> items() const;
  std::uint64_t to_mask() const;

  bool is_subset_of(const ItemSet& other) const;
  bool intersects(const ItemSet& other) const;

  ItemSet& operator|=(const ItemSet& other);
  ItemSet& operator&=(const ItemSet& other);
  ItemSet& operator-=(const ItemSet& other);
  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }

  friend bool operator==(const ItemSet& a, const ItemSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  std::size_t hash() const;
  /// "{0,3,4}"
  std::string str() const;

 private:
  static std::size_t word_count(int universe) { return (static_cast<std::size_t>(universe) + 63) / 64; }
  void check_item(Item g) const;
  void check_universe(const ItemSet& other) const;

  int universe_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct ItemSetHash {
  std::size_t operator()(const ItemSet& s) const { return s.hash(); }
};

}  // namespace hierfair
