#include "hierfair/item_set.hpp"

#include "hierfair/errors.hpp"

namespace hierfair {

ItemSet::ItemSet(int universe, std::initializer_list<Item> items) : ItemSet(universe) {
  for (Item g : items) insert(g);
}

ItemSet::ItemSet(int universe, const std::vector<Item>& items) : ItemSet(universe) {
  for (Item g : items) insert(g);
}

ItemSet ItemSet::full(int universe) {
  ItemSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (universe % 64 != 0) s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return s;
}

ItemSet ItemSet::from_mask(int universe, std::uint64_t mask) {
  if (universe > 64) throw InvalidInput("from_mask needs universe <= 64");
  ItemSet s(universe);
  if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

void ItemSet::check_item(Item g) const {
  if (g < 0 || g >= universe_)
    throw InvalidInput("item " + std::to_string(g) + " outside universe of size " + std::to_string(universe_));
}

void ItemSet::check_universe(const ItemSet& other) const {
  if (other.universe_ != universe_) throw InvalidInput("item sets over different universes");
}

void ItemSet::insert(Item g) {
  check_item(g);
  words_[g >> 6] |= std::uint64_t{1} << (g & 63);
}

void ItemSet::erase(Item g) {
  check_item(g);
  words_[g >> 6] &= ~(std::uint64_t{1} << (g & 63));
}

Item ItemSet::first() const { return next(-1); }

Item ItemSet::next(Item g) const {
  int start = g + 1;
  if (start >= universe_) return -1;
  std::size_t w = static_cast<std::size_t>(start) >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (start & 63));
  while (true) {
    if (bits) return static_cast<Item>(w * 64 + std::countr_zero(bits));
    if (++w >= words_.size()) return -1;
    bits = words_[w];
  }
}

std::vector<Item> ItemSet::items() const {
  std::vector<Item> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](Item g) { out.push_back(g); });
  return out;
}

std::uint64_t ItemSet::to_mask() const {
  if (universe_ > 64) throw InvalidInput("to_mask needs universe <= 64");
  return words_.empty() ? 0 : words_[0];
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool ItemSet::intersects(const ItemSet& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

ItemSet& ItemSet::operator|=(const ItemSet& other) {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ItemSet& ItemSet::operator&=(const ItemSet& other) {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ItemSet& ItemSet::operator-=(const ItemSet& other) {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::size_t ItemSet::hash() const {
  std::size_t h = std::hash<int>{}(universe_);
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string ItemSet::str() const {
  std::string out = "{";
  bool first_item = true;
  for_each([&](Item g) {
    if (!first_item) out += ',';
    out += std::to_string(g);
    first_item = false;
  });
  return out + "}";
}

}  // namespace hierfair
