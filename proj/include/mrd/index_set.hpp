#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace mrd {

/// Dense subset of {0, ..., universe-1}. Used for element sets, vertex sets
/// and edge sets alike; the universe size is fixed at construction.
class IndexSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    const_iterator() = default;
    const_iterator(const IndexSet* s, int pos) : set_(s), pos_(pos) {}

    int operator*() const { return pos_; }
    const_iterator& operator++() {
      pos_ = set_->next(pos_ + 1);
      return *this;
    }
    const_iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }

   private:
    const IndexSet* set_ = nullptr;
    int pos_ = -1;
  };

  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : n_(universe), words_((universe + 63) / 64, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<int> members)
      : IndexSet(universe) {
    for (int i : members) insert(i);
  }
  template <class Range>
  static IndexSet from(std::size_t universe, const Range& members) {
    IndexSet s(universe);
    for (int i : members) s.insert(i);
    return s;
  }
  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<int>(i));
    return s;
  }

  std::size_t universe() const { return n_; }

  bool contains(int i) const {
    return i >= 0 && static_cast<std::size_t>(i) < n_ &&
           ((words_[i >> 6] >> (i & 63)) & 1u);
  }
  void insert(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void erase(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  IndexSet with(int i) const {
    IndexSet s = *this;
    s.insert(i);
    return s;
  }
  IndexSet without(int i) const {
    IndexSet s = *this;
    s.erase(i);
    return s;
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Smallest member >= from, or -1.
  int next(int from) const {
    if (from < 0) from = 0;
    std::size_t wi = static_cast<std::size_t>(from) >> 6;
    if (wi >= words_.size()) return -1;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<int>(wi * 64 + std::countr_zero(w));
      if (++wi >= words_.size()) return -1;
      w = words_[wi];
    }
  }
  int first() const { return next(0); }

  const_iterator begin() const { return {this, next(0)}; }
  const_iterator end() const { return {this, -1}; }

  std::vector<int> elements() const { return {begin(), end()}; }

  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  IndexSet& operator-=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  IndexSet complement() const { return full(n_) - *this; }

  bool is_subset_of(const IndexSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const IndexSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend std::strong_ordering operator<=>(const IndexSet& a,
                                          const IndexSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mrd
