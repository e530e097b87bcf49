#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "fca/errors.hpp"

namespace fca {

/// Fixed-width set of indices [0, width) backed by 64-bit words.
///
/// Index 0 is the most significant position for lectic comparison. The Tag
/// parameter keeps attribute-side and object-side sets from being mixed up.
template <typename Tag>
class IndexSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  IndexSet() = default;
  explicit IndexSet(std::size_t width) : width_(width), words_(word_count(width), 0) {}

  IndexSet(std::size_t width, std::initializer_list<std::size_t> indices) : IndexSet(width) {
    for (auto i : indices) insert(i);
  }

  static IndexSet from_indices(std::size_t width, const std::vector<std::size_t>& indices) {
    IndexSet s(width);
    for (auto i : indices) s.insert(i);
    return s;
  }

  static IndexSet full(std::size_t width) {
    IndexSet s(width);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
  }

  std::size_t width() const noexcept { return width_; }

  bool contains(std::size_t i) const {
    check_index(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void insert(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  void erase(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool is_full() const noexcept { return size() == width_; }

  bool is_subset_of(const IndexSet& other) const {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }

  bool is_proper_subset_of(const IndexSet& other) const { return is_subset_of(other) && *this != other; }

  IndexSet& operator&=(const IndexSet& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  /// Set difference.
  IndexSet& operator-=(const IndexSet& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
  }

  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  IndexSet complement() const {
    IndexSet r(width_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = ~words_[k];
    r.trim();
    return r;
  }

  /// Smallest member index, if any.
  std::optional<std::size_t> first() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return std::nullopt;
  }

  /// Smallest index where the two sets differ.
  std::optional<std::size_t> first_difference(const IndexSet& other) const {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const Word d = words_[k] ^ other.words_[k];
      if (d != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(d));
    }
    return std::nullopt;
  }

  /// True iff some member has index strictly below `bound`.
  bool has_member_below(std::size_t bound) const noexcept {
    const auto f = first();
    return f && *f < bound;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w != 0) {
        out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  /// Renders as a string of 'X' and '.' in index order.
  std::string to_row_string() const {
    std::string s(width_, '.');
    for (auto i : indices()) s[i] = 'X';
    return s;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  /// Arbitrary strict weak order for use as a map key; not the lectic order.
  friend bool operator<(const IndexSet& a, const IndexSet& b) {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    return a.words_ < b.words_;
  }

 private:
  static std::size_t word_count(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

  void trim() {
    const std::size_t tail = width_ % kWordBits;
    if (tail != 0 && !words_.empty()) words_.back() &= (Word{1} << tail) - 1;
  }

  void check_index(std::size_t i) const {
    if (i >= width_)
      throw DimensionError("index " + std::to_string(i) + " out of range for width " + std::to_string(width_));
  }

  void check_width(const IndexSet& other) const {
    if (other.width_ != width_)
      throw DimensionError("width mismatch: " + std::to_string(width_) + " vs " + std::to_string(other.width_));
  }

  std::size_t width_ = 0;
  std::vector<Word> words_;
};

struct AttributeTag {};
struct ObjectTag {};

using AttributeSet = IndexSet<AttributeTag>;
using ObjectSet = IndexSet<ObjectTag>;

}  // namespace fca
