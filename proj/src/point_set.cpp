#include "doxa/point_set.hpp"

#include <algorithm>
#include <bit>

namespace doxa {

namespace {
std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

PointSet::PointSet(std::size_t size, bool filled)
    : size_(size), words_(word_count(size), filled ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

PointSet PointSet::of(std::size_t size, std::initializer_list<std::size_t> members) {
  PointSet s(size);
  for (auto i : members) s.set(i);
  return s;
}

void PointSet::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

bool PointSet::none() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool PointSet::all() const { return count() == size_; }

std::size_t PointSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool PointSet::intersects(const PointSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

std::optional<std::size_t> PointSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  return std::nullopt;
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

PointSet& PointSet::operator&=(const PointSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

PointSet& PointSet::operator|=(const PointSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

PointSet PointSet::operator~() const {
  PointSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

bool operator<(const PointSet& a, const PointSet& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  return std::lexicographical_compare(a.words_.begin(), a.words_.end(),
                                      b.words_.begin(), b.words_.end());
}

std::size_t PointSet::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ size_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

void PointSet::clear_tail() {
  if (size_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

}  // namespace doxa
