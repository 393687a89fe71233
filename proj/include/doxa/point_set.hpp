#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace doxa {

/// Fixed-size set of points (worlds or facets) identified by index.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t size, bool filled = false);

  static PointSet of(std::size_t size, std::initializer_list<std::size_t> members);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i, bool value = true);

  bool none() const;
  bool all() const;
  std::size_t count() const;
  bool is_subset_of(const PointSet& other) const;
  bool intersects(const PointSet& other) const;
  std::optional<std::size_t> first() const;
  std::vector<std::size_t> members() const;

  PointSet& operator&=(const PointSet& other);
  PointSet& operator|=(const PointSet& other);
  /// Complement relative to {0, ..., size-1}.
  PointSet operator~() const;

  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator<(const PointSet& a, const PointSet& b);

  std::size_t hash() const;

 private:
  void clear_tail();

  std::size_t size_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

}  // namespace doxa
