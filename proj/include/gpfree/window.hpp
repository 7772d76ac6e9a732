#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gpfree/errors.hpp"

namespace gpfree {

using u64 = std::uint64_t;

// Subset of [1, n] as a packed bitset. Bit m-1 holds membership of m.
class SequenceWindow {
 public:
  SequenceWindow() = default;

  static SequenceWindow full(u64 n);
  static SequenceWindow empty(u64 n);
  // Strictly ascending members, all within [1, n].
  static SequenceWindow from_members(u64 n, const std::vector<u64>& members);
  // Excluded set as (start, run length) pairs, ascending and disjoint.
  static SequenceWindow from_excluded_rle(u64 n,
                                          const std::vector<std::pair<u64, u64>>& runs);

  u64 n() const { return n_; }
  bool contains(u64 m) const {
    return m >= 1 && m <= n_ && (words_[(m - 1) >> 6] >> ((m - 1) & 63) & 1);
  }
  void insert(u64 m);
  void erase(u64 m);

  u64 count() const;
  std::optional<u64> first() const { return next_geq(1); }
  std::optional<u64> last() const;
  std::optional<u64> next_geq(u64 m) const;

  void for_each_member(const std::function<void(u64)>& fn) const;
  std::vector<u64> members() const;
  std::vector<std::pair<u64, u64>> excluded_rle() const;

  friend bool operator==(const SequenceWindow&, const SequenceWindow&) = default;

 private:
  u64 n_ = 0;
  std::vector<u64> words_;
};

}  // namespace gpfree
