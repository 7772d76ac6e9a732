#include "gpfree/window.hpp"

#include <bit>

namespace gpfree {

namespace {
u64 word_count(u64 n) { return (n + 63) / 64; }
}  // namespace

SequenceWindow SequenceWindow::empty(u64 n) {
  SequenceWindow w;
  w.n_ = n;
  w.words_.assign(word_count(n), 0);
  return w;
}

SequenceWindow SequenceWindow::full(u64 n) {
  SequenceWindow w = empty(n);
  for (auto& word : w.words_) word = ~0ull;
  if (n % 64) w.words_.back() = (1ull << (n % 64)) - 1;
  return w;
}

SequenceWindow SequenceWindow::from_members(u64 n, const std::vector<u64>& members) {
  SequenceWindow w = empty(n);
  u64 prev = 0;
  for (u64 m : members) {
    if (m < 1 || m > n) fail(errc::parse_error, "member outside [1, n]");
    if (m <= prev) fail(errc::not_ascending, "members must strictly ascend");
    w.insert(m);
    prev = m;
  }
  return w;
}

SequenceWindow SequenceWindow::from_excluded_rle(
    u64 n, const std::vector<std::pair<u64, u64>>& runs) {
  SequenceWindow w = full(n);
  u64 prev_end = 0;
  for (const auto& [start, len] : runs) {
    if (len == 0 || start < 1 || start <= prev_end || start + len - 1 > n)
      fail(errc::parse_error, "malformed exclusion run");
    for (u64 m = start; m < start + len; ++m) w.erase(m);
    prev_end = start + len - 1;
  }
  return w;
}

void SequenceWindow::insert(u64 m) {
  if (m < 1 || m > n_) fail(errc::invalid_argument, "insert outside window");
  words_[(m - 1) >> 6] |= 1ull << ((m - 1) & 63);
}

void SequenceWindow::erase(u64 m) {
  if (m < 1 || m > n_) fail(errc::invalid_argument, "erase outside window");
  words_[(m - 1) >> 6] &= ~(1ull << ((m - 1) & 63));
}

u64 SequenceWindow::count() const {
  u64 total = 0;
  for (u64 word : words_) total += std::popcount(word);
  return total;
}

std::optional<u64> SequenceWindow::last() const {
  for (u64 i = words_.size(); i-- > 0;) {
    if (words_[i]) return (i << 6) + 64 - std::countl_zero(words_[i]);
  }
  return std::nullopt;
}

std::optional<u64> SequenceWindow::next_geq(u64 m) const {
  if (m < 1) m = 1;
  if (m > n_) return std::nullopt;
  u64 idx = (m - 1) >> 6;
  u64 word = words_[idx] >> ((m - 1) & 63);
  if (word) return m + std::countr_zero(word);
  for (++idx; idx < words_.size(); ++idx) {
    if (words_[idx]) return (idx << 6) + std::countr_zero(words_[idx]) + 1;
  }
  return std::nullopt;
}

void SequenceWindow::for_each_member(const std::function<void(u64)>& fn) const {
  for (u64 i = 0; i < words_.size(); ++i) {
    u64 word = words_[i];
    while (word) {
      fn((i << 6) + std::countr_zero(word) + 1);
      word &= word - 1;
    }
  }
}

std::vector<u64> SequenceWindow::members() const {
  std::vector<u64> out;
  out.reserve(count());
  for_each_member([&](u64 m) { out.push_back(m); });
  return out;
}

std::vector<std::pair<u64, u64>> SequenceWindow::excluded_rle() const {
  std::vector<std::pair<u64, u64>> runs;
  for (u64 m = 1; m <= n_; ++m) {
    if (contains(m)) continue;
    if (!runs.empty() && runs.back().first + runs.back().second == m) {
      ++runs.back().second;
    } else {
      runs.push_back({m, 1});
    }
  }
  return runs;
}

}  // namespace gpfree
