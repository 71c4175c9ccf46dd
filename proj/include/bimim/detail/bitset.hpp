#pragma once

#include <cstdint>
#include <vector>

namespace bimim::detail {

// Fixed-capacity dynamic bitset over 64-bit words. Capacity is set at
// construction; all operands of binary ops must share it.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int capacity() const { return bits_; }

  void set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void clear() { std::fill(words_.begin(), words_.end(), uint64_t{0}); }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool operator==(const Bitset& o) const { return words_ == o.words_; }

  // Index of the lowest set bit at or above `from`, or -1.
  int next(int from) const {
    if (from >= bits_) return -1;
    int w = from >> 6;
    uint64_t cur = words_[w] & (~uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return (w << 6) + __builtin_ctzll(cur);
      if (++w >= static_cast<int>(words_.size())) return -1;
      cur = words_[w];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t cur = words_[w];
      while (cur) {
        f(static_cast<int>((w << 6) + __builtin_ctzll(cur)));
        cur &= cur - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  const std::vector<uint64_t>& words() const { return words_; }

 private:
  int bits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace bimim::detail
