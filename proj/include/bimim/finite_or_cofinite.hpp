#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace bimim {

// A finite or co-finite subset of the naturals. `elems` lists the members
// when finite and the non-members when cofinite.
class FiniteOrCofinite {
 public:
  enum class Mode { finite, cofinite };

  FiniteOrCofinite() : mode_(Mode::finite) {}

  FiniteOrCofinite(Mode mode, std::vector<int> elems) : mode_(mode), elems_(std::move(elems)) {
    for (int x : elems_)
      if (x < 0) throw std::invalid_argument("FiniteOrCofinite: negative element");
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  static FiniteOrCofinite finite(std::initializer_list<int> xs) {
    return FiniteOrCofinite(Mode::finite, std::vector<int>(xs));
  }
  static FiniteOrCofinite all() { return FiniteOrCofinite(Mode::cofinite, {}); }
  static FiniteOrCofinite all_except(std::initializer_list<int> xs) {
    return FiniteOrCofinite(Mode::cofinite, std::vector<int>(xs));
  }
  // {i : i >= k}
  static FiniteOrCofinite at_least(int k) {
    std::vector<int> below(k);
    for (int i = 0; i < k; ++i) below[i] = i;
    return FiniteOrCofinite(Mode::cofinite, std::move(below));
  }
  // {0, ..., k}
  static FiniteOrCofinite at_most(int k) {
    std::vector<int> upto(k + 1);
    for (int i = 0; i <= k; ++i) upto[i] = i;
    return FiniteOrCofinite(Mode::finite, std::move(upto));
  }

  Mode mode() const { return mode_; }
  bool is_finite() const { return mode_ == Mode::finite; }
  const std::vector<int>& elems() const { return elems_; }

  bool contains(int x) const {
    bool listed = std::binary_search(elems_.begin(), elems_.end(), x);
    return mode_ == Mode::finite ? listed : !listed;
  }

  bool operator==(const FiniteOrCofinite& o) const {
    return mode_ == o.mode_ && elems_ == o.elems_;
  }

 private:
  Mode mode_;
  std::vector<int> elems_;
};

// Counting threshold after which membership in mu is constant: d(N) = 0,
// d(empty) = 0, otherwise 1 + min(max element, max non-element), taking the
// finite one of the two maxima.
inline int d_value(const FiniteOrCofinite& mu) {
  if (mu.elems().empty()) return 0;  // N itself or the empty set
  return 1 + mu.elems().back();
}

}  // namespace bimim
