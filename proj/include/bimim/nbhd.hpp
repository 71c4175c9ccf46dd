#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bimim/detail/bitset.hpp"
#include "bimim/digraph.hpp"

namespace bimim {

// d-bi-neighborhood of a subset of the A side: per complement vertex u, the
// counts min(d, |N-(u) cap X|) (out) and min(d, |N+(u) cap X|) (in).
struct NbhDescription {
  std::vector<int> domain;  // complement of A, ascending
  std::vector<uint8_t> out_vec, in_vec;
  int cap = 0;

  bool operator==(const NbhDescription& o) const {
    return cap == o.cap && domain == o.domain && out_vec == o.out_vec && in_vec == o.in_vec;
  }
};

inline NbhDescription describe(const Digraph& g, const std::vector<int>& a, int d,
                               const std::vector<int>& x) {
  if (d < 0) throw std::invalid_argument("describe: negative cap");
  int n = g.vertex_count();
  std::vector<char> in_a(n, 0), in_x(n, 0);
  for (int v : a) {
    if (v < 0 || v >= n) throw std::invalid_argument("describe: vertex out of range");
    in_a[v] = 1;
  }
  for (int v : x) {
    if (v < 0 || v >= n || !in_a[v]) throw std::invalid_argument("describe: x is not a subset of a");
    in_x[v] = 1;
  }
  NbhDescription desc;
  desc.cap = d;
  for (int u = 0; u < n; ++u)
    if (!in_a[u]) desc.domain.push_back(u);
  desc.out_vec.resize(desc.domain.size());
  desc.in_vec.resize(desc.domain.size());
  for (size_t i = 0; i < desc.domain.size(); ++i) {
    int u = desc.domain[i];
    int from_x = 0, to_x = 0;
    for (int w : g.in_neighbors(u)) from_x += in_x[w];
    for (int w : g.out_neighbors(u)) to_x += in_x[w];
    desc.out_vec[i] = static_cast<uint8_t>(std::min(d, from_x));
    desc.in_vec[i] = static_cast<uint8_t>(std::min(d, to_x));
  }
  return desc;
}

// Capped entrywise sum of two descriptions over disjoint sides, restricted
// to the vertices of `target_domain` (which both domains must contain).
inline NbhDescription combine_descriptions(const NbhDescription& da, const NbhDescription& db,
                                           const std::vector<int>& target_domain) {
  if (da.cap != db.cap) throw std::invalid_argument("combine_descriptions: cap mismatch");
  NbhDescription out;
  out.cap = da.cap;
  out.domain = target_domain;
  out.out_vec.resize(target_domain.size());
  out.in_vec.resize(target_domain.size());
  size_t ia = 0, ib = 0;
  for (size_t t = 0; t < target_domain.size(); ++t) {
    int u = target_domain[t];
    while (ia < da.domain.size() && da.domain[ia] < u) ++ia;
    while (ib < db.domain.size() && db.domain[ib] < u) ++ib;
    if (ia >= da.domain.size() || da.domain[ia] != u || ib >= db.domain.size() ||
        db.domain[ib] != u)
      throw std::invalid_argument("combine_descriptions: target vertex missing from a domain");
    out.out_vec[t] = static_cast<uint8_t>(std::min<int>(out.cap, da.out_vec[ia] + db.out_vec[ib]));
    out.in_vec[t] = static_cast<uint8_t>(std::min<int>(out.cap, da.in_vec[ia] + db.in_vec[ib]));
  }
  return out;
}

namespace detail {
struct RawDescHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  size_t operator()(const std::string& s) const { return std::hash<std::string_view>{}(s); }
};
}  // namespace detail

// All d-bi-neighborhood equivalence classes of subsets of A, each with one
// witness subset. Built by breadth-first augmentation: starting from the
// empty set, extend every newly discovered witness by one vertex of A and
// keep the extensions whose description is new.
class ClassIndex {
 public:
  ClassIndex() = default;

  ClassIndex(const Digraph& g, const std::vector<int>& a, int d) : side_(a), cap_(d) {
    if (d < 0) throw std::invalid_argument("enumerate_classes: negative cap");
    std::sort(side_.begin(), side_.end());
    side_.erase(std::unique(side_.begin(), side_.end()), side_.end());
    int n = g.vertex_count();
    std::vector<char> in_a(n, 0);
    for (int v : side_) {
      if (v < 0 || v >= n) throw std::invalid_argument("enumerate_classes: vertex out of range");
      in_a[v] = 1;
    }
    for (int u = 0; u < n; ++u)
      if (!in_a[u]) domain_.push_back(u);
    std::vector<int> domain_pos(n, -1);
    for (size_t i = 0; i < domain_.size(); ++i) domain_pos[domain_[i]] = static_cast<int>(i);

    // Per side vertex: which description entries it bumps when added.
    std::vector<std::vector<int>> bump_out(side_.size()), bump_in(side_.size());
    std::vector<int> side_pos(n, -1);
    for (size_t i = 0; i < side_.size(); ++i) side_pos[side_[i]] = static_cast<int>(i);
    for (int v : side_) {
      for (int u : g.out_neighbors(v))
        if (domain_pos[u] >= 0) bump_out[side_pos[v]].push_back(domain_pos[u]);
      for (int u : g.in_neighbors(v))
        if (domain_pos[u] >= 0) bump_in[side_pos[v]].push_back(domain_pos[u]);
    }

    size_t vec_len = domain_.size();
    std::vector<uint8_t> empty_desc(2 * vec_len, 0);
    insert(empty_desc, {});
    std::vector<uint32_t> frontier{0};
    std::vector<uint8_t> candidate;
    while (!frontier.empty()) {
      std::vector<uint32_t> next_frontier;
      for (uint32_t id : frontier) {
        // Witness and description vectors may reallocate as we insert, so
        // take copies up front.
        std::vector<int> base_witness = witnesses_[id];
        std::vector<uint8_t> base_desc = descs_[id];
        std::vector<char> in_witness(n, 0);
        for (int w : base_witness) in_witness[w] = 1;
        for (size_t i = 0; i < side_.size(); ++i) {
          int v = side_[i];
          if (in_witness[v]) continue;
          candidate = base_desc;
          for (int p : bump_out[i])
            if (candidate[p] < cap_) ++candidate[p];
          for (int p : bump_in[i])
            if (candidate[vec_len + p] < cap_) ++candidate[vec_len + p];
          if (lookup_.find(view_of(candidate)) != lookup_.end()) continue;
          std::vector<int> witness = base_witness;
          witness.insert(std::lower_bound(witness.begin(), witness.end(), v), v);
          next_frontier.push_back(insert(candidate, std::move(witness)));
        }
      }
      frontier = std::move(next_frontier);
    }
  }

  int cap() const { return cap_; }
  const std::vector<int>& side() const { return side_; }
  const std::vector<int>& domain() const { return domain_; }
  size_t size() const { return descs_.size(); }

  const std::vector<int>& witness(uint32_t id) const { return witnesses_[id]; }
  const std::vector<uint8_t>& raw_desc(uint32_t id) const { return descs_[id]; }

  NbhDescription description(uint32_t id) const {
    NbhDescription d;
    d.cap = cap_;
    d.domain = domain_;
    d.out_vec.assign(descs_[id].begin(), descs_[id].begin() + domain_.size());
    d.in_vec.assign(descs_[id].begin() + domain_.size(), descs_[id].end());
    return d;
  }

  static constexpr uint32_t npos = ~uint32_t{0};

  uint32_t find_raw(const std::vector<uint8_t>& desc) const {
    auto it = lookup_.find(view_of(desc));
    return it == lookup_.end() ? npos : it->second;
  }

  uint32_t find(const NbhDescription& d) const {
    if (d.cap != cap_ || d.domain != domain_) return npos;
    std::vector<uint8_t> raw(d.out_vec);
    raw.insert(raw.end(), d.in_vec.begin(), d.in_vec.end());
    return find_raw(raw);
  }

 private:
  static std::string_view view_of(const std::vector<uint8_t>& desc) {
    return std::string_view(reinterpret_cast<const char*>(desc.data()), desc.size());
  }

  uint32_t insert(const std::vector<uint8_t>& desc, std::vector<int> witness) {
    uint32_t id = static_cast<uint32_t>(descs_.size());
    descs_.push_back(desc);
    witnesses_.push_back(std::move(witness));
    lookup_.emplace(std::string(view_of(desc)), id);
    return id;
  }

  std::vector<int> side_, domain_;
  int cap_ = 0;
  std::vector<std::vector<uint8_t>> descs_;  // out entries then in entries
  std::vector<std::vector<int>> witnesses_;
  std::unordered_map<std::string, uint32_t, detail::RawDescHash, std::equal_to<>> lookup_;
};

inline ClassIndex enumerate_classes(const Digraph& g, const std::vector<int>& a, int d) {
  return ClassIndex(g, a, d);
}

// q-fold product view over a base index: tuple class ids are mixed-radix
// numbers over the base class ids, witnesses are tuples of base witnesses
// (which may overlap; the DP imposes disjointness through the witnesses it
// assembles itself).
class QClassIndex {
 public:
  QClassIndex() = default;
  QClassIndex(const ClassIndex* base, int q) : base_(base), q_(q) {
    if (q < 1) throw std::invalid_argument("q_enumerate_classes: q must be >= 1");
    count_ = 1;
    for (int i = 0; i < q; ++i) {
      if (count_ > (uint64_t{1} << 40) / base_->size() + 1)
        throw std::invalid_argument("q_enumerate_classes: tuple space too large");
      count_ *= base_->size();
    }
  }

  const ClassIndex& base() const { return *base_; }
  int q() const { return q_; }
  uint64_t size() const { return count_; }

  std::vector<uint32_t> digits(uint64_t tuple_id) const {
    std::vector<uint32_t> out(q_);
    for (int i = q_ - 1; i >= 0; --i) {
      out[i] = static_cast<uint32_t>(tuple_id % base_->size());
      tuple_id /= base_->size();
    }
    return out;
  }

  uint64_t compose(const std::vector<uint32_t>& digit_ids) const {
    uint64_t id = 0;
    for (int i = 0; i < q_; ++i) id = id * base_->size() + digit_ids[i];
    return id;
  }

  std::vector<std::vector<int>> witness(uint64_t tuple_id) const {
    std::vector<std::vector<int>> out;
    out.reserve(q_);
    for (uint32_t d : digits(tuple_id)) out.push_back(base_->witness(d));
    return out;
  }

 private:
  const ClassIndex* base_ = nullptr;
  int q_ = 1;
  uint64_t count_ = 0;
};

inline QClassIndex q_enumerate_classes(const ClassIndex& base, int q) {
  return QClassIndex(&base, q);
}

}  // namespace bimim
